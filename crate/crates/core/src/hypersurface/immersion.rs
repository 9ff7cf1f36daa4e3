use crate::error::Result;
use crate::manifold::{Chart, MetricField};
use crate::numerics::{Dual, Mat, Scalar};

/// A hypersurface `u ↦ f(u)` from a 3-dimensional source chart into the
/// ambient chart, evaluable over any scalar type.
pub trait Immersion {
    fn source(&self) -> &Chart;

    fn map<S: Scalar>(&self, u: &[S]) -> Result<Vec<S>>;

    fn label(&self) -> String;
}

impl<T: Immersion + ?Sized> Immersion for &T {
    fn source(&self) -> &Chart {
        (**self).source()
    }
    fn map<S: Scalar>(&self, u: &[S]) -> Result<Vec<S>> {
        (**self).map(u)
    }
    fn label(&self) -> String {
        (**self).label()
    }
}

/// `f` together with its first partials `∂_a f` (columns), over `S`.
pub fn map_with_tangents<I: Immersion, S: Scalar>(imm: &I, u: &[S]) -> Result<(Vec<S>, Mat<S>)> {
    let mut f = Vec::new();
    let mut cols = Vec::with_capacity(u.len());
    for a in 0..u.len() {
        let ud: Vec<Dual<S>> = u
            .iter()
            .enumerate()
            .map(|(i, &v)| Dual::new(v, if i == a { S::one() } else { S::zero() }))
            .collect();
        let fd = imm.map(&ud)?;
        if a == 0 {
            f = fd.iter().map(|d| d.re).collect();
        }
        cols.push(fd.iter().map(|d| d.eps).collect());
    }
    Ok((f, Mat::from_cols(&cols)))
}

/// The metric `h = f*g` induced on the source chart.
#[derive(Clone, Copy, Debug)]
pub struct InducedMetric<'a, I, M> {
    pub immersion: &'a I,
    pub ambient: &'a M,
}

impl<'a, I: Immersion, M: MetricField> InducedMetric<'a, I, M> {
    pub fn new(immersion: &'a I, ambient: &'a M) -> Self {
        InducedMetric { immersion, ambient }
    }
}

impl<I: Immersion, M: MetricField> MetricField for InducedMetric<'_, I, M> {
    fn chart(&self) -> &Chart {
        self.immersion.source()
    }

    fn metric<S: Scalar>(&self, u: &[S]) -> Result<Mat<S>> {
        let (f, df) = map_with_tangents(self.immersion, u)?;
        let g = self.ambient.metric(&f)?;
        df.transpose().matmul(&g)?.matmul(&df)
    }
}

/// Precomposition with an affine change of parameters `u ↦ u₀ + L(u − u₀)`.
///
/// Used to test that extrinsic invariants do not depend on the chosen
/// parametrization or orientation of the source.
#[derive(Clone, Debug)]
pub struct Reparametrized<I> {
    inner: I,
    center: Vec<f64>,
    linear: Mat<f64>,
    chart: Chart,
}

impl<I: Immersion> Reparametrized<I> {
    pub fn new(inner: I, center: &[f64], linear: Mat<f64>) -> Self {
        let chart = Chart::euclidean(format!("{}∘affine", inner.source().label()), center.len());
        Reparametrized {
            inner,
            center: center.to_vec(),
            linear,
            chart,
        }
    }

    pub fn determinant(&self) -> f64 {
        self.linear.det().unwrap_or(0.0)
    }
}

impl<I: Immersion> Immersion for Reparametrized<I> {
    fn source(&self) -> &Chart {
        &self.chart
    }

    fn map<S: Scalar>(&self, u: &[S]) -> Result<Vec<S>> {
        let d: Vec<S> = u.iter().zip(&self.center).map(|(&a, &c)| a - c).collect();
        let ld = self.linear.map(S::cst).matvec(&d);
        let v: Vec<S> = ld.iter().zip(&self.center).map(|(&a, &c)| a + c).collect();
        self.inner.map(&v)
    }

    fn label(&self) -> String {
        format!("{} (reparametrized)", self.inner.label())
    }
}
