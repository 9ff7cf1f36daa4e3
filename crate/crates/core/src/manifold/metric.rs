use serde::{Deserialize, Serialize};

use super::chart::Chart;
use crate::error::{Error, Result};
use crate::numerics::fd::{fd_hessian_vec, fd_jacobian, H1, H2};
use crate::numerics::{Dual, Jet2, Mat, Scalar};

/// How partial derivatives of fields are obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DerivativeMode {
    /// Exact second-order jets.
    #[default]
    Jet,
    /// Richardson-extrapolated central differences.
    Fd,
}

impl DerivativeMode {
    pub fn as_str(self) -> &'static str {
        match self {
            DerivativeMode::Jet => "jet",
            DerivativeMode::Fd => "fd",
        }
    }
}

/// Chart-local metric `x ↦ g_ij(x)`, evaluable over any scalar type.
pub trait MetricField {
    fn chart(&self) -> &Chart;

    fn metric<S: Scalar>(&self, x: &[S]) -> Result<Mat<S>>;

    fn dim(&self) -> usize {
        self.chart().dim()
    }
}

/// Chart-local `(1,1)`-tensor field `x ↦ T^i_j(x)`.
pub trait EndomorphismField {
    fn chart(&self) -> &Chart;

    fn eval<S: Scalar>(&self, x: &[S]) -> Result<Mat<S>>;
}

/// Metric components with first and second partials at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricJet {
    pub point: Vec<f64>,
    pub g: Mat<f64>,
    /// `dg[k] = ∂_k g`.
    pub dg: Vec<Mat<f64>>,
    /// `ddg[k][l] = ∂_k ∂_l g`.
    pub ddg: Vec<Vec<Mat<f64>>>,
    /// Largest finite-difference error estimate (zero in jet mode).
    pub fd_error: f64,
}

impl MetricJet {
    pub fn dim(&self) -> usize {
        self.g.rows()
    }
}

pub(crate) fn flatten(m: &Mat<f64>) -> Vec<f64> {
    let n = m.rows();
    let mut v = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..m.cols() {
            v.push(m[(i, j)]);
        }
    }
    v
}

/// Metric 2-jet at `x`, exact or by finite differences.
pub fn metric_jet<M: MetricField>(field: &M, x: &[f64], mode: DerivativeMode) -> Result<MetricJet> {
    metric_jet_scaled(field, x, mode, 1.0)
}

/// As [`metric_jet`], with finite-difference steps multiplied by `scale`.
pub fn metric_jet_scaled<M: MetricField>(
    field: &M,
    x: &[f64],
    mode: DerivativeMode,
    scale: f64,
) -> Result<MetricJet> {
    let n = field.dim();
    field.chart().check(x, 0.0)?;
    match mode {
        DerivativeMode::Jet => {
            let vars = Jet2::variables(x);
            let gj = field.metric(&vars)?;
            check_square(&gj, n)?;
            let g = gj.map(|e| e.value());
            let dg = (0..n).map(|k| gj.map(|e| e.d(k))).collect();
            let ddg = (0..n)
                .map(|k| (0..n).map(|l| gj.map(|e| e.dd(k, l))).collect())
                .collect();
            Ok(MetricJet {
                point: x.to_vec(),
                g,
                dg,
                ddg,
                fd_error: 0.0,
            })
        }
        DerivativeMode::Fd => {
            let g = field.metric(x)?;
            check_square(&g, n)?;
            let f = |y: &[f64]| field.metric(y).map(|m| flatten(&m));
            let jac = fd_jacobian(f, x, H1 * scale, Some(field.chart()))?;
            let hes = fd_hessian_vec(f, x, H2 * scale, Some(field.chart()))?;
            let dg = (0..n)
                .map(|k| Mat::from_fn(n, n, |i, j| jac.value[i * n + j][k]))
                .collect();
            let ddg = (0..n)
                .map(|k| {
                    (0..n)
                        .map(|l| Mat::from_fn(n, n, |i, j| hes.value[i * n + j][k][l]))
                        .collect()
                })
                .collect();
            Ok(MetricJet {
                point: x.to_vec(),
                g,
                dg,
                ddg,
                fd_error: jac.error.max(hes.error),
            })
        }
    }
}

/// `∂_k g` evaluated over `S`, via one dual layer in direction `k`.
pub fn metric_partial<M: MetricField, S: Scalar>(field: &M, x: &[S], k: usize) -> Result<Mat<S>> {
    let xd: Vec<Dual<S>> = x
        .iter()
        .enumerate()
        .map(|(i, &v)| Dual::new(v, if i == k { S::one() } else { S::zero() }))
        .collect();
    Ok(field.metric(&xd)?.map(|d| d.eps))
}

fn check_square<S>(g: &Mat<S>, n: usize) -> Result<()>
where
    S: Scalar,
{
    if g.rows() != n || g.cols() != n {
        return Err(Error::Dimension(format!(
            "metric on a {n}-dimensional chart returned a {}x{} matrix",
            g.rows(),
            g.cols()
        )));
    }
    Ok(())
}

/// A constant metric on a chart; handy for flat spaces and tests.
#[derive(Clone, Debug)]
pub struct ConstantMetric {
    chart: Chart,
    g: Mat<f64>,
}

impl ConstantMetric {
    pub fn new(chart: Chart, g: Mat<f64>) -> Self {
        ConstantMetric { chart, g }
    }
}

impl MetricField for ConstantMetric {
    fn chart(&self) -> &Chart {
        &self.chart
    }
    fn metric<S: Scalar>(&self, _x: &[S]) -> Result<Mat<S>> {
        Ok(self.g.map(S::cst))
    }
}

/// A constant `(1,1)`-tensor field.
#[derive(Clone, Debug)]
pub struct ConstantEndomorphism {
    chart: Chart,
    m: Mat<f64>,
}

impl ConstantEndomorphism {
    pub fn new(chart: Chart, m: Mat<f64>) -> Self {
        ConstantEndomorphism { chart, m }
    }
}

impl EndomorphismField for ConstantEndomorphism {
    fn chart(&self) -> &Chart {
        &self.chart
    }
    fn eval<S: Scalar>(&self, _x: &[S]) -> Result<Mat<S>> {
        Ok(self.m.map(S::cst))
    }
}
