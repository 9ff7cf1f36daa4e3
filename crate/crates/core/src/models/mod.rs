//! Concrete ambient spaces and hypersurface families.

pub mod bivector;
pub mod families;
pub mod geodesic_space;
pub mod products;
pub mod surfaces;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::manifold::{Chart, ConstantEndomorphism, EndomorphismField, MetricField};
use crate::numerics::{Mat, Scalar};
pub use bivector::{hodge_star_matrix, wedge, PlueckerChart};
pub use families::{Family, FamilyMap, FamilySpec, FamilyTraits, Prediction};
pub use geodesic_space::{GeodesicMetric, HodgeStructure};
pub use products::{product_structure_matrix, Factor, ProductMetric};
pub use surfaces::{SurfaceInSpaceForm, SurfaceKind};

/// Chart half-width used for Plücker charts.
pub const PLUECKER_RADIUS: f64 = 0.6;

/// Which ambient space a scenario lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    S2xs2,
    H2xh2,
    Flat,
    /// `S² × ℝ²`: carries the product structure but is not Einstein.
    S2xr2,
    GeodesicSpace,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::S2xs2 => "s2xs2",
            ModelKind::H2xh2 => "h2xh2",
            ModelKind::Flat => "flat",
            ModelKind::S2xr2 => "s2xr2",
            ModelKind::GeodesicSpace => "geodesic-space",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            ModelKind::S2xs2,
            ModelKind::H2xh2,
            ModelKind::Flat,
            ModelKind::S2xr2,
            ModelKind::GeodesicSpace,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
    }
}

#[derive(Clone, Debug)]
pub enum AmbientMetric {
    Product(ProductMetric),
    Geodesic(GeodesicMetric),
}

impl MetricField for AmbientMetric {
    fn chart(&self) -> &Chart {
        match self {
            AmbientMetric::Product(m) => m.chart(),
            AmbientMetric::Geodesic(m) => m.chart(),
        }
    }

    fn metric<S: Scalar>(&self, x: &[S]) -> Result<Mat<S>> {
        match self {
            AmbientMetric::Product(m) => m.metric(x),
            AmbientMetric::Geodesic(m) => m.metric(x),
        }
    }
}

#[derive(Clone, Debug)]
pub enum AmbientStructure {
    Constant(ConstantEndomorphism),
    Hodge(HodgeStructure),
}

impl EndomorphismField for AmbientStructure {
    fn chart(&self) -> &Chart {
        match self {
            AmbientStructure::Constant(p) => p.chart(),
            AmbientStructure::Hodge(p) => p.chart(),
        }
    }

    fn eval<S: Scalar>(&self, x: &[S]) -> Result<Mat<S>> {
        match self {
            AmbientStructure::Constant(p) => p.eval(x),
            AmbientStructure::Hodge(p) => p.eval(x),
        }
    }
}

/// An ambient 4-manifold with its product structure and expected scalar curvature.
#[derive(Clone, Debug)]
pub struct ModelSpace {
    pub kind: ModelKind,
    pub metric: AmbientMetric,
    pub pstruct: AmbientStructure,
    /// Expected constant scalar curvature (`None` when not Einstein).
    pub rbar: Option<f64>,
}

/// Scalar curvature of `G₀` on `L⁺(S³)`, as measured by this engine
/// (the factors are round spheres of radius `1/√2`).
pub const GEODESIC_SPACE_RBAR: f64 = 8.0;

fn product(kind: ModelKind, a: Factor, b: Factor, rbar: Option<f64>) -> ModelSpace {
    let metric = ProductMetric::new(a, b);
    let pstruct = ConstantEndomorphism::new(metric.chart().clone(), product_structure_matrix());
    ModelSpace {
        kind,
        metric: AmbientMetric::Product(metric),
        pstruct: AmbientStructure::Constant(pstruct),
        rbar,
    }
}

pub fn build_s2xs2() -> ModelSpace {
    product(ModelKind::S2xs2, Factor::Sphere, Factor::Sphere, Some(4.0))
}

pub fn build_h2xh2() -> ModelSpace {
    product(
        ModelKind::H2xh2,
        Factor::Hyperbolic,
        Factor::Hyperbolic,
        Some(-4.0),
    )
}

pub fn build_flat_product() -> ModelSpace {
    product(ModelKind::Flat, Factor::Plane, Factor::Plane, Some(0.0))
}

pub fn build_s2xr2() -> ModelSpace {
    product(ModelKind::S2xr2, Factor::Sphere, Factor::Plane, None)
}

/// `L⁺(S³)` with `G₀`, in a Plücker chart centred at `e0∧e1`.
pub fn build_geodesic_space() -> Result<ModelSpace> {
    let base = wedge(&[1.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0]);
    geodesic_space_at(&base)
}

/// `L⁺(S³)` in a Plücker chart centred at the given oriented geodesic.
pub fn geodesic_space_at(base: &[f64]) -> Result<ModelSpace> {
    let pc = PlueckerChart::new(base, 0, PLUECKER_RADIUS)?;
    Ok(ModelSpace {
        kind: ModelKind::GeodesicSpace,
        metric: AmbientMetric::Geodesic(GeodesicMetric::new(pc.clone())),
        pstruct: AmbientStructure::Hodge(HodgeStructure::new(pc)),
        rbar: Some(GEODESIC_SPACE_RBAR),
    })
}

pub fn build_model(kind: ModelKind) -> Result<ModelSpace> {
    Ok(match kind {
        ModelKind::S2xs2 => build_s2xs2(),
        ModelKind::H2xh2 => build_h2xh2(),
        ModelKind::Flat => build_flat_product(),
        ModelKind::S2xr2 => build_s2xr2(),
        ModelKind::GeodesicSpace => build_geodesic_space()?,
    })
}

impl ModelSpace {
    pub fn label(&self) -> &'static str {
        self.kind.as_str()
    }

    /// Per-axis sampling interval, comfortably inside the chart.
    pub fn sample_box(&self) -> Vec<(f64, f64)> {
        match &self.metric {
            AmbientMetric::Product(m) => {
                let (a, b) = m.factors();
                let f = |k: Factor| match k {
                    Factor::Sphere => [(0.4, 2.7), (-2.5, 2.5)],
                    Factor::Hyperbolic => [(0.3, 1.5), (-2.5, 2.5)],
                    Factor::Plane => [(-1.0, 1.0), (-1.0, 1.0)],
                };
                let [p, q] = f(a);
                let [r, s] = f(b);
                vec![p, q, r, s]
            }
            AmbientMetric::Geodesic(_) => vec![(-0.3, 0.3); 4],
        }
    }

    /// Tensor grid with `n` points per axis over [`sample_box`](Self::sample_box).
    pub fn sample_grid(&self, n: usize) -> Vec<Vec<f64>> {
        grid(&self.sample_box(), &[n; 4])
    }
}

/// Tensor grid over a box with `counts[i]` equally spaced points on axis `i`
/// (endpoints included), in lexicographic order.
pub fn grid(bounds: &[(f64, f64)], counts: &[usize]) -> Vec<Vec<f64>> {
    let mut out = vec![vec![]];
    for (&(lo, hi), &n) in bounds.iter().zip(counts) {
        let axis: Vec<f64> = (0..n)
            .map(|k| {
                if n == 1 {
                    0.5 * (lo + hi)
                } else {
                    lo + (hi - lo) * k as f64 / (n - 1) as f64
                }
            })
            .collect();
        out = out
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}
