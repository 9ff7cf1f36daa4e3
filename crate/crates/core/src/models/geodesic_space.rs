use super::bivector::{hodge_star_matrix, PlueckerChart};
use crate::error::Result;
use crate::manifold::{Chart, EndomorphismField, MetricField};
use crate::numerics::{Mat, Scalar};

/// `G_p`: pullback of the bivector inner product to a Plücker chart.
#[derive(Clone, Debug)]
pub struct GeodesicMetric {
    pc: PlueckerChart,
}

impl GeodesicMetric {
    pub fn new(pc: PlueckerChart) -> Self {
        GeodesicMetric { pc }
    }

    pub fn pluecker(&self) -> &PlueckerChart {
        &self.pc
    }
}

impl MetricField for GeodesicMetric {
    fn chart(&self) -> &Chart {
        self.pc.chart()
    }

    fn metric<S: Scalar>(&self, x: &[S]) -> Result<Mat<S>> {
        let j = self.pc.jacobian(x)?;
        let eta = self.pc.bivector_metric().map(S::cst);
        j.transpose().matmul(&eta)?.matmul(&j)
    }
}

/// Hodge star restricted to the tangent spaces of the chart image,
/// expressed in chart coordinates: `(JᵀηJ)⁻¹ Jᵀ η * J`.
#[derive(Clone, Debug)]
pub struct HodgeStructure {
    pc: PlueckerChart,
    star: Mat<f64>,
}

impl HodgeStructure {
    pub fn new(pc: PlueckerChart) -> Self {
        let star = hodge_star_matrix(pc.signature_index());
        HodgeStructure { pc, star }
    }
}

impl EndomorphismField for HodgeStructure {
    fn chart(&self) -> &Chart {
        self.pc.chart()
    }

    fn eval<S: Scalar>(&self, x: &[S]) -> Result<Mat<S>> {
        let j = self.pc.jacobian(x)?;
        let eta = self.pc.bivector_metric().map(S::cst);
        let jt_eta = j.transpose().matmul(&eta)?;
        let g = jt_eta.matmul(&j)?;
        let rhs = jt_eta.matmul(&self.star.map(S::cst))?.matmul(&j)?;
        g.inverse()?.matmul(&rhs)
    }
}
