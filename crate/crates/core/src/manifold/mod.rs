//! Chart-local pseudo-Riemannian geometry: metric fields, connection,
//! curvature tensors, signature and covariant derivatives.

pub mod chart;
pub mod curvature;
pub mod metric;

pub use chart::Chart;
pub use curvature::{
    christoffel, christoffel_symbols, covariant_derivative_11, curvature, curvature_from_jet,
    is_einstein, signature, EinsteinReport, GeometryReport, Tensor3, Tensor4,
};
pub use metric::{
    metric_jet, metric_jet_scaled, metric_partial, ConstantEndomorphism, ConstantMetric,
    DerivativeMode, EndomorphismField, MetricField, MetricJet,
};
