use thiserror::Error;

/// Errors raised by the geometry engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("jet arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NonSymmetric { asymmetry: f64 },

    #[error("{what} did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("singular matrix (pivot {pivot:e})")]
    Singular { pivot: f64 },

    #[error("degenerate metric: zero eigenvalue {eigenvalue:e}")]
    DegenerateMetric { eigenvalue: f64 },

    #[error("point {point:?} lies outside chart '{chart}' (margin {margin:e})")]
    OutsideDomain {
        chart: String,
        point: Vec<f64>,
        margin: f64,
    },

    #[error("immersion Jacobian is rank deficient (smallest singular value {singular:e})")]
    DegenerateImmersion { singular: f64 },

    #[error("point is not null (C+ = {c_plus:e})")]
    NonNullPoint { c_plus: f64 },

    #[error("principal frame is not differentiable at {point:?} (isolated point with λ₁ = λ₂)")]
    FrameSingular { point: Vec<f64> },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("paracomplex axiom violated: {0}")]
    AxiomFailure(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
