//! Extrinsic geometry of hypersurfaces in a paracomplex 4-manifold.

pub mod checks;
pub mod frame;
pub mod immersion;
pub mod local;
pub mod shape;

pub use frame::{null_frame_data, NullFrameData, H_FRAME};
pub use immersion::{map_with_tangents, Immersion, InducedMetric, Reparametrized};
pub use local::{evaluate_point, local_at, Evaluator, FieldJets, Local, PointData, H_ALONG};
pub use shape::{shape_data, NullFrame, ShapeData, EQUAL_CURVATURE_TOL, NULL_TOL};
