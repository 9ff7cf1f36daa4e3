//! Small-dimension numerics: jets, duals, dense linear algebra, the Jacobi
//! eigensolver and a finite-difference oracle.

pub mod dual;
pub mod eigen;
pub mod fd;
pub mod jet;
pub mod linalg;
pub mod scalar;

pub use dual::Dual;
pub use eigen::{eig_sym, SymEigen};
pub use fd::{fd_derivative, fd_hessian_vec, fd_jacobian, FdDerivative, FdEstimate};
pub use jet::{jet_lift, Jet2, MAX_ARITY};
pub use linalg::{dot, Mat};
pub use scalar::{atan2, Scalar};
