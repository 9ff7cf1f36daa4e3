#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod hypersurface;
pub mod manifold;
pub mod models;
pub mod numerics;
pub mod parastructure;
pub mod verifier;

pub use error::{Error, Result};
