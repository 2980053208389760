//! Exact kernel for irreducible SO(3)-structures on ℝ⁵.
//!
//! Everything is finite-dimensional: tensors at a point, evaluated over the
//! exact field ℚ(√2,√3) ([`QuadSurd`]) or over `f64`.

pub mod analysis;
mod cache;
pub mod error;
pub mod examples;
pub mod field;
pub mod identities;
pub mod matrix;
pub mod multilinear;
pub mod representation;
pub mod sampling;
pub mod scalar;
pub mod structure;
pub mod twistor;

pub use error::{Error, Result};
pub use field::{Field, Mode, QuadSurd};
pub use matrix::Matrix;
pub use multilinear::{KVector, Tensor2};
pub use scalar::Scalar;
