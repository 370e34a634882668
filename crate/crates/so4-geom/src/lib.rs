//! Exact computations for SO(4)-structures on 7-dimensional Lie algebras.

pub mod canon;
pub mod claims;
pub mod datasets;
pub mod exterior;
pub mod liealg;
pub mod linalg;
pub mod quaternionic;
pub mod riemann;
pub mod scalar;
pub mod torsion;

pub use exterior::Form;
pub use liealg::LieAlgebra;
pub use linalg::Matrix;
pub use scalar::Scalar;
