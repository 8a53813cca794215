//! Core matrix arithmetic: dense complex matrices with the Frobenius inner
//! product, real rectangular matrices, the six structured matrix classes with
//! projections and membership tests, seeded Gaussian samplers, and the
//! U(n)×O(m) action on matrix tuples.

mod action;
mod class;
mod complex;
mod real;
mod sample;

pub use action::KElement;
pub use class::{MatrixClass, MatrixTuple, TAU_MEM_UNIT};
pub use complex::{Complex64, ComplexMatrix};
pub use real::RealMatrix;
pub use sample::{sample_class, sample_orthogonal, sample_unitary, RandomStream};

/// Absolute tolerance for unitarity / orthogonality residuals ‖P*P − I‖.
pub const TAU_ORTH: f64 = 1e-10;
