//! Numerical toolkit for DDVV-type commutator inequalities
//!
//!   Σ_{r,s} ‖[B_r, B_s]‖² ≤ c (Σ_r ‖B_r‖²)²
//!
//! over tuples of structured n×n matrices (real symmetric, skew-symmetric,
//! Hermitian, skew-Hermitian, and unstructured real/complex). The crate
//! provides
//!
//! - dense complex matrix arithmetic, Frobenius geometry, class projections
//!   and samplers, and the U(n)×O(m) action on tuples ([`matcore`]);
//! - class orthonormal bases with closed-form commutator data and basis
//!   rotations ([`basis`]);
//! - the second exterior power (2×2 minor) map and the Gram-matrix transform
//!   chain that rewrites the inequality over basis coefficients ([`exterior`]);
//! - the inequality functional, the registry of known sharp constants, the
//!   extremal tuple constructors and equality diagnostics ([`ineq`]);
//! - executable verifiers for the supporting spectral bounds ([`lemmas`]);
//! - multi-start projected-gradient search for best constants, both over
//!   matrix tuples and over the probability simplex ([`optim`]).

pub mod basis;
pub mod eig;
mod error;
pub mod exterior;
pub mod ineq;
pub mod lemmas;
pub mod matcore;
pub mod optim;

pub use error::Error;

/// Convenience result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
