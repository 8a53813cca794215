//! The inequality functional Σ_{r,s}‖[B_r,B_s]‖² ≤ c (Σ_r‖B_r‖²)², the
//! registry of known sharp constants per class, extremal tuple constructors,
//! the transformed quadratic gap form, and equality diagnostics.

mod constants;
mod diagnostics;
mod extremal;
mod gap_form;

pub use constants::{
    known_constant, ConstantStatus, KnownConstant, MCondition, NCondition, Rational,
};
pub use diagnostics::{equality_diagnostics, EqualityDiagnostics};
pub use extremal::{extremal_tuple, extremal_tuple_with_theta, pauli_triple, symmetric_pair};
pub use gap_form::{gap_form_value, GapForm, SimplexPoint};

use serde::Serialize;

use crate::matcore::{ComplexMatrix, MatrixTuple};
use crate::{Error, Result};

/// Both sides of the inequality for one tuple. `lhs` is the full ordered
/// double sum (each unordered pair counted twice); `ratio` is lhs/energy²,
/// defined as 0 for the zero tuple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DdvvEvaluation {
    pub lhs: f64,
    pub energy: f64,
    pub ratio: f64,
}

/// Evaluates the commutator sum, the energy and their ratio.
pub fn evaluate(tuple: &MatrixTuple) -> DdvvEvaluation {
    let members = tuple.members();
    let mut lhs = 0.0;
    for (r, br) in members.iter().enumerate() {
        for bs in members.iter().skip(r + 1) {
            lhs += 2.0 * br.commutator(bs).expect("uniform side").norm_sq();
        }
    }
    let energy = tuple.energy();
    let ratio = if energy > 0.0 {
        lhs / (energy * energy)
    } else {
        0.0
    };
    DdvvEvaluation { lhs, energy, ratio }
}

/// Böttcher–Wenzel residual 2‖X‖²‖Y‖² − ‖[X,Y]‖², nonnegative for arbitrary
/// complex matrices (up to rounding).
pub fn bw_residual(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<f64> {
    if x.side() != y.side() {
        return Err(Error::SizeMismatch {
            context: "bw residual",
            expected: x.side(),
            got: y.side(),
        });
    }
    let comm = x.commutator(y)?;
    Ok(2.0 * x.norm_sq() * y.norm_sq() - comm.norm_sq())
}
