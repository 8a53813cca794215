use serde::Serialize;

use super::constants::Rational;
use super::{evaluate, DdvvEvaluation};
use crate::basis::class_basis;
use crate::eig::symmetric_eigen;
use crate::exterior::tuple_coefficients;
use crate::matcore::{ComplexMatrix, MatrixClass, MatrixTuple};
use crate::{Error, Result};

/// Equality-case diagnostics for a Hermitian or skew-Hermitian tuple.
///
/// The spectrum of BBᵗ over the class basis separates equality tuples from
/// generic ones: a canonical extremal configuration has exactly three (two
/// for m = 2) equal eigenvalues, and the basis matrices spanning that
/// eigenspace are traceless, pairwise anticommuting, and supported on one
/// common rank-2 subspace. All of these are invariants of the group orbit,
/// so the flag survives arbitrary rotations and unitary congruences.
#[derive(Debug, Clone, Serialize)]
pub struct EqualityDiagnostics {
    pub evaluation: DdvvEvaluation,
    /// c·energy² − lhs; ≈ 0 exactly at equality.
    pub residual: f64,
    /// Eigenvalues of BBᵗ, descending.
    pub eigenvalues: Vec<f64>,
    /// Count of eigenvalues above τ = 1e−8·energy.
    pub top_count: usize,
    /// Whether the top eigenvalues agree to 1e−8 relative.
    pub top_equal: bool,
    /// Each top-eigenspace matrix has a rank-2 support projector.
    pub support_rank_two: bool,
    /// ‖Q̌_i Q̌_j + Q̌_j Q̌_i‖ below tolerance for all top pairs.
    pub anticommuting: bool,
    /// All support projectors coincide.
    pub common_projector: bool,
    /// Tracelessness of every top-eigenspace matrix.
    pub traceless: bool,
    pub canonical: bool,
}

/// Runs the diagnostics against the candidate constant `c`.
pub fn equality_diagnostics(tuple: &MatrixTuple, c: Rational) -> Result<EqualityDiagnostics> {
    let class = tuple.class();
    if class != MatrixClass::Hermitian && class != MatrixClass::SkewHermitian {
        return Err(Error::Unsupported(format!(
            "equality diagnostics apply to the Hermitian classes, got {class:?}"
        )));
    }
    let evaluation = evaluate(tuple);
    let residual = c.as_f64() * evaluation.energy * evaluation.energy - evaluation.lhs;
    let basis = class_basis(class, tuple.side());
    let coeffs = tuple_coefficients(tuple, &basis)?;
    let bbt = coeffs.matmul(&coeffs.transpose())?;
    let (eigenvalues, vectors) = symmetric_eigen(&bbt)?;

    let tau_eig = 1e-8 * evaluation.energy;
    let top_count = eigenvalues.iter().filter(|&&x| x > tau_eig).count();
    let top_equal = top_count > 0
        && eigenvalues[..top_count]
            .iter()
            .all(|&x| (x - eigenvalues[0]).abs() <= 1e-8 * eigenvalues[0].max(tau_eig));

    // Reconstruct the top-eigenspace basis matrices Q̌_i = Σ_β q_{βi} e_β.
    // Structure thresholds apply to unit-norm objects; keep a floor so very
    // small tuples are not judged against sub-epsilon tolerances.
    let tau_struct = tau_eig.max(1e-12);
    let n = tuple.side();
    let top: Vec<ComplexMatrix> = (0..top_count)
        .map(|col| {
            let mut acc = ComplexMatrix::zeros(n);
            for (slot, e) in basis.elements().iter().enumerate() {
                let w = vectors.get(slot, col);
                if w != 0.0 {
                    acc = acc.add(&e.scale_re(w));
                }
            }
            acc
        })
        .collect();

    let traceless = !top.is_empty() && top.iter().all(|q| q.trace().norm() <= tau_struct);
    let mut anticommuting = !top.is_empty();
    for (i, qi) in top.iter().enumerate() {
        for qj in top.iter().skip(i + 1) {
            let anti = qi.mul_mat(qj).add(&qj.mul_mat(qi));
            if anti.norm() > tau_struct {
                anticommuting = false;
            }
        }
    }
    // Support projectors P_i = 2 Q̌_i Q̌_i^*; Q̌_i has unit Frobenius norm, so
    // a rank-2 equal-weight support makes P_i an orthogonal projector of
    // trace 2, the same for every i.
    let projectors: Vec<ComplexMatrix> = top
        .iter()
        .map(|q| q.mul_mat(&q.conj_transpose()).scale_re(2.0))
        .collect();
    let support_rank_two = !projectors.is_empty()
        && projectors.iter().all(|p| {
            let idem = p.mul_mat(p).dist(p);
            idem <= tau_struct && (p.trace().re - 2.0).abs() <= tau_struct
        });
    let common_projector = !projectors.is_empty()
        && projectors
            .iter()
            .all(|p| p.dist(&projectors[0]) <= tau_struct);

    let expected_top = if tuple.len() >= 3 { 3 } else { 2 };
    let residual_tol = 1e-8 * (1.0 + evaluation.energy * evaluation.energy);
    let canonical = residual.abs() <= residual_tol
        && top_count == expected_top
        && top_equal
        && traceless
        && anticommuting
        && support_rank_two
        && common_projector;

    Ok(EqualityDiagnostics {
        evaluation,
        residual,
        eigenvalues,
        top_count,
        top_equal,
        support_rank_two,
        anticommuting,
        common_projector,
        traceless,
        canonical,
    })
}
