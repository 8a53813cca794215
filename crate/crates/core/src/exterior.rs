//! Second exterior power of rectangular matrices and the Gram-matrix chain
//! that moves the commutator sum from a matrix tuple onto basis coefficients.
//!
//! For A ∈ M(m, n), the map φ(A) ∈ M(C(m,2), C(n,2)) collects the 2×2 minors
//! a_ik a_jl − a_il a_jk, with row pairs (i<j) and column pairs (k<l) in
//! lexicographic order. φ preserves products, transposes and the identity,
//! which yields the chain
//!
//!   Σ_{r,s} ‖[B_r,B_s]‖² = 2 tr φ(Bᵗ) C(Ě) φ(B) = 2 tr φ(BBᵗ) C(Ě)
//!                        = Σ_{α,β} x_α x_β ‖[Q̌_α,Q̌_β]‖²,
//!
//! where B holds the tuple's basis coefficients, BBᵗ = Q diag(x) Qᵗ, and Q̌
//! is the Q-rotated basis. [`verify_transform_chain`] evaluates all four
//! expressions independently and reports their spread.

use serde::Serialize;

use crate::basis::{class_basis, rotate_basis, BasisRotation, BasisSet};
use crate::eig::symmetric_eigen;
use crate::matcore::{ComplexMatrix, MatrixTuple, RealMatrix};
use crate::{Error, Result};

/// Ordered pairs (p, q) with p < q over 0..d, in lexicographic order. This
/// single table fixes the row/column order of φ and of all Gram matrices.
pub fn pair_index_table(d: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(d * (d.max(1) - 1) / 2);
    for p in 0..d {
        for q in p + 1..d {
            out.push((p, q));
        }
    }
    out
}

/// Exterior square: the matrix of 2×2 minors of `a`. Inputs with fewer than
/// two rows or columns yield an empty (0×k or k×0) result.
pub fn exterior_square(a: &RealMatrix) -> RealMatrix {
    let row_pairs = pair_index_table(a.rows());
    let col_pairs = pair_index_table(a.cols());
    let mut out = RealMatrix::zeros(row_pairs.len(), col_pairs.len());
    for (r, &(i, j)) in row_pairs.iter().enumerate() {
        for (c, &(k, l)) in col_pairs.iter().enumerate() {
            out.set(r, c, a.get(i, k) * a.get(j, l) - a.get(i, l) * a.get(j, k));
        }
    }
    out
}

/// Coefficient matrix B ∈ M(N, m) of a tuple over a class basis: column r
/// holds ⟨B_r, e_α⟩. Fails when the basis does not reproduce the tuple,
/// which signals a class/basis mismatch.
pub fn tuple_coefficients(tuple: &MatrixTuple, basis: &BasisSet) -> Result<RealMatrix> {
    if basis.class() != tuple.class() {
        return Err(Error::ClassMismatch {
            expected: tuple.class(),
            got: basis.class(),
        });
    }
    if basis.side() != tuple.side() {
        return Err(Error::SizeMismatch {
            context: "tuple coefficients",
            expected: tuple.side(),
            got: basis.side(),
        });
    }
    let count = basis.len();
    let m = tuple.len();
    let mut coeffs = RealMatrix::zeros(count, m);
    for (r, member) in tuple.members().iter().enumerate() {
        let mut recon = ComplexMatrix::zeros(tuple.side());
        for (slot, e) in basis.elements().iter().enumerate() {
            let c = member.inner(e).expect("uniform side");
            coeffs.set(slot, r, c);
            recon = recon.add(&e.scale_re(c));
        }
        let residual = recon.dist(member);
        let tol = 1e-12 * (1.0 + member.norm());
        if residual > tol {
            return Err(Error::NotInClass {
                class: basis.class(),
                residual,
                tol,
            });
        }
    }
    Ok(coeffs)
}

/// Gram matrix of pairwise commutators, sides indexed by the shared pair
/// table. Symmetric and positive semi-definite (it is a Gram of vectors).
#[derive(Debug, Clone, Serialize)]
pub struct GramMatrix {
    mat: RealMatrix,
}

impl GramMatrix {
    fn from_commutators(comms: &[ComplexMatrix]) -> Self {
        let k = comms.len();
        let mut mat = RealMatrix::zeros(k, k);
        for p in 0..k {
            for q in p..k {
                let v = comms[p].inner(&comms[q]).expect("uniform side");
                mat.set(p, q, v);
                mat.set(q, p, v);
            }
        }
        Self { mat }
    }

    pub fn side(&self) -> usize {
        self.mat.rows()
    }

    pub fn entry(&self, p: usize, q: usize) -> f64 {
        self.mat.get(p, q)
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace()
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.mat
    }
}

fn pairwise_commutators(elements: &[ComplexMatrix]) -> Vec<ComplexMatrix> {
    pair_index_table(elements.len())
        .into_iter()
        .map(|(p, q)| elements[p].commutator(&elements[q]).expect("uniform side"))
        .collect()
}

/// C(Ě): Gram matrix of {[e_α, e_β]}_{α<β} for a basis.
pub fn basis_comm_gram(basis: &BasisSet) -> GramMatrix {
    GramMatrix::from_commutators(&pairwise_commutators(basis.elements()))
}

/// C(B) computed directly from the tuple commutators {[B_r, B_s]}_{r<s}.
pub fn tuple_comm_gram(tuple: &MatrixTuple) -> GramMatrix {
    GramMatrix::from_commutators(&pairwise_commutators(tuple.members()))
}

/// C(B) computed through the exterior square: φ(Bᵗ) C(Ě) φ(B). Independent
/// of [`tuple_comm_gram`], which it must match.
pub fn tuple_comm_gram_exterior(tuple: &MatrixTuple, basis: &BasisSet) -> Result<GramMatrix> {
    let coeffs = tuple_coefficients(tuple, basis)?;
    let ce = basis_comm_gram(basis);
    let phi_b = exterior_square(&coeffs);
    let phi_bt = exterior_square(&coeffs.transpose());
    let mat = phi_bt.matmul(ce.matrix())?.matmul(&phi_b)?;
    Ok(GramMatrix { mat })
}

/// The four independently computed values of the transform chain plus the
/// eigendata of BBᵗ used for the last one.
#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    /// Σ_{r,s} ‖[B_r,B_s]‖², straight from the tuple.
    pub direct: f64,
    /// 2 tr φ(Bᵗ) C(Ě) φ(B).
    pub via_coefficients: f64,
    /// 2 tr φ(BBᵗ) C(Ě).
    pub via_gram_product: f64,
    /// Σ_{α,β} x_α x_β ‖[Q̌_α,Q̌_β]‖² over the rotated basis.
    pub via_rotated_basis: f64,
    /// Largest relative spread between the four values.
    pub max_rel_deviation: f64,
    /// Eigenvalues x of BBᵗ, sorted descending.
    pub eigenvalues: Vec<f64>,
}

impl ChainReport {
    pub fn values(&self) -> [f64; 4] {
        [
            self.direct,
            self.via_coefficients,
            self.via_gram_product,
            self.via_rotated_basis,
        ]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

fn rel_spread(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let scale = values.iter().map(|v| v.abs()).fold(1.0, f64::max);
    (max - min) / scale
}

/// Evaluates all four chain expressions for a tuple over its class basis.
pub fn verify_transform_chain(tuple: &MatrixTuple) -> Result<ChainReport> {
    let basis = class_basis(tuple.class(), tuple.side());
    let direct: f64 = {
        let mut s = 0.0;
        let members = tuple.members();
        for (r, br) in members.iter().enumerate() {
            for bs in members.iter().skip(r + 1) {
                s += br.commutator(bs).expect("uniform side").norm_sq();
            }
        }
        2.0 * s
    };
    let coeffs = tuple_coefficients(tuple, &basis)?;
    let ce = basis_comm_gram(&basis);
    let via_coefficients = 2.0 * tuple_comm_gram_exterior(tuple, &basis)?.trace();
    let bbt = coeffs.matmul(&coeffs.transpose())?;
    let phi_bbt = exterior_square(&bbt);
    let via_gram_product = 2.0 * phi_bbt.matmul(ce.matrix())?.trace();
    let (eigenvalues, vectors) = symmetric_eigen(&bbt)?;
    let rotation = BasisRotation::new(vectors)?;
    let rotated = rotate_basis(&basis, &rotation)?;
    let mut via_rotated_basis = 0.0;
    for (p, q) in pair_index_table(rotated.len()) {
        let norm_sq = rotated
            .element(p)
            .commutator(rotated.element(q))
            .expect("uniform side")
            .norm_sq();
        via_rotated_basis += 2.0 * eigenvalues[p] * eigenvalues[q] * norm_sq;
    }
    let values = [
        direct,
        via_coefficients,
        via_gram_product,
        via_rotated_basis,
    ];
    Ok(ChainReport {
        direct,
        via_coefficients,
        via_gram_product,
        via_rotated_basis,
        max_rel_deviation: rel_spread(&values),
        eigenvalues,
    })
}
