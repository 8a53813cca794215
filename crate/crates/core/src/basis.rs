//! Class orthonormal bases, their index order, closed-form commutator data
//! for the Hermitian basis, and basis change by an orthogonal matrix.
//!
//! The Hermitian basis element for the ordered pair (i, j) is
//!
//! - E_ii                      if i = j,
//! - (E_ij + E_ji)/√2          if i < j,
//! - i (E_ij − E_ji)/√2        if i > j,
//!
//! indexed by the flat position α = (i−1)·n + j, which enumerates pairs in
//! lexicographic order. The squared commutator norms ‖[Ě_α, Ě_β]‖² take only
//! the values {2, 1, 1/2, 0}, tabulated here as a closed-form decision
//! function and certified exhaustively against direct computation.

use serde::Serialize;

use crate::matcore::{Complex64, ComplexMatrix, MatrixClass, RealMatrix, TAU_ORTH};
use crate::{Error, Result};

/// 1-based matrix index pair; the order `(i,j) < (k,l) ⇔ i<k or (i=k, j<l)`
/// is the derived lexicographic `Ord`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IndexPair {
    pub i: usize,
    pub j: usize,
}

impl IndexPair {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::IndexOutOfRange { i, j, n });
        }
        Ok(Self { i, j })
    }

    /// Flat index α = (i−1)·n + j, ranging over 1..=n².
    pub fn flat(&self, n: usize) -> usize {
        (self.i - 1) * n + self.j
    }

    /// 0-based position of this pair in a flat-ordered basis.
    pub fn slot(&self, n: usize) -> usize {
        self.flat(n) - 1
    }

    pub fn from_flat(alpha: usize, n: usize) -> Result<Self> {
        if alpha == 0 || alpha > n * n {
            return Err(Error::IndexOutOfRange {
                i: alpha,
                j: alpha,
                n,
            });
        }
        let i = (alpha - 1) / n + 1;
        let j = (alpha - 1) % n + 1;
        Ok(Self { i, j })
    }

    pub fn transposed(&self) -> Self {
        Self {
            i: self.j,
            j: self.i,
        }
    }
}

/// Indexed real-orthonormal basis of a matrix class.
#[derive(Debug, Clone)]
pub struct BasisSet {
    class: MatrixClass,
    n: usize,
    elements: Vec<ComplexMatrix>,
}

impl BasisSet {
    pub fn class(&self) -> MatrixClass {
        self.class
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    /// Element at 0-based slot (flat index α lives at slot α−1).
    pub fn element(&self, slot: usize) -> &ComplexMatrix {
        &self.elements[slot]
    }

    /// Max deviation of the Gram matrix from the identity.
    pub fn gram_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (p, a) in self.elements.iter().enumerate() {
            for (q, b) in self.elements.iter().enumerate() {
                let target = if p == q { 1.0 } else { 0.0 };
                let dev = (a.inner(b).expect("uniform side") - target).abs();
                worst = worst.max(dev);
            }
        }
        worst
    }
}

fn unit_entry(n: usize, i: usize, j: usize, v: Complex64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n);
    m.set(i - 1, j - 1, v);
    m
}

fn hermitian_element(n: usize, p: IndexPair) -> ComplexMatrix {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let (i, j) = (p.i, p.j);
    if i == j {
        unit_entry(n, i, i, Complex64::new(1.0, 0.0))
    } else if i < j {
        let mut m = ComplexMatrix::zeros(n);
        m.set(i - 1, j - 1, Complex64::new(inv_sqrt2, 0.0));
        m.set(j - 1, i - 1, Complex64::new(inv_sqrt2, 0.0));
        m
    } else {
        let mut m = ComplexMatrix::zeros(n);
        m.set(i - 1, j - 1, Complex64::new(0.0, inv_sqrt2));
        m.set(j - 1, i - 1, Complex64::new(0.0, -inv_sqrt2));
        m
    }
}

/// The n² Hermitian basis elements Ě_α in flat order.
pub fn hermitian_basis(n: usize) -> BasisSet {
    let elements = (1..=n * n)
        .map(|alpha| {
            let p = IndexPair::from_flat(alpha, n).expect("alpha in range");
            hermitian_element(n, p)
        })
        .collect();
    BasisSet {
        class: MatrixClass::Hermitian,
        n,
        elements,
    }
}

/// Real-orthonormal basis of any of the six classes.
///
/// Symmetric and skew-symmetric take the real generators (pairs i ≤ j resp.
/// i < j in lexicographic order); skew-Hermitian is i·(Hermitian basis);
/// the general classes concatenate the two constituent bases.
pub fn class_basis(class: MatrixClass, n: usize) -> BasisSet {
    let elements: Vec<ComplexMatrix> = match class {
        MatrixClass::Hermitian => return hermitian_basis(n),
        MatrixClass::SkewHermitian => hermitian_basis(n)
            .elements
            .into_iter()
            .map(|e| e.scale(Complex64::new(0.0, 1.0)))
            .collect(),
        MatrixClass::Symmetric => {
            let mut out = Vec::with_capacity(class.dim(n));
            for i in 1..=n {
                for j in i..=n {
                    out.push(hermitian_element(n, IndexPair { i, j }));
                }
            }
            out
        }
        MatrixClass::SkewSymmetric => {
            let mut out = Vec::with_capacity(class.dim(n));
            let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
            for i in 1..=n {
                for j in i + 1..=n {
                    let mut m = ComplexMatrix::zeros(n);
                    m.set(i - 1, j - 1, Complex64::new(inv_sqrt2, 0.0));
                    m.set(j - 1, i - 1, Complex64::new(-inv_sqrt2, 0.0));
                    out.push(m);
                }
            }
            out
        }
        MatrixClass::GeneralComplex => {
            let herm = hermitian_basis(n).elements;
            let skew: Vec<ComplexMatrix> = herm
                .iter()
                .map(|e| e.scale(Complex64::new(0.0, 1.0)))
                .collect();
            herm.into_iter().chain(skew).collect()
        }
        MatrixClass::GeneralReal => {
            let sym = class_basis(MatrixClass::Symmetric, n).elements;
            let skew = class_basis(MatrixClass::SkewSymmetric, n).elements;
            sym.into_iter().chain(skew).collect()
        }
    };
    BasisSet { class, n, elements }
}

/// Closed-form ‖[Ě_a, Ě_b]‖² for the Hermitian basis; the pair is first
/// sorted into lexicographic order, the remaining cases follow by symmetry.
pub fn pair_comm_norm_sq(a: IndexPair, b: IndexPair, n: usize) -> Result<f64> {
    let a = IndexPair::new(a.i, a.j, n)?;
    let b = IndexPair::new(b.i, b.j, n)?;
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let (i, j) = (lo.i, lo.j);
    let (k, l) = (hi.i, hi.j);
    let value = if i == l && l < j && j == k {
        2.0
    } else if (i == j && j == k && k < l)
        || (i < j && j == k && k == l)
        || (i == j && j == l && l < k)
        || (j < i && i == k && k == l)
    {
        1.0
    } else if (i < j && j == k && k < l)
        || (i == k && k < j && j < l)
        || (i < k && k < j && j == l)
        || (j == l && l < i && i < k)
        || (j < l && l < i && i == k)
        || (j < i && i == l && l < k)
        || (i < j && j == l && l < k)
        || (l < i && i < j && j == k)
        || (i < l && l < j && j == k)
        || (i == l && l < j && j < k)
        || (i == l && l < k && k < j)
        || (j < k && k == i && i < l)
    {
        0.5
    } else {
        0.0
    };
    Ok(value)
}

/// Closed-form row sum Σ_γ ⟨[Ě_a, Ě_γ], [Ě_b, Ě_γ]⟩ = 2n δ_ik δ_jl − 2 δ_ij δ_kl.
pub fn comm_gram_row_sum(a: IndexPair, b: IndexPair, n: usize) -> Result<f64> {
    let a = IndexPair::new(a.i, a.j, n)?;
    let b = IndexPair::new(b.i, b.j, n)?;
    let d_ik = (a.i == b.i) as u64 as f64;
    let d_jl = (a.j == b.j) as u64 as f64;
    let d_ij = (a.i == a.j) as u64 as f64;
    let d_kl = (b.i == b.j) as u64 as f64;
    Ok(2.0 * n as f64 * d_ik * d_jl - 2.0 * d_ij * d_kl)
}

/// Orthogonal change of basis Q acting on a basis row vector:
/// the α-th rotated element is Σ_β q_{βα} e_β.
#[derive(Debug, Clone)]
pub struct BasisRotation {
    q: RealMatrix,
}

impl BasisRotation {
    pub fn new(q: RealMatrix) -> Result<Self> {
        if !q.is_square() {
            return Err(Error::SizeMismatch {
                context: "basis rotation",
                expected: q.rows(),
                got: q.cols(),
            });
        }
        let residual = q.orthogonality_residual();
        if residual > TAU_ORTH {
            return Err(Error::NotOrthonormal {
                kind: "orthogonal",
                residual,
                tol: TAU_ORTH,
            });
        }
        Ok(Self { q })
    }

    /// Like [`BasisRotation::new`] but lands in SO(N): a determinant −1
    /// input gets its last column flipped, which changes no commutator norm.
    pub fn special(mut q: RealMatrix) -> Result<Self> {
        let rot = Self::new(q.clone())?;
        if rot.q.det() < 0.0 {
            let last = q.cols() - 1;
            for r in 0..q.rows() {
                let v = q.get(r, last);
                q.set(r, last, -v);
            }
            return Self::new(q);
        }
        Ok(rot)
    }

    pub fn identity(side: usize) -> Self {
        Self {
            q: RealMatrix::identity(side),
        }
    }

    pub fn side(&self) -> usize {
        self.q.rows()
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.q
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.q.get(row, col)
    }
}

/// Applies a rotation to a basis; the result is again orthonormal.
pub fn rotate_basis(basis: &BasisSet, rotation: &BasisRotation) -> Result<BasisSet> {
    let count = basis.len();
    if rotation.side() != count {
        return Err(Error::SizeMismatch {
            context: "rotate basis",
            expected: count,
            got: rotation.side(),
        });
    }
    let n = basis.side();
    let mut elements = Vec::with_capacity(count);
    for alpha in 0..count {
        let mut acc = ComplexMatrix::zeros(n);
        for beta in 0..count {
            let w = rotation.entry(beta, alpha);
            if w != 0.0 {
                acc = acc.add(&basis.element(beta).scale_re(w));
            }
        }
        elements.push(acc);
    }
    Ok(BasisSet {
        class: basis.class,
        n,
        elements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{sample_orthogonal, RandomStream};

    #[test]
    fn flat_index_is_a_bijection() {
        for n in [1usize, 2, 5] {
            for alpha in 1..=n * n {
                let p = IndexPair::from_flat(alpha, n).unwrap();
                assert_eq!(p.flat(n), alpha);
            }
            assert!(IndexPair::from_flat(0, n).is_err());
            assert!(IndexPair::from_flat(n * n + 1, n).is_err());
        }
    }

    #[test]
    fn one_by_one_basis_is_scalar_one() {
        let b = hermitian_basis(1);
        assert_eq!(b.len(), 1);
        assert_eq!(b.element(0).get(0, 0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn third_element_for_n2_is_the_imaginary_generator() {
        // flat index 3 ↔ (2,1): i (E_21 − E_12)/√2
        let b = hermitian_basis(2);
        let e = b.element(2);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((e.get(1, 0) - Complex64::new(0.0, s)).norm() <= 1e-15);
        assert!((e.get(0, 1) - Complex64::new(0.0, -s)).norm() <= 1e-15);
        assert_eq!(e.get(0, 0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn hermitian_basis_is_orthonormal() {
        for n in [1usize, 2, 3, 4] {
            assert!(hermitian_basis(n).gram_residual() <= 1e-14, "n={n}");
        }
    }

    #[test]
    fn class_bases_have_right_dimension_and_gram() {
        for class in MatrixClass::ALL {
            for n in [1usize, 2, 3] {
                let b = class_basis(class, n);
                assert_eq!(b.len(), class.dim(n), "{class:?} n={n}");
                assert!(b.gram_residual() <= 1e-14, "{class:?} n={n}");
                for e in b.elements() {
                    assert!(class.contains(e), "{class:?} n={n} element outside class");
                }
            }
        }
    }

    #[test]
    fn skew_symmetric_n2_is_single_generator() {
        let b = class_basis(MatrixClass::SkewSymmetric, 2);
        assert_eq!(b.len(), 1);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((b.element(0).get(0, 1) - Complex64::new(s, 0.0)).norm() <= 1e-15);
        assert!((b.element(0).get(1, 0) - Complex64::new(-s, 0.0)).norm() <= 1e-15);
    }

    #[test]
    fn completeness_on_hermitian_members() {
        let mut rng = RandomStream::new(17);
        for class in MatrixClass::ALL {
            let n = 3;
            let basis = class_basis(class, n);
            let h = crate::matcore::sample_class(class, n, &mut rng);
            let mut recon = ComplexMatrix::zeros(n);
            for e in basis.elements() {
                recon = recon.add(&e.scale_re(h.inner(e).unwrap()));
            }
            assert!(recon.dist(&h) <= 1e-12, "{class:?} expansion incomplete");
        }
    }

    #[test]
    fn general_complex_n2_has_eight_elements() {
        assert_eq!(class_basis(MatrixClass::GeneralComplex, 2).len(), 8);
    }

    /// Exhaustive certification of the closed-form table against direct
    /// computation (all n⁴ pairs for each n).
    #[test]
    fn comm_norm_table_matches_direct_computation() {
        for n in [2usize, 3, 4] {
            let basis = hermitian_basis(n);
            for alpha in 1..=n * n {
                for beta in 1..=n * n {
                    let a = IndexPair::from_flat(alpha, n).unwrap();
                    let b = IndexPair::from_flat(beta, n).unwrap();
                    let comm = basis
                        .element(a.slot(n))
                        .commutator(basis.element(b.slot(n)))
                        .unwrap();
                    let direct = comm.norm_sq();
                    let table = pair_comm_norm_sq(a, b, n).unwrap();
                    assert!(
                        (direct - table).abs() <= 1e-12,
                        "n={n} a=({},{}) b=({},{}): table {table} direct {direct}",
                        a.i,
                        a.j,
                        b.i,
                        b.j
                    );
                }
            }
        }
    }

    #[test]
    fn comm_norm_spot_values() {
        let n = 3;
        let p = |i, j| IndexPair { i, j };
        assert_eq!(pair_comm_norm_sq(p(1, 2), p(2, 1), n).unwrap(), 2.0);
        assert_eq!(pair_comm_norm_sq(p(1, 1), p(1, 2), n).unwrap(), 1.0);
        assert_eq!(pair_comm_norm_sq(p(1, 2), p(1, 3), n).unwrap(), 0.5);
        assert_eq!(pair_comm_norm_sq(p(1, 1), p(2, 2), n).unwrap(), 0.0);
        // symmetry is exact
        assert_eq!(
            pair_comm_norm_sq(p(2, 1), p(1, 2), n).unwrap(),
            pair_comm_norm_sq(p(1, 2), p(2, 1), n).unwrap()
        );
        assert!(pair_comm_norm_sq(p(1, 4), p(1, 1), n).is_err());
    }

    #[test]
    fn value_two_only_for_transposed_pairs_and_half_needs_three_indices() {
        for n in [2usize, 3, 4] {
            for alpha in 1..=n * n {
                for beta in 1..=n * n {
                    let a = IndexPair::from_flat(alpha, n).unwrap();
                    let b = IndexPair::from_flat(beta, n).unwrap();
                    let v = pair_comm_norm_sq(a, b, n).unwrap();
                    if v == 2.0 {
                        assert!(a.i != a.j && b == a.transposed());
                    }
                    if v == 0.5 {
                        assert!(n >= 3, "value 1/2 requires three distinct indices");
                    }
                }
            }
        }
    }

    /// Exhaustive certification of the row-sum identity.
    #[test]
    fn gram_row_sum_matches_direct_sum() {
        for n in [2usize, 3] {
            let basis = hermitian_basis(n);
            for alpha in 1..=n * n {
                for beta in 1..=n * n {
                    let a = IndexPair::from_flat(alpha, n).unwrap();
                    let b = IndexPair::from_flat(beta, n).unwrap();
                    let mut direct = 0.0;
                    for gamma in 0..n * n {
                        let ca = basis
                            .element(a.slot(n))
                            .commutator(basis.element(gamma))
                            .unwrap();
                        let cb = basis
                            .element(b.slot(n))
                            .commutator(basis.element(gamma))
                            .unwrap();
                        direct += ca.inner(&cb).unwrap();
                    }
                    let closed = comm_gram_row_sum(a, b, n).unwrap();
                    assert!(
                        (direct - closed).abs() <= 1e-10,
                        "n={n} a=({},{}) b=({},{})",
                        a.i,
                        a.j,
                        b.i,
                        b.j
                    );
                }
            }
        }
    }

    #[test]
    fn gram_row_sum_spot_values() {
        let n = 4;
        let p = |i, j| IndexPair { i, j };
        assert_eq!(comm_gram_row_sum(p(1, 2), p(1, 2), n).unwrap(), 8.0);
        assert_eq!(comm_gram_row_sum(p(1, 1), p(2, 2), n).unwrap(), -2.0);
        assert_eq!(comm_gram_row_sum(p(1, 1), p(1, 1), n).unwrap(), 6.0);
    }

    #[test]
    fn identity_rotation_preserves_basis() {
        let basis = hermitian_basis(3);
        let rotated = rotate_basis(&basis, &BasisRotation::identity(9)).unwrap();
        for (a, b) in basis.elements().iter().zip(rotated.elements()) {
            assert!(a.dist(b) <= 1e-15);
        }
    }

    #[test]
    fn rotation_preserves_orthonormality() {
        let mut rng = RandomStream::new(9);
        let basis = hermitian_basis(3);
        let q = BasisRotation::new(sample_orthogonal(9, &mut rng)).unwrap();
        let rotated = rotate_basis(&basis, &q).unwrap();
        assert!(rotated.gram_residual() <= 1e-12);
    }

    /// Entry formula of the rotated basis: q̌ᵅ_ii = q_{γα} with γ ↔ (i,i),
    /// and q̌ᵅ_ij = (q_{γα} − i·q_{τα})/√2 for i < j, γ ↔ (i,j), τ ↔ (j,i);
    /// the matrices are Hermitian so the lower triangle is conjugate.
    #[test]
    fn rotated_entry_formula() {
        let mut rng = RandomStream::new(23);
        let n = 3;
        let big_n = n * n;
        let basis = hermitian_basis(n);
        let q = BasisRotation::new(sample_orthogonal(big_n, &mut rng)).unwrap();
        let rotated = rotate_basis(&basis, &q).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for alpha in 0..big_n {
            let elem = rotated.element(alpha);
            for i in 1..=n {
                let gamma = IndexPair { i, j: i }.slot(n);
                let expect = Complex64::new(q.entry(gamma, alpha), 0.0);
                assert!((elem.get(i - 1, i - 1) - expect).norm() <= 1e-14);
                for j in i + 1..=n {
                    let gamma = IndexPair { i, j }.slot(n);
                    let tau = IndexPair { i: j, j: i }.slot(n);
                    let expect =
                        Complex64::new(q.entry(gamma, alpha) * s, -q.entry(tau, alpha) * s);
                    assert!((elem.get(i - 1, j - 1) - expect).norm() <= 1e-14);
                    assert!((elem.get(j - 1, i - 1) - expect.conj()).norm() <= 1e-14);
                }
            }
        }
    }

    #[test]
    fn special_rotation_has_positive_determinant() {
        let mut rng = RandomStream::new(31);
        for _ in 0..8 {
            let q = sample_orthogonal(5, &mut rng);
            let rot = BasisRotation::special(q).unwrap();
            assert!(rot.matrix().det() > 0.0);
        }
    }

    #[test]
    fn rotation_rejects_bad_input() {
        let mut skewed = RealMatrix::identity(4);
        skewed.set(0, 1, 0.25);
        assert!(BasisRotation::new(skewed).is_err());
        let basis = hermitian_basis(2);
        assert!(rotate_basis(&basis, &BasisRotation::identity(5)).is_err());
    }
}
