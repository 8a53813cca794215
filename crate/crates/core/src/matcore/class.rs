use serde::{Deserialize, Serialize};

use super::complex::{Complex64, ComplexMatrix};
use crate::{Error, Result};

/// Per-unit-side absolute membership tolerance: a matrix A belongs to a class
/// when ‖A − project(A)‖ ≤ TAU_MEM_UNIT · n.
pub const TAU_MEM_UNIT: f64 = 1e-12;

/// The six structured matrix classes. Each tag is a real-linear subspace of
/// the n×n complex matrices, closed under the class projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixClass {
    Symmetric,
    SkewSymmetric,
    Hermitian,
    SkewHermitian,
    GeneralComplex,
    GeneralReal,
}

impl MatrixClass {
    pub const ALL: [MatrixClass; 6] = [
        MatrixClass::Symmetric,
        MatrixClass::SkewSymmetric,
        MatrixClass::Hermitian,
        MatrixClass::SkewHermitian,
        MatrixClass::GeneralComplex,
        MatrixClass::GeneralReal,
    ];

    /// Classes contained in the real matrices; the tuple action restricts
    /// the unitary part to real orthogonal matrices on these.
    pub fn is_real(self) -> bool {
        matches!(
            self,
            MatrixClass::Symmetric | MatrixClass::SkewSymmetric | MatrixClass::GeneralReal
        )
    }

    /// Real dimension of the class inside the n×n matrices.
    pub fn dim(self, n: usize) -> usize {
        match self {
            MatrixClass::Symmetric => n * (n + 1) / 2,
            MatrixClass::SkewSymmetric => n * (n - 1) / 2,
            MatrixClass::Hermitian | MatrixClass::SkewHermitian => n * n,
            MatrixClass::GeneralComplex => 2 * n * n,
            MatrixClass::GeneralReal => n * n,
        }
    }

    /// Orthogonal projection onto the class subspace (with respect to the
    /// real inner product ⟨A,B⟩ = Re tr(AB*)).
    pub fn project(self, a: &ComplexMatrix) -> ComplexMatrix {
        let n = a.side();
        match self {
            MatrixClass::Hermitian => {
                let adj = a.conj_transpose();
                a.add(&adj).scale_re(0.5)
            }
            MatrixClass::SkewHermitian => {
                let adj = a.conj_transpose();
                a.sub(&adj).scale_re(0.5)
            }
            MatrixClass::Symmetric => ComplexMatrix::from_fn(n, |i, j| {
                Complex64::new((a.get(i, j).re + a.get(j, i).re) * 0.5, 0.0)
            }),
            MatrixClass::SkewSymmetric => ComplexMatrix::from_fn(n, |i, j| {
                Complex64::new((a.get(i, j).re - a.get(j, i).re) * 0.5, 0.0)
            }),
            MatrixClass::GeneralComplex => a.clone(),
            MatrixClass::GeneralReal => {
                ComplexMatrix::from_fn(n, |i, j| Complex64::new(a.get(i, j).re, 0.0))
            }
        }
    }

    /// Membership residual ‖A − project(A)‖.
    pub fn residual(self, a: &ComplexMatrix) -> f64 {
        a.dist(&self.project(a))
    }

    pub fn membership_tol(self, n: usize) -> f64 {
        TAU_MEM_UNIT * n as f64
    }

    pub fn contains(self, a: &ComplexMatrix) -> bool {
        self.residual(a) <= self.membership_tol(a.side())
    }

    pub fn check_member(self, a: &ComplexMatrix) -> Result<()> {
        let residual = self.residual(a);
        let tol = self.membership_tol(a.side());
        if residual <= tol {
            Ok(())
        } else {
            Err(Error::NotInClass {
                class: self,
                residual,
                tol,
            })
        }
    }
}

/// Ordered tuple (B_1, …, B_m) of same-class n×n matrices — the object the
/// inequality is evaluated on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixTuple {
    class: MatrixClass,
    n: usize,
    matrices: Vec<ComplexMatrix>,
}

impl MatrixTuple {
    /// Validates membership of every entry and a uniform side length.
    pub fn new(class: MatrixClass, matrices: Vec<ComplexMatrix>) -> Result<Self> {
        let n = match matrices.first() {
            Some(m) => m.side(),
            None => {
                return Err(Error::InvalidConfig("tuple must have m ≥ 1 members".into()));
            }
        };
        for m in &matrices {
            if m.side() != n {
                return Err(Error::SizeMismatch {
                    context: "tuple member side",
                    expected: n,
                    got: m.side(),
                });
            }
            if !m.is_finite() {
                return Err(Error::InvalidConfig(
                    "tuple member has non-finite entries".into(),
                ));
            }
            class.check_member(m)?;
        }
        Ok(Self { class, n, matrices })
    }

    pub fn zero(class: MatrixClass, m: usize, n: usize) -> Result<Self> {
        Self::new(class, vec![ComplexMatrix::zeros(n); m])
    }

    pub fn class(&self) -> MatrixClass {
        self.class
    }

    pub fn side(&self) -> usize {
        self.n
    }

    /// Number of matrices m.
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn members(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn member(&self, r: usize) -> &ComplexMatrix {
        &self.matrices[r]
    }

    /// Σ_r ‖B_r‖².
    pub fn energy(&self) -> f64 {
        self.matrices.iter().map(ComplexMatrix::norm_sq).sum()
    }

    /// Re-tags the tuple as a member of a larger class (e.g. Hermitian tuples
    /// viewed as general complex ones). Membership is re-validated.
    pub fn retag(&self, class: MatrixClass) -> Result<Self> {
        Self::new(class, self.matrices.clone())
    }

    /// Maps every member through `f`, re-projecting onto the class.
    pub fn map(&self, mut f: impl FnMut(&ComplexMatrix) -> ComplexMatrix) -> Self {
        Self {
            class: self.class,
            n: self.n,
            matrices: self
                .matrices
                .iter()
                .map(|m| self.class.project(&f(m)))
                .collect(),
        }
    }

    pub fn scale(&self, t: f64) -> Self {
        Self {
            class: self.class,
            n: self.n,
            matrices: self.matrices.iter().map(|m| m.scale_re(t)).collect(),
        }
    }
}
