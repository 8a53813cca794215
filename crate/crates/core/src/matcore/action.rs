use super::class::MatrixTuple;
use super::complex::ComplexMatrix;
use super::real::RealMatrix;
use super::TAU_ORTH;
use crate::{Error, Result};

/// Element (P, R) of U(n) × O(m): simultaneous unitary congruence of the
/// tuple members and orthogonal rotation of the tuple itself. Both sides of
/// the inequality are invariant under this action.
#[derive(Debug, Clone)]
pub struct KElement {
    unitary: ComplexMatrix,
    rotation: RealMatrix,
}

impl KElement {
    pub fn new(unitary: ComplexMatrix, rotation: RealMatrix) -> Result<Self> {
        let ur = unitary.unitary_residual();
        if ur > TAU_ORTH {
            return Err(Error::NotOrthonormal {
                kind: "unitary",
                residual: ur,
                tol: TAU_ORTH,
            });
        }
        if !rotation.is_square() {
            return Err(Error::SizeMismatch {
                context: "rotation part",
                expected: rotation.rows(),
                got: rotation.cols(),
            });
        }
        let or = rotation.orthogonality_residual();
        if or > TAU_ORTH {
            return Err(Error::NotOrthonormal {
                kind: "orthogonal",
                residual: or,
                tol: TAU_ORTH,
            });
        }
        Ok(Self { unitary, rotation })
    }

    pub fn identity(n: usize, m: usize) -> Self {
        Self {
            unitary: ComplexMatrix::identity(n),
            rotation: RealMatrix::identity(m),
        }
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    pub fn rotation(&self) -> &RealMatrix {
        &self.rotation
    }

    /// Applies (P, R): the r-th output is Σ_j R_{jr} P* B_j P.
    ///
    /// Real classes require a real orthogonal P; a genuinely complex unitary
    /// would leave the class and is rejected.
    pub fn apply(&self, tuple: &MatrixTuple) -> Result<MatrixTuple> {
        let n = tuple.side();
        let m = tuple.len();
        if self.unitary.side() != n {
            return Err(Error::SizeMismatch {
                context: "action unitary side",
                expected: n,
                got: self.unitary.side(),
            });
        }
        if self.rotation.rows() != m {
            return Err(Error::SizeMismatch {
                context: "action rotation side",
                expected: m,
                got: self.rotation.rows(),
            });
        }
        let class = tuple.class();
        if class.is_real() {
            let im_norm: f64 = self
                .unitary
                .entries()
                .iter()
                .map(|z| z.im * z.im)
                .sum::<f64>()
                .sqrt();
            if im_norm > TAU_ORTH {
                return Err(Error::InvalidAction {
                    class,
                    reason: "real classes need a real orthogonal congruence",
                });
            }
        }
        let p_adj = self.unitary.conj_transpose();
        let conjugated: Vec<ComplexMatrix> = tuple
            .members()
            .iter()
            .map(|b| p_adj.mul_mat(b).mul_mat(&self.unitary))
            .collect();
        let mut out = Vec::with_capacity(m);
        for r in 0..m {
            let mut acc = ComplexMatrix::zeros(n);
            for (j, cj) in conjugated.iter().enumerate() {
                let w = self.rotation.get(j, r);
                if w != 0.0 {
                    acc = acc.add(&cj.scale_re(w));
                }
            }
            class.check_member(&acc).map_err(|_| Error::InvalidAction {
                class,
                reason: "action output left the class",
            })?;
            out.push(acc);
        }
        MatrixTuple::new(class, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::sample::{sample_class, sample_orthogonal, sample_unitary, RandomStream};
    use crate::matcore::MatrixClass;

    fn random_tuple(class: MatrixClass, m: usize, n: usize, seed: u64) -> MatrixTuple {
        let mut rng = RandomStream::new(seed);
        let mats = (0..m).map(|_| sample_class(class, n, &mut rng)).collect();
        MatrixTuple::new(class, mats).unwrap()
    }

    fn random_element(class: MatrixClass, m: usize, n: usize, seed: u64) -> KElement {
        use crate::matcore::Complex64;
        let mut rng = RandomStream::new(seed);
        let p = if class.is_real() {
            let r = sample_orthogonal(n, &mut rng);
            ComplexMatrix::from_fn(n, |i, j| Complex64::new(r.get(i, j), 0.0))
        } else {
            sample_unitary(n, &mut rng)
        };
        KElement::new(p, sample_orthogonal(m, &mut rng)).unwrap()
    }

    #[test]
    fn identity_acts_trivially() {
        let t = random_tuple(MatrixClass::Hermitian, 3, 3, 1);
        let g = KElement::identity(3, 3);
        let gt = g.apply(&t).unwrap();
        for (a, b) in t.members().iter().zip(gt.members()) {
            assert!(a.dist(b) <= 1e-14);
        }
    }

    #[test]
    fn energy_preserved() {
        for class in MatrixClass::ALL {
            let t = random_tuple(class, 3, 3, 5);
            let g = random_element(class, 3, 3, 9);
            let gt = g.apply(&t).unwrap();
            assert!(
                (t.energy() - gt.energy()).abs() <= 1e-10 * (1.0 + t.energy()),
                "{class:?}"
            );
        }
    }

    #[test]
    fn complex_unitary_rejected_on_real_class() {
        let t = random_tuple(MatrixClass::Symmetric, 2, 3, 2);
        let mut rng = RandomStream::new(3);
        let g = KElement::new(sample_unitary(3, &mut rng), RealMatrix::identity(2)).unwrap();
        assert!(matches!(g.apply(&t), Err(Error::InvalidAction { .. })));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let t = random_tuple(MatrixClass::Hermitian, 2, 3, 4);
        let g = KElement::identity(4, 2);
        assert!(g.apply(&t).is_err());
        let g = KElement::identity(3, 3);
        assert!(g.apply(&t).is_err());
    }

    #[test]
    fn non_orthogonal_rotation_rejected() {
        let mut r = RealMatrix::identity(2);
        r.set(0, 1, 0.5);
        assert!(KElement::new(ComplexMatrix::identity(2), r).is_err());
    }
}
