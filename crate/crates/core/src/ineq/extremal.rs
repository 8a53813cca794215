use crate::matcore::{Complex64, ComplexMatrix, MatrixClass, MatrixTuple};
use crate::{Error, Result};

/// The 2×2 generators of the equality configurations, scaled by λ ≥ 0:
/// H_1 = λ·diag(1,−1), H_2 = λ·offdiag(1,1), H_3 = λ·offdiag(−i,i).
/// Traceless, pairwise anticommuting, equal norm √2·λ.
pub fn pauli_triple(lambda: f64) -> [ComplexMatrix; 3] {
    let mut h1 = ComplexMatrix::zeros(2);
    h1.set(0, 0, Complex64::new(lambda, 0.0));
    h1.set(1, 1, Complex64::new(-lambda, 0.0));
    let mut h2 = ComplexMatrix::zeros(2);
    h2.set(0, 1, Complex64::new(lambda, 0.0));
    h2.set(1, 0, Complex64::new(lambda, 0.0));
    let mut h3 = ComplexMatrix::zeros(2);
    h3.set(0, 1, Complex64::new(0.0, -lambda));
    h3.set(1, 0, Complex64::new(0.0, lambda));
    [h1, h2, h3]
}

/// The real symmetric equality pair A_1 = λ·diag(1,−1), A_2 = λ·offdiag(1,1).
pub fn symmetric_pair(lambda: f64) -> [ComplexMatrix; 2] {
    let [h1, h2, _] = pauli_triple(lambda);
    [h1, h2]
}

/// diag(top, 0) embedding of a 2×2 block into an n×n matrix.
fn embed(top: &ComplexMatrix, n: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..top.side() {
        for j in 0..top.side() {
            out.set(i, j, top.get(i, j));
        }
    }
    out
}

/// Equality tuple for the given class, with θ = 0 where a rotation angle
/// applies. See [`extremal_tuple_with_theta`].
pub fn extremal_tuple(class: MatrixClass, m: usize, n: usize, lambda: f64) -> Result<MatrixTuple> {
    extremal_tuple_with_theta(class, m, n, lambda, 0.0)
}

/// Constructs a tuple achieving equality at the registry constant.
///
/// Hermitian with m ≥ 3 yields (diag(H_1,0), diag(H_2,0), diag(H_3,0))
/// padded with zero matrices; m = 2 yields the one-parameter family
/// (diag(H_1,0), diag(cos θ·H_2 + sin θ·H_3, 0)). Skew-Hermitian replaces
/// H_j by i·H_j. Symmetric uses the real pair (θ must be 0: the rotated
/// member leaves the real class) padded with zeros for m > 2.
pub fn extremal_tuple_with_theta(
    class: MatrixClass,
    m: usize,
    n: usize,
    lambda: f64,
    theta: f64,
) -> Result<MatrixTuple> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!(
            "extremal tuple needs n ≥ 2, got {n}"
        )));
    }
    if m < 2 {
        return Err(Error::InvalidConfig(format!(
            "extremal tuple needs m ≥ 2, got {m}"
        )));
    }
    if lambda.is_nan() || lambda < 0.0 {
        return Err(Error::InvalidConfig(format!(
            "λ must be nonnegative, got {lambda}"
        )));
    }
    let [h1, h2, h3] = pauli_triple(lambda);
    let blocks: Vec<ComplexMatrix> = match class {
        MatrixClass::Hermitian | MatrixClass::SkewHermitian => {
            let tops = if m == 2 {
                let mixed = h2.scale_re(theta.cos()).add(&h3.scale_re(theta.sin()));
                vec![h1, mixed]
            } else {
                vec![h1, h2, h3]
            };
            let tops: Vec<ComplexMatrix> = if class == MatrixClass::SkewHermitian {
                tops.iter()
                    .map(|h| h.scale(Complex64::new(0.0, 1.0)))
                    .collect()
            } else {
                tops
            };
            tops
        }
        MatrixClass::Symmetric => {
            if theta != 0.0 {
                return Err(Error::Unsupported(
                    "the rotation angle only applies to the Hermitian classes".into(),
                ));
            }
            let [a1, a2] = symmetric_pair(lambda);
            vec![a1, a2]
        }
        other => {
            return Err(Error::Unsupported(format!(
                "no extremal constructor for class {other:?}"
            )));
        }
    };
    let mut members: Vec<ComplexMatrix> = blocks.iter().map(|b| embed(b, n)).collect();
    while members.len() < m {
        members.push(ComplexMatrix::zeros(n));
    }
    MatrixTuple::new(class, members)
}
