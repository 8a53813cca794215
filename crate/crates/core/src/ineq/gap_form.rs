use serde::Serialize;

use crate::basis::{hermitian_basis, pair_comm_norm_sq, rotate_basis, BasisRotation, IndexPair};
use crate::matcore::RealMatrix;
use crate::{Error, Result};

/// Point of the probability simplex Δ = {x ≥ 0, Σ x_α = 1}.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplexPoint {
    coords: Vec<f64>,
}

impl SimplexPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().any(|&x| x.is_nan() || x < 0.0) {
            return Err(Error::InvalidConfig(
                "simplex point has a negative entry".into(),
            ));
        }
        let sum: f64 = coords.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidConfig(format!(
                "simplex coordinates sum to {sum}, not 1"
            )));
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// The quadratic form the inequality turns into over basis coefficients:
///
///   f_Q(x) = Σ_{α,β} x_α x_β ‖[Q̌_α, Q̌_β]‖² − (4/3)(Σ_α x_α)²,
///
/// with Q̌ the Q-rotated Hermitian basis. The Hermitian inequality for m ≥ 3
/// is equivalent to f_Q ≤ 0 on the nonnegative orthant for every rotation.
#[derive(Debug, Clone)]
pub struct GapForm {
    n: usize,
    /// N×N symmetric table ‖[Q̌_α, Q̌_β]‖² with zero diagonal.
    comm_sq: RealMatrix,
}

impl GapForm {
    /// Builds the form for a rotated basis; `rotation` must act on R^(n²).
    pub fn new(rotation: &BasisRotation, n: usize) -> Result<Self> {
        let count = n * n;
        if rotation.side() != count {
            return Err(Error::SizeMismatch {
                context: "gap form rotation",
                expected: count,
                got: rotation.side(),
            });
        }
        let rotated = rotate_basis(&hermitian_basis(n), rotation)?;
        let mut comm_sq = RealMatrix::zeros(count, count);
        for p in 0..count {
            for q in p + 1..count {
                let v = rotated
                    .element(p)
                    .commutator(rotated.element(q))
                    .expect("uniform side")
                    .norm_sq();
                comm_sq.set(p, q, v);
                comm_sq.set(q, p, v);
            }
        }
        Ok(Self { n, comm_sq })
    }

    /// Form for Q = I, using the certified closed-form table instead of
    /// explicit commutators.
    pub fn identity(n: usize) -> Self {
        let count = n * n;
        let mut comm_sq = RealMatrix::zeros(count, count);
        for p in 0..count {
            for q in p + 1..count {
                let a = IndexPair::from_flat(p + 1, n).expect("in range");
                let b = IndexPair::from_flat(q + 1, n).expect("in range");
                let v = pair_comm_norm_sq(a, b, n).expect("in range");
                comm_sq.set(p, q, v);
                comm_sq.set(q, p, v);
            }
        }
        Self { n, comm_sq }
    }

    pub fn side(&self) -> usize {
        self.n
    }

    /// Number of variables N = n².
    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    pub fn comm_norm_sq(&self, a: usize, b: usize) -> f64 {
        self.comm_sq.get(a, b)
    }

    /// f_Q(x) = xᵗ M x − (4/3)(Σx)².
    pub fn value(&self, x: &[f64]) -> Result<f64> {
        let count = self.dim();
        if x.len() != count {
            return Err(Error::SizeMismatch {
                context: "gap form argument",
                expected: count,
                got: x.len(),
            });
        }
        let mut quad = 0.0;
        for p in 0..count {
            if x[p] == 0.0 {
                continue;
            }
            for q in p + 1..count {
                quad += 2.0 * x[p] * x[q] * self.comm_sq.get(p, q);
            }
        }
        let total: f64 = x.iter().sum();
        Ok(quad - 4.0 / 3.0 * total * total)
    }

    /// Euclidean gradient 2Mx − (8/3)(Σx)·1.
    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        let count = self.dim();
        if x.len() != count {
            return Err(Error::SizeMismatch {
                context: "gap form argument",
                expected: count,
                got: x.len(),
            });
        }
        let total: f64 = x.iter().sum();
        let mut grad = vec![-8.0 / 3.0 * total; count];
        for (p, g) in grad.iter_mut().enumerate() {
            let mut row = 0.0;
            for (q, &xq) in x.iter().enumerate() {
                row += self.comm_sq.get(p, q) * xq;
            }
            *g += 2.0 * row;
        }
        Ok(grad)
    }
}

/// One-shot evaluation of f_Q(x).
pub fn gap_form_value(x: &[f64], rotation: &BasisRotation, n: usize) -> Result<f64> {
    GapForm::new(rotation, n)?.value(x)
}
