use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::{Error, Result};

/// Complex scalar type used throughout the crate.
pub type Complex64 = num_complex::Complex<f64>;

/// Dense square complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Build from rows of (re, im) pairs. Fails on a ragged or empty layout.
    pub fn from_rows(rows: &[Vec<(f64, f64)>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::SizeMismatch {
                    context: "matrix row",
                    expected: n,
                    got: row.len(),
                });
            }
            for (j, &(re, im)) in row.iter().enumerate() {
                m.set(i, j, Complex64::new(re, im));
            }
        }
        Ok(m)
    }

    /// Side length n.
    pub fn side(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn scale_re(&self, t: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|z| z * t).collect(),
        }
    }

    /// Entrywise sum; panics on mismatched sides (internal misuse).
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix add: side mismatch");
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix sub: side mismatch");
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Matrix product; panics on mismatched sides (internal misuse).
    pub fn mul_mat(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix mul: side mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Squared Frobenius norm ‖A‖² = tr(AA*) = Σ |a_ij|².
    pub fn norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Commutator [A, B] = AB − BA.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                context: "commutator",
                expected: self.n,
                got: other.n,
            });
        }
        Ok(self.mul_mat(other).sub(&other.mul_mat(self)))
    }

    /// Real Frobenius inner product ⟨A, B⟩ = Re tr(AB*).
    pub fn inner(&self, other: &Self) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                context: "inner product",
                expected: self.n,
                got: other.n,
            });
        }
        // Re tr(AB*) = Σ_ij Re(a_ij · conj(b_ij))
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.re * b.re + a.im * b.im)
            .sum())
    }

    /// ‖self − other‖, for residual checks.
    pub fn dist(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "matrix dist: side mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Residual ‖A*A − I‖ from unitarity.
    pub fn unitary_residual(&self) -> f64 {
        let gram = self.conj_transpose().mul_mat(self);
        gram.dist(&Self::identity(self.n))
    }
}

/// Serializes as nested arrays of [re, im] pairs, row-major.
impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut rows = serializer.serialize_seq(Some(self.n))?;
        for i in 0..self.n {
            let row: Vec<[f64; 2]> = (0..self.n)
                .map(|j| {
                    let z = self.get(i, j);
                    [z.re, z.im]
                })
                .collect();
            rows.serialize_element(&row)?;
        }
        rows.end()
    }
}
