use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::class::MatrixClass;
use super::complex::{Complex64, ComplexMatrix};
use super::real::RealMatrix;

/// Seedable deterministic random stream. A base stream is created from a
/// seed; [`RandomStream::split`] derives independent child streams that are
/// reproducible from (seed, index) alone, so parallel workers can each own
/// one without coordination.
#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    /// Base stream for `seed` (stream index 0).
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream identified by (seed, index). Index 0 is the base
    /// stream itself; use indices ≥ 1 for children drawn alongside the base.
    pub fn split(&self, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        Self {
            seed: self.seed,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Standard normal draw.
    pub fn gaussian(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Complex draw with independent standard normal real and imaginary parts.
    pub fn complex_gaussian(&mut self) -> Complex64 {
        let re = self.gaussian();
        let im = self.gaussian();
        Complex64::new(re, im)
    }

    /// Uniform draw in the open interval (0, 1).
    pub fn uniform(&mut self) -> f64 {
        loop {
            let u: f64 = self.rng.gen();
            if u > 0.0 {
                return u;
            }
        }
    }

    /// Uniform integer in [0, bound).
    pub fn below(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    pub fn flip(&mut self) -> bool {
        self.rng.gen()
    }
}

/// Random class member: i.i.d. Gaussian entries projected onto the class.
pub fn sample_class(class: MatrixClass, n: usize, rng: &mut RandomStream) -> ComplexMatrix {
    let raw = ComplexMatrix::from_fn(n, |_, _| rng.complex_gaussian());
    class.project(&raw)
}

/// Haar-style random unitary: Gaussian matrix orthonormalized column by
/// column. Two Gram-Schmidt passes keep ‖P*P − I‖ at machine precision; the
/// positive-diagonal normalization of the triangular factor fixes phases.
pub fn sample_unitary(n: usize, rng: &mut RandomStream) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.complex_gaussian()).collect())
        .collect();
    for j in 0..n {
        loop {
            let mut v = cols[j].clone();
            for _pass in 0..2 {
                for prev in cols.iter().take(j) {
                    let proj: Complex64 = prev.iter().zip(&v).map(|(q, x)| q.conj() * x).sum();
                    for (x, q) in v.iter_mut().zip(prev) {
                        *x -= proj * q;
                    }
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-8 {
                for x in &mut v {
                    *x /= norm;
                }
                cols[j] = v;
                break;
            }
            // near-dependent draw (probability ~0); redraw this column
            cols[j] = (0..n).map(|_| rng.complex_gaussian()).collect();
        }
    }
    ComplexMatrix::from_fn(n, |i, j| cols[j][i])
}

/// Haar-style random orthogonal matrix (real Gaussian + Gram-Schmidt).
pub fn sample_orthogonal(d: usize, rng: &mut RandomStream) -> RealMatrix {
    let mut cols: Vec<Vec<f64>> = (0..d)
        .map(|_| (0..d).map(|_| rng.gaussian()).collect())
        .collect();
    for j in 0..d {
        loop {
            let mut v = cols[j].clone();
            for _pass in 0..2 {
                for prev in cols.iter().take(j) {
                    let proj: f64 = prev.iter().zip(&v).map(|(q, x)| q * x).sum();
                    for (x, q) in v.iter_mut().zip(prev) {
                        *x -= proj * q;
                    }
                }
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-8 {
                for x in &mut v {
                    *x /= norm;
                }
                cols[j] = v;
                break;
            }
            cols[j] = (0..d).map(|_| rng.gaussian()).collect();
        }
    }
    RealMatrix::from_fn(d, d, |i, j| cols[j][i])
}
