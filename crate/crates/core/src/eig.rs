//! Symmetric eigendecomposition by cyclic Jacobi rotations.
//!
//! Sized for the Gram and coefficient matrices that show up here (side up to
//! a few hundred); Jacobi is slow for large matrices but delivers machine
//! precision on small symmetric ones and is fully deterministic.

use crate::matcore::RealMatrix;
use crate::{Error, Result};

const MAX_SWEEPS: usize = 64;

/// Decomposes a symmetric matrix as A = V diag(w) Vᵗ.
///
/// Eigenvalues come back sorted descending; each eigenvector column has its
/// first entry of non-negligible magnitude normalized positive, so repeated
/// runs produce identical output.
pub fn symmetric_eigen(a: &RealMatrix) -> Result<(Vec<f64>, RealMatrix)> {
    if !a.is_square() {
        return Err(Error::SizeMismatch {
            context: "symmetric eigen",
            expected: a.rows(),
            got: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok((Vec::new(), RealMatrix::zeros(0, 0)));
    }
    let mut m = a.clone();
    // symmetrize defensively; callers pass Gram-type matrices
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (m.get(i, j) + m.get(j, i));
            m.set(i, j, avg);
            m.set(j, i, avg);
        }
    }
    let mut v = RealMatrix::identity(n);
    let scale = m.norm_sq().sqrt().max(1.0);
    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let off: f64 = {
            let mut s = 0.0;
            for i in 0..n {
                for j in i + 1..n {
                    s += m.get(i, j) * m.get(i, j);
                }
            }
            (2.0 * s).sqrt()
        };
        if off <= 1e-15 * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m.get(p, q);
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = m.get(p, p);
                let aqq = m.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m.get(k, p);
                    let mkq = m.get(k, q);
                    m.set(k, p, c * mkp - s * mkq);
                    m.set(k, q, s * mkp + c * mkq);
                }
                for k in 0..n {
                    let mpk = m.get(p, k);
                    let mqk = m.get(q, k);
                    m.set(p, k, c * mpk - s * mqk);
                    m.set(q, k, s * mpk + c * mqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }
    if !converged {
        // final check after the last sweep
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += m.get(i, j) * m.get(i, j);
            }
        }
        if (2.0 * s).sqrt() > 1e-12 * scale {
            return Err(Error::EigenFailure { side: n });
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m.get(j, j)
            .partial_cmp(&m.get(i, i))
            .expect("finite eigenvalues")
    });
    let w: Vec<f64> = order.iter().map(|&i| m.get(i, i)).collect();
    let mut vecs = RealMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        let mut sign = 1.0;
        for k in 0..n {
            let x = v.get(k, old_col);
            if x.abs() > 1e-12 {
                if x < 0.0 {
                    sign = -1.0;
                }
                break;
            }
        }
        for k in 0..n {
            vecs.set(k, new_col, sign * v.get(k, old_col));
        }
    }
    Ok((w, vecs))
}
