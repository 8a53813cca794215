use rayon::prelude::*;
use serde::Serialize;

use crate::basis::BasisRotation;
use crate::ineq::{GapForm, SimplexPoint};
use crate::matcore::RandomStream;
use crate::{Error, Result};

/// Budgets for simplex ascent of the gap form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplexSearchConfig {
    /// Random interior starts, added to the deterministic vertex starts.
    pub random_starts: usize,
    pub max_iters: usize,
    pub step_init: f64,
    pub step_shrink: f64,
    pub grad_tol: f64,
    pub seed: u64,
    /// Floor ε of the restricted simplex Δ_ε; 0 searches all of Δ.
    pub epsilon: f64,
}

impl SimplexSearchConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            random_starts: 16,
            max_iters: 500,
            step_init: 0.5,
            step_shrink: 0.5,
            grad_tol: 1e-10,
            seed,
            epsilon: 0.0,
        }
    }

    fn validate(&self, dim: usize) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("budgets must be positive".into()));
        }
        let step_ok = self.step_init > 0.0;
        let shrink_ok = self.step_shrink > 0.0 && self.step_shrink < 1.0;
        if !step_ok || !shrink_ok {
            return Err(Error::InvalidConfig("invalid step parameters".into()));
        }
        let eps_ok = self.epsilon >= 0.0 && self.epsilon * (dim as f64) <= 1.0;
        if !eps_ok {
            return Err(Error::InvalidConfig(format!(
                "epsilon {} leaves an empty simplex for dimension {dim}",
                self.epsilon
            )));
        }
        Ok(())
    }
}

/// Euclidean projection of `v` onto {x ≥ 0, Σx = total}.
pub fn project_to_simplex(v: &[f64], total: f64) -> Vec<f64> {
    let n = v.len();
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    let mut cumulative = 0.0;
    let mut theta = (sorted.iter().sum::<f64>() - total) / n as f64;
    for (k, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let candidate = (cumulative - total) / (k + 1) as f64;
        if u - candidate > 0.0 {
            theta = candidate;
        }
    }
    v.iter().map(|&x| (x - theta).max(0.0)).collect()
}

/// Projection onto Δ_ε = {x ≥ ε, Σx = 1}.
fn project_to_floor_simplex(v: &[f64], eps: f64) -> Vec<f64> {
    let n = v.len();
    let free = 1.0 - eps * n as f64;
    let shifted: Vec<f64> = v.iter().map(|&x| x - eps).collect();
    project_to_simplex(&shifted, free.max(0.0))
        .into_iter()
        .map(|y| y + eps)
        .collect()
}

/// Result of a simplex ascent. `best_value` is a certified lower bound on
/// the supremum of the form over the searched region, never an upper bound.
#[derive(Debug, Clone, Serialize)]
pub struct SimplexSearchReport {
    pub best_value: f64,
    pub best_point: SimplexPoint,
    pub starts: usize,
    pub total_iterations: usize,
}

fn ascend(form: &GapForm, cfg: &SimplexSearchConfig, start: Vec<f64>) -> (f64, Vec<f64>, usize) {
    let mut x = project_to_floor_simplex(&start, cfg.epsilon);
    let mut value = form.value(&x).expect("matching dimension");
    let mut step = cfg.step_init;
    let mut iterations = 0;
    for _ in 0..cfg.max_iters {
        let grad = form.gradient(&x).expect("matching dimension");
        let mean = grad.iter().sum::<f64>() / grad.len() as f64;
        let tangent_norm = grad
            .iter()
            .map(|g| (g - mean) * (g - mean))
            .sum::<f64>()
            .sqrt();
        if tangent_norm < cfg.grad_tol {
            break;
        }
        let mut s = step;
        let mut accepted = false;
        while s >= 1e-14 {
            let stepped: Vec<f64> = x.iter().zip(&grad).map(|(xi, gi)| xi + s * gi).collect();
            let cand = project_to_floor_simplex(&stepped, cfg.epsilon);
            let cand_value = form.value(&cand).expect("matching dimension");
            if cand_value > value {
                x = cand;
                value = cand_value;
                accepted = true;
                break;
            }
            s *= cfg.step_shrink;
        }
        iterations += 1;
        if !accepted {
            break;
        }
        step = (s * 2.0).min(1e3);
    }
    (value, x, iterations)
}

/// Maximizes a prebuilt gap form over Δ (or Δ_ε). Starts from every vertex
/// plus `random_starts` Dirichlet-distributed interior points.
pub fn maximize_gap_form_over(
    form: &GapForm,
    cfg: &SimplexSearchConfig,
) -> Result<SimplexSearchReport> {
    let dim = form.dim();
    cfg.validate(dim)?;
    let base = RandomStream::new(cfg.seed);
    let starts = dim + cfg.random_starts;
    let outcomes: Vec<(f64, Vec<f64>, usize)> = (0..starts)
        .into_par_iter()
        .map(|idx| {
            let start = if idx < dim {
                let mut v = vec![0.0; dim];
                v[idx] = 1.0;
                v
            } else {
                let mut rng = base.split(idx as u64 + 1);
                let raw: Vec<f64> = (0..dim).map(|_| -rng.uniform().ln()).collect();
                let sum: f64 = raw.iter().sum();
                raw.into_iter().map(|g| g / sum).collect()
            };
            ascend(form, cfg, start)
        })
        .collect();
    let mut best = 0;
    for (i, outcome) in outcomes.iter().enumerate() {
        if outcome.0 > outcomes[best].0 {
            best = i;
        }
    }
    let total_iterations = outcomes.iter().map(|o| o.2).sum();
    let (best_value, best_coords, _) = outcomes.into_iter().nth(best).expect("nonempty starts");
    // clean up projection round-off before constructing the certified point
    let normalized = project_to_floor_simplex(&best_coords, cfg.epsilon);
    let sum: f64 = normalized.iter().sum();
    let best_point = SimplexPoint::new(normalized.iter().map(|x| x / sum).collect())?;
    Ok(SimplexSearchReport {
        best_value,
        best_point,
        starts,
        total_iterations,
    })
}

/// Builds the gap form for a rotation and maximizes it over the simplex.
pub fn maximize_gap_form(
    rotation: &BasisRotation,
    n: usize,
    cfg: &SimplexSearchConfig,
) -> Result<SimplexSearchReport> {
    let form = GapForm::new(rotation, n)?;
    maximize_gap_form_over(&form, cfg)
}
