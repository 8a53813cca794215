//! Multi-start projected-gradient search for best constants: ascent of the
//! commutator ratio over unit-energy class tuples, and ascent of the gap
//! form over the probability simplex. Restarts run concurrently, each owning
//! a (seed, index) random stream, and the merge is order-independent, so a
//! report depends only on its configuration.

mod ratio;
mod simplex;

pub use ratio::{
    explore_conjecture, maximize_ratio, maximize_ratio_with_starts, ratio_gradient, ExploreReport,
};
pub use simplex::{
    maximize_gap_form, maximize_gap_form_over, project_to_simplex, SimplexSearchConfig,
    SimplexSearchReport,
};

use serde::Serialize;

use crate::matcore::{MatrixClass, MatrixTuple};
use crate::{Error, Result};

/// Budgets and problem coordinates of a ratio search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchConfig {
    pub class: MatrixClass,
    pub m: usize,
    pub n: usize,
    pub restarts: usize,
    pub max_iters: usize,
    pub step_init: f64,
    pub step_shrink: f64,
    pub grad_tol: f64,
    pub seed: u64,
    /// Record the per-iteration ratio of every restart.
    pub record_trace: bool,
}

impl SearchConfig {
    /// Desk-scale defaults: 64 restarts × 2000 iterations.
    pub fn new(class: MatrixClass, m: usize, n: usize, seed: u64) -> Self {
        Self {
            class,
            m,
            n,
            restarts: 64,
            max_iters: 2000,
            step_init: 0.5,
            step_shrink: 0.5,
            grad_tol: 1e-8,
            seed,
            record_trace: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::InvalidConfig("m and n must be positive".into()));
        }
        if self.restarts == 0 || self.max_iters == 0 {
            return Err(Error::InvalidConfig("budgets must be positive".into()));
        }
        if self.step_init.is_nan() || self.step_init <= 0.0 {
            return Err(Error::InvalidConfig("step_init must be positive".into()));
        }
        let shrink_ok = self.step_shrink > 0.0 && self.step_shrink < 1.0;
        if !shrink_ok {
            return Err(Error::InvalidConfig(
                "step_shrink must lie in (0, 1)".into(),
            ));
        }
        if self.grad_tol.is_nan() || self.grad_tol <= 0.0 {
            return Err(Error::InvalidConfig("grad_tol must be positive".into()));
        }
        Ok(())
    }
}

/// Summary of one restart trajectory.
#[derive(Debug, Clone, Serialize)]
pub struct RestartOutcome {
    pub restart: usize,
    pub ratio: f64,
    pub iterations: usize,
    pub grad_norm: f64,
    /// Ratio after each iteration; empty unless tracing was requested.
    pub trace: Vec<f64>,
}

/// Finite-difference validation of the analytic gradient, run once per
/// search before any ascent step.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GradientCheck {
    pub directions: usize,
    pub max_rel_err: f64,
}

/// Outcome of a multi-start ratio search. `best_ratio` is exactly the
/// evaluation of `best_tuple` and the maximum over all restarts.
#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub config: SearchConfig,
    pub best_ratio: f64,
    pub best_restart: usize,
    pub best_tuple: MatrixTuple,
    pub restarts: Vec<RestartOutcome>,
    pub total_iterations: usize,
    pub gradient_check: Option<GradientCheck>,
}
