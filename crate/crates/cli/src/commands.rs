use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use ddvv_core::basis::{comm_gram_row_sum, pair_comm_norm_sq, IndexPair};
use ddvv_core::exterior::{exterior_square, verify_transform_chain};
use ddvv_core::ineq::{
    equality_diagnostics, evaluate, extremal_tuple_with_theta, known_constant, ConstantStatus,
};
use ddvv_core::lemmas::run_trials;
use ddvv_core::matcore::{
    sample_class, ComplexMatrix, MatrixClass, MatrixTuple, RandomStream, RealMatrix,
};
use ddvv_core::optim::{explore_conjecture, maximize_ratio, SearchConfig, SearchReport};

use crate::manifest::{Report, RunManifest, Status};

/// Command-layer failure: bad arguments or an I/O problem. Both map to the
/// usage exit code; bound violations are reported through `Status` instead.
#[derive(Debug)]
pub enum CommandError {
    Usage(String),
    Io(String),
}

impl std::fmt::Display for CommandError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CommandError::Usage(msg) => write!(f, "usage error: {msg}"),
            CommandError::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

fn usage(err: impl std::fmt::Display) -> CommandError {
    CommandError::Usage(err.to_string())
}

/// Search budgets shared by the estimating commands.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub restarts: usize,
    pub iters: usize,
    pub tol: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            restarts: 64,
            iters: 2000,
            tol: 1e-8,
        }
    }
}

/// Writes a rendered report; an unwritable path is a usage-class failure.
pub fn write_output(path: &Path, contents: &str) -> Result<(), CommandError> {
    std::fs::write(path, contents)
        .map_err(|e| CommandError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Test hook: perturb one basis element before the identity checks so the
/// negative path (closed form vs direct computation) can be exercised.
#[derive(Debug, Clone, Copy)]
pub struct Tamper {
    pub n: usize,
    pub slot: usize,
    pub delta: f64,
}

#[derive(Serialize)]
struct IdentityBlock {
    n: usize,
    table_pairs: usize,
    table_max_dev: f64,
    row_sum_pairs: usize,
    row_sum_max_dev: f64,
}

#[derive(Serialize)]
struct Offence {
    n: usize,
    alpha: usize,
    beta: usize,
    expected: f64,
    actual: f64,
}

/// Exhaustive closed-form identity checks plus randomized exterior-square
/// and transform-chain checks.
pub fn verify_identities(
    n_min: usize,
    n_max: usize,
    seed: u64,
    tamper: Option<Tamper>,
) -> Result<Report, CommandError> {
    if n_min == 0 || n_min > n_max || n_max > 5 {
        return Err(CommandError::Usage(format!(
            "identity checks cover 1 ≤ n_min ≤ n_max ≤ 5, got {n_min}..{n_max}"
        )));
    }
    let mut manifest = RunManifest::new("verify-identities", seed);
    manifest.n_min = Some(n_min);
    manifest.n_max = Some(n_max);

    let mut blocks = Vec::new();
    let mut first_offence: Option<Offence> = None;
    let mut failed = false;
    for n in n_min..=n_max {
        let mut elements: Vec<ComplexMatrix> =
            ddvv_core::basis::hermitian_basis(n).elements().to_vec();
        if let Some(t) = tamper {
            if t.n == n && t.slot < elements.len() {
                let mut e = elements[t.slot].clone();
                let v = e.get(0, 0);
                e.set(0, 0, v + ddvv_core::matcore::Complex64::new(t.delta, 0.0));
                elements[t.slot] = e;
            }
        }
        let count = n * n;
        let mut table_max_dev = 0.0f64;
        let mut row_sum_max_dev = 0.0f64;
        for alpha in 1..=count {
            for beta in 1..=count {
                let a = IndexPair::from_flat(alpha, n).map_err(usage)?;
                let b = IndexPair::from_flat(beta, n).map_err(usage)?;
                let direct = elements[a.slot(n)]
                    .commutator(&elements[b.slot(n)])
                    .map_err(usage)?
                    .norm_sq();
                let table = pair_comm_norm_sq(a, b, n).map_err(usage)?;
                let dev = (direct - table).abs();
                table_max_dev = table_max_dev.max(dev);
                if dev > 1e-12 && first_offence.is_none() {
                    first_offence = Some(Offence {
                        n,
                        alpha,
                        beta,
                        expected: table,
                        actual: direct,
                    });
                }
                let mut row_direct = 0.0;
                for gamma in &elements {
                    let ca = elements[a.slot(n)].commutator(gamma).map_err(usage)?;
                    let cb = elements[b.slot(n)].commutator(gamma).map_err(usage)?;
                    row_direct += ca.inner(&cb).map_err(usage)?;
                }
                let closed = comm_gram_row_sum(a, b, n).map_err(usage)?;
                let dev = (row_direct - closed).abs();
                row_sum_max_dev = row_sum_max_dev.max(dev);
                if dev > 1e-10 && first_offence.is_none() {
                    first_offence = Some(Offence {
                        n,
                        alpha,
                        beta,
                        expected: closed,
                        actual: row_direct,
                    });
                }
            }
        }
        failed |= table_max_dev > 1e-12 || row_sum_max_dev > 1e-10;
        blocks.push(IdentityBlock {
            n,
            table_pairs: count * count,
            table_max_dev,
            row_sum_pairs: count * count,
            row_sum_max_dev,
        });
    }

    // randomized exterior-square checks
    let mut rng = RandomStream::new(seed);
    let phi_trials = 200usize;
    let mut phi_max_rel = 0.0f64;
    let mut phi_transpose_exact = true;
    for _ in 0..phi_trials {
        let rows = 2 + rng.below(5);
        let mid = 2 + rng.below(5);
        let cols = 2 + rng.below(5);
        let a = RealMatrix::from_fn(rows, mid, |_, _| rng.gaussian());
        let b = RealMatrix::from_fn(mid, cols, |_, _| rng.gaussian());
        let lhs = exterior_square(&a.matmul(&b).map_err(usage)?);
        let rhs = exterior_square(&a)
            .matmul(&exterior_square(&b))
            .map_err(usage)?;
        let scale = 1.0 + lhs.norm_sq().sqrt();
        phi_max_rel = phi_max_rel.max(lhs.max_abs_diff(&rhs) / scale);
        phi_transpose_exact &= exterior_square(&a.transpose()) == exterior_square(&a).transpose();
    }
    let phi_identity_exact = (2..=6).all(|d| {
        exterior_square(&RealMatrix::identity(d)) == RealMatrix::identity(d * (d - 1) / 2)
    });
    failed |= phi_max_rel > 1e-10 || !phi_transpose_exact || !phi_identity_exact;

    // randomized transform-chain checks on Hermitian tuples
    let chain_sizes: Vec<usize> = (n_min.max(2)..=n_max.min(4)).collect();
    let mut chain_trials = 0usize;
    let mut chain_max_dev = 0.0f64;
    if !chain_sizes.is_empty() {
        for trial in 0..100usize {
            let m = 2 + trial % 3;
            let n = chain_sizes[trial % chain_sizes.len()];
            let t = MatrixTuple::new(
                MatrixClass::Hermitian,
                (0..m)
                    .map(|_| sample_class(MatrixClass::Hermitian, n, &mut rng))
                    .collect(),
            )
            .map_err(usage)?;
            let report = verify_transform_chain(&t).map_err(usage)?;
            chain_max_dev = chain_max_dev.max(report.max_rel_deviation);
            chain_trials += 1;
        }
        failed |= chain_max_dev > 1e-8;
    }

    let results = json!({
        "identities": blocks,
        "first_offence": first_offence,
        "exterior_square": {
            "product_trials": phi_trials,
            "max_rel_deviation": phi_max_rel,
            "transpose_exact": phi_transpose_exact,
            "identity_exact": phi_identity_exact,
        },
        "chain": {
            "trials": chain_trials,
            "max_rel_deviation": chain_max_dev,
        },
    });
    Ok(Report {
        manifest,
        results,
        status: if failed { Status::Fail } else { Status::Pass },
    })
}

/// Randomized falsification trials of the four supporting bounds.
pub fn check_lemmas(
    n_min: usize,
    n_max: usize,
    trials: usize,
    seed: u64,
) -> Result<Report, CommandError> {
    if n_min == 0 || n_min > n_max || n_max > 8 {
        return Err(CommandError::Usage(format!(
            "lemma trials cover 1 ≤ n_min ≤ n_max ≤ 8, got {n_min}..{n_max}"
        )));
    }
    if trials == 0 {
        return Err(CommandError::Usage("trials must be ≥ 1".into()));
    }
    let mut manifest = RunManifest::new("check-lemmas", seed);
    manifest.n_min = Some(n_min);
    manifest.n_max = Some(n_max);
    manifest.trials = Some(trials);
    let mut reports = Vec::new();
    let mut violations = 0usize;
    for n in n_min..=n_max {
        let report = run_trials(n, trials, seed).map_err(usage)?;
        violations += report.total_violations();
        reports.push(report);
    }
    let results = json!({
        "per_n": reports,
        "total_violations": violations,
    });
    Ok(Report {
        manifest,
        results,
        status: if violations == 0 {
            Status::Pass
        } else {
            Status::Fail
        },
    })
}

fn search_summary(report: &SearchReport) -> serde_json::Value {
    let per_restart: Vec<serde_json::Value> = report
        .restarts
        .iter()
        .map(|r| {
            json!({
                "restart": r.restart,
                "ratio": r.ratio,
                "iterations": r.iterations,
                "grad_norm": r.grad_norm,
            })
        })
        .collect();
    json!({
        "best_ratio": report.best_ratio,
        "best_restart": report.best_restart,
        "total_iterations": report.total_iterations,
        "gradient_check": report.gradient_check,
        "per_restart": per_restart,
        "best_tuple": report.best_tuple,
    })
}

fn write_trace_csv(path: &Path, report: &SearchReport) -> Result<(), CommandError> {
    let file = std::fs::File::create(path)
        .map_err(|e| CommandError::Io(format!("cannot write {}: {e}", path.display())))?;
    let mut out = std::io::BufWriter::new(file);
    let mut emit = || -> std::io::Result<()> {
        writeln!(out, "restart,iteration,ratio")?;
        for restart in &report.restarts {
            for (iteration, ratio) in restart.trace.iter().enumerate() {
                writeln!(out, "{},{},{}", restart.restart, iteration + 1, ratio)?;
            }
        }
        Ok(())
    };
    emit().map_err(|e| CommandError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Best-constant search with registry comparison and equality diagnostics.
pub fn estimate(
    class: MatrixClass,
    m: usize,
    n: usize,
    budget: Budget,
    seed: u64,
    trace_csv: Option<&PathBuf>,
) -> Result<Report, CommandError> {
    let mut cfg = SearchConfig::new(class, m, n, seed);
    cfg.restarts = budget.restarts;
    cfg.max_iters = budget.iters;
    cfg.grad_tol = budget.tol;
    cfg.record_trace = trace_csv.is_some();
    cfg.validate().map_err(usage)?;
    let mut manifest = RunManifest::new("estimate", seed);
    manifest.class = Some(class);
    manifest.m = Some(m);
    manifest.n = Some(n);
    manifest.restarts = Some(cfg.restarts);
    manifest.iters = Some(cfg.max_iters);
    manifest.tol = Some(cfg.grad_tol);

    let report = maximize_ratio(&cfg).map_err(usage)?;
    if let Some(path) = trace_csv {
        write_trace_csv(path, &report)?;
    }
    let registry = known_constant(class, m, n);
    let gap = registry.map(|r| report.best_ratio - r.constant.as_f64());
    let diagnostics = match (registry, class) {
        (Some(row), MatrixClass::Hermitian | MatrixClass::SkewHermitian) => {
            Some(equality_diagnostics(&report.best_tuple, row.constant).map_err(usage)?)
        }
        _ => None,
    };
    let status = match registry {
        Some(row) => {
            let c = row.constant.as_f64();
            match row.status {
                ConstantStatus::Proved => {
                    if report.best_ratio > c + 1e-8 {
                        Status::Fail
                    } else {
                        Status::Pass
                    }
                }
                ConstantStatus::Conjectured => {
                    if report.best_ratio > c + 1e-6 {
                        Status::Counterexample
                    } else {
                        Status::Pass
                    }
                }
            }
        }
        None => Status::Pass,
    };
    let results = json!({
        "search": search_summary(&report),
        "constant": registry,
        "gap": gap,
        "diagnostics": diagnostics,
    });
    Ok(Report {
        manifest,
        results,
        status,
    })
}

/// Constructs an equality tuple, evaluates it, and reports the residual.
pub fn extremal(
    class: MatrixClass,
    m: usize,
    n: usize,
    lambda: f64,
    theta: f64,
    seed: u64,
) -> Result<Report, CommandError> {
    let tuple = extremal_tuple_with_theta(class, m, n, lambda, theta).map_err(usage)?;
    let mut manifest = RunManifest::new("extremal", seed);
    manifest.class = Some(class);
    manifest.m = Some(m);
    manifest.n = Some(n);
    manifest.lambda = Some(lambda);
    manifest.theta = Some(theta);
    let evaluation = evaluate(&tuple);
    let row = known_constant(class, m, n)
        .ok_or_else(|| CommandError::Usage(format!("no registry constant for m={m}, n={n}")))?;
    let residual = row.constant.as_f64() * evaluation.energy * evaluation.energy - evaluation.lhs;
    let tol = 1e-10 * (1.0 + evaluation.energy * evaluation.energy);
    let diagnostics = match class {
        MatrixClass::Hermitian | MatrixClass::SkewHermitian => {
            Some(equality_diagnostics(&tuple, row.constant).map_err(usage)?)
        }
        _ => None,
    };
    let results = json!({
        "evaluation": evaluation,
        "constant": row,
        "residual": residual,
        "diagnostics": diagnostics,
        "tuple": tuple,
    });
    Ok(Report {
        manifest,
        results,
        status: if residual.abs() <= tol {
            Status::Pass
        } else {
            Status::Fail
        },
    })
}

/// Conjecture probe over the unstructured classes; an exceedance beyond
/// 4/3 + 1e−6 is reported as a counterexample candidate with a full dump.
pub fn explore(
    class: MatrixClass,
    m: usize,
    n: usize,
    budget: Budget,
    seed: u64,
    trace_csv: Option<&PathBuf>,
) -> Result<Report, CommandError> {
    let mut cfg = SearchConfig::new(class, m, n, seed);
    cfg.restarts = budget.restarts;
    cfg.max_iters = budget.iters;
    cfg.grad_tol = budget.tol;
    cfg.record_trace = trace_csv.is_some();
    let probe = explore_conjecture(&cfg).map_err(usage)?;
    if let Some(path) = trace_csv {
        write_trace_csv(path, &probe.search)?;
    }
    let mut manifest = RunManifest::new("explore", seed);
    manifest.class = Some(class);
    manifest.m = Some(m);
    manifest.n = Some(n);
    manifest.restarts = Some(cfg.restarts);
    manifest.iters = Some(cfg.max_iters);
    manifest.tol = Some(cfg.grad_tol);
    let results = json!({
        "search": search_summary(&probe.search),
        "reference": probe.reference,
        "margin": probe.margin,
        "exceeded": probe.exceeded,
        "candidate": if probe.exceeded { Some(&probe.search.best_tuple) } else { None },
    });
    Ok(Report {
        manifest,
        results,
        status: if probe.exceeded {
            Status::Counterexample
        } else {
            Status::Pass
        },
    })
}
