use rayon::prelude::*;
use serde::Serialize;

use super::{GradientCheck, RestartOutcome, SearchConfig, SearchReport};
use crate::ineq::{evaluate, extremal_tuple, known_constant, Rational};
use crate::matcore::{sample_class, ComplexMatrix, MatrixClass, MatrixTuple, RandomStream};
use crate::{Error, Result};

/// Class-projected gradient of the ratio lhs/energy² at a tuple.
///
/// The component for B_r is (4/E²) Σ_{s≠r} [[B_r,B_s], B_s*] − (4L/E³) B_r,
/// projected onto the class subspace. By scale invariance the result is
/// orthogonal to the tuple itself.
pub fn ratio_gradient(tuple: &MatrixTuple) -> Result<Vec<ComplexMatrix>> {
    let energy = tuple.energy();
    if energy <= 0.0 {
        return Err(Error::InvalidConfig(
            "ratio gradient needs positive energy".into(),
        ));
    }
    let members = tuple.members();
    let lhs = evaluate(tuple).lhs;
    let class = tuple.class();
    let inv_e2 = 1.0 / (energy * energy);
    let lhs_term = 4.0 * lhs / (energy * energy * energy);
    let grad = members
        .iter()
        .enumerate()
        .map(|(r, br)| {
            let mut acc = ComplexMatrix::zeros(tuple.side());
            for (s, bs) in members.iter().enumerate() {
                if s == r {
                    continue;
                }
                let comm = br.commutator(bs).expect("uniform side");
                let iterated = comm.commutator(&bs.conj_transpose()).expect("uniform side");
                acc = acc.add(&iterated);
            }
            let ambient = acc.scale_re(4.0 * inv_e2).sub(&br.scale_re(lhs_term));
            class.project(&ambient)
        })
        .collect();
    Ok(grad)
}

fn grad_norm(grad: &[ComplexMatrix]) -> f64 {
    grad.iter().map(ComplexMatrix::norm_sq).sum::<f64>().sqrt()
}

fn tuple_inner(a: &[ComplexMatrix], b: &[ComplexMatrix]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.inner(y).expect("uniform side"))
        .sum()
}

/// Moves along a tuple-shaped direction and renormalizes to unit energy.
fn retract(tuple: &MatrixTuple, direction: &[ComplexMatrix], step: f64) -> Option<MatrixTuple> {
    let stepped = {
        let members: Vec<ComplexMatrix> = tuple
            .members()
            .iter()
            .zip(direction)
            .map(|(b, d)| tuple.class().project(&b.add(&d.scale_re(step))))
            .collect();
        MatrixTuple::new(tuple.class(), members).ok()?
    };
    let energy = stepped.energy();
    if energy <= 0.0 {
        return None;
    }
    Some(stepped.scale(1.0 / energy.sqrt()))
}

fn run_restart(cfg: &SearchConfig, start: MatrixTuple) -> (RestartOutcome, MatrixTuple) {
    let energy = start.energy();
    if energy <= 0.0 {
        // degenerate start (e.g. a zero-dimensional class): ratio 0 by convention
        let outcome = RestartOutcome {
            restart: 0,
            ratio: 0.0,
            iterations: 0,
            grad_norm: 0.0,
            trace: Vec::new(),
        };
        return (outcome, start);
    }
    let mut current = start.scale(1.0 / energy.sqrt());
    let mut ratio = evaluate(&current).ratio;
    let mut step = cfg.step_init;
    let mut iterations = 0;
    let mut last_grad_norm = 0.0;
    let mut trace = Vec::new();
    for _ in 0..cfg.max_iters {
        let grad = match ratio_gradient(&current) {
            Ok(g) => g,
            Err(_) => break,
        };
        let gn = grad_norm(&grad);
        last_grad_norm = gn;
        if gn < cfg.grad_tol {
            break;
        }
        let mut s = step;
        let mut accepted = false;
        while s >= 1e-14 {
            if let Some(cand) = retract(&current, &grad, s) {
                let cand_ratio = evaluate(&cand).ratio;
                if cand_ratio > ratio {
                    current = cand;
                    ratio = cand_ratio;
                    accepted = true;
                    break;
                }
            }
            s *= cfg.step_shrink;
        }
        iterations += 1;
        if cfg.record_trace {
            trace.push(ratio);
        }
        if !accepted {
            break;
        }
        step = (s * 2.0).min(1e3);
    }
    let outcome = RestartOutcome {
        restart: 0,
        ratio,
        iterations,
        grad_norm: last_grad_norm,
        trace,
    };
    (outcome, current)
}

fn sample_tuple(class: MatrixClass, m: usize, n: usize, rng: &mut RandomStream) -> MatrixTuple {
    let members: Vec<ComplexMatrix> = (0..m).map(|_| sample_class(class, n, rng)).collect();
    MatrixTuple::new(class, members).expect("sampled members are in class")
}

fn finite_difference_check(
    cfg: &SearchConfig,
    base: &RandomStream,
) -> Result<Option<GradientCheck>> {
    if cfg.class.dim(cfg.n) == 0 {
        return Ok(None);
    }
    let mut rng = base.split(cfg.restarts as u64 + 1);
    let mut probe = sample_tuple(cfg.class, cfg.m, cfg.n, &mut rng);
    for _ in 0..4 {
        if probe.energy() > 1e-9 {
            break;
        }
        probe = sample_tuple(cfg.class, cfg.m, cfg.n, &mut rng);
    }
    if probe.energy() <= 1e-9 {
        return Ok(None);
    }
    let grad = ratio_gradient(&probe)?;
    let h = 1e-5;
    let directions = 3usize;
    let mut max_rel_err = 0.0f64;
    for _ in 0..directions {
        let dir = sample_tuple(cfg.class, cfg.m, cfg.n, &mut rng);
        let analytic = tuple_inner(&grad, dir.members());
        let shifted = |sign: f64| -> f64 {
            let members: Vec<ComplexMatrix> = probe
                .members()
                .iter()
                .zip(dir.members())
                .map(|(b, d)| b.add(&d.scale_re(sign * h)))
                .collect();
            evaluate(&MatrixTuple::new(cfg.class, members).expect("class is a subspace")).ratio
        };
        let fd = (shifted(1.0) - shifted(-1.0)) / (2.0 * h);
        let denom = analytic.abs().max(fd.abs()).max(1e-8);
        max_rel_err = max_rel_err.max((analytic - fd).abs() / denom);
    }
    Ok(Some(GradientCheck {
        directions,
        max_rel_err,
    }))
}

/// Multi-start projected-gradient ascent of the ratio over unit-energy
/// class tuples. Restart r draws its start from stream (seed, r+1).
pub fn maximize_ratio(cfg: &SearchConfig) -> Result<SearchReport> {
    maximize_ratio_with_starts(cfg, &[])
}

/// Like [`maximize_ratio`] but with explicit warm starts occupying the first
/// restart slots (each must match the configured class, m and n).
pub fn maximize_ratio_with_starts(
    cfg: &SearchConfig,
    warm_starts: &[MatrixTuple],
) -> Result<SearchReport> {
    cfg.validate()?;
    if warm_starts.len() > cfg.restarts {
        return Err(Error::InvalidConfig(
            "more warm starts than restart slots".into(),
        ));
    }
    for t in warm_starts {
        if t.class() != cfg.class {
            return Err(Error::ClassMismatch {
                expected: cfg.class,
                got: t.class(),
            });
        }
        if t.len() != cfg.m || t.side() != cfg.n {
            return Err(Error::InvalidConfig("warm start has wrong shape".into()));
        }
    }
    let base = RandomStream::new(cfg.seed);
    let gradient_check = finite_difference_check(cfg, &base)?;
    if let Some(check) = gradient_check {
        if check.max_rel_err > 1e-4 {
            return Err(Error::GradientCheckFailed {
                rel_err: check.max_rel_err,
            });
        }
    }
    let results: Vec<(RestartOutcome, MatrixTuple)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let start = if r < warm_starts.len() {
                warm_starts[r].clone()
            } else {
                let mut rng = base.split(r as u64 + 1);
                sample_tuple(cfg.class, cfg.m, cfg.n, &mut rng)
            };
            let (mut outcome, tuple) = run_restart(cfg, start);
            outcome.restart = r;
            (outcome, tuple)
        })
        .collect();
    // order-independent merge: first strictly-best ratio in restart order
    let mut best_restart = 0;
    for (i, (outcome, _)) in results.iter().enumerate() {
        if outcome.ratio > results[best_restart].0.ratio {
            best_restart = i;
        }
    }
    let best_tuple = results[best_restart].1.clone();
    let best_ratio = results[best_restart].0.ratio;
    let total_iterations = results.iter().map(|(o, _)| o.iterations).sum();
    let restarts = results.into_iter().map(|(o, _)| o).collect();
    Ok(SearchReport {
        config: cfg.clone(),
        best_ratio,
        best_restart,
        best_tuple,
        restarts,
        total_iterations,
        gradient_check,
    })
}

/// Conjecture probe over the unstructured classes.
#[derive(Debug, Clone, Serialize)]
pub struct ExploreReport {
    pub search: SearchReport,
    /// The conjectured bound 4/3.
    pub reference: Rational,
    /// best_ratio − 4/3.
    pub margin: f64,
    /// Whether the search exceeded the bound beyond 1e−6 — a candidate
    /// counterexample worth dumping.
    pub exceeded: bool,
}

/// Searches GeneralComplex or GeneralReal tuples for ratios beyond 4/3. One
/// restart is warm-started from the best structured extremal embedded in the
/// class, so the search never reports less than the structured constant.
pub fn explore_conjecture(cfg: &SearchConfig) -> Result<ExploreReport> {
    if cfg.class != MatrixClass::GeneralComplex && cfg.class != MatrixClass::GeneralReal {
        return Err(Error::Unsupported(format!(
            "conjecture exploration runs on the unstructured classes, got {:?}",
            cfg.class
        )));
    }
    if cfg.m < 3 {
        return Err(Error::InvalidConfig(
            "the conjecture concerns m ≥ 3; use the pair bound otherwise".into(),
        ));
    }
    cfg.validate()?;
    let witness_class = if cfg.class == MatrixClass::GeneralComplex {
        MatrixClass::Hermitian
    } else {
        MatrixClass::Symmetric
    };
    let warm = extremal_tuple(witness_class, cfg.m, cfg.n, 1.0)?.retag(cfg.class)?;
    let search = maximize_ratio_with_starts(cfg, &[warm])?;
    let reference = known_constant(cfg.class, cfg.m, cfg.n)
        .expect("registry covers m,n ≥ 2")
        .constant;
    let margin = search.best_ratio - reference.as_f64();
    let exceeded = margin > 1e-6;
    Ok(ExploreReport {
        search,
        reference,
        margin,
        exceeded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ineq::extremal_tuple;

    fn quick_config(class: MatrixClass, m: usize, n: usize) -> SearchConfig {
        let mut cfg = SearchConfig::new(class, m, n, 7);
        cfg.restarts = 8;
        cfg.max_iters = 400;
        cfg
    }

    #[test]
    fn gradient_vanishes_at_extremal() {
        let t = extremal_tuple(MatrixClass::Hermitian, 3, 2, 1.0).unwrap();
        let g = ratio_gradient(&t).unwrap();
        assert!(grad_norm(&g) <= 1e-6);
    }

    #[test]
    fn gradient_is_orthogonal_to_radial_direction() {
        let mut rng = RandomStream::new(3);
        let t = sample_tuple(MatrixClass::Hermitian, 3, 3, &mut rng);
        let g = ratio_gradient(&t).unwrap();
        let radial = tuple_inner(&g, t.members());
        assert!(radial.abs() <= 1e-10 * (1.0 + grad_norm(&g)));
    }

    #[test]
    fn gradient_rejects_zero_tuple() {
        let t = MatrixTuple::zero(MatrixClass::Hermitian, 2, 2).unwrap();
        assert!(ratio_gradient(&t).is_err());
    }

    #[test]
    fn finite_difference_agreement_across_classes() {
        for class in MatrixClass::ALL {
            let cfg = quick_config(class, 3, 3);
            let check = finite_difference_check(&cfg, &RandomStream::new(cfg.seed))
                .unwrap()
                .expect("probe exists");
            assert!(
                check.max_rel_err <= 1e-5,
                "{class:?}: {}",
                check.max_rel_err
            );
        }
    }

    #[test]
    fn hermitian_search_reaches_four_thirds() {
        let report = maximize_ratio(&quick_config(MatrixClass::Hermitian, 3, 2)).unwrap();
        assert!(
            (report.best_ratio - 4.0 / 3.0).abs() <= 2e-3,
            "{}",
            report.best_ratio
        );
        assert!(report.best_ratio <= 4.0 / 3.0 + 1e-9);
    }

    #[test]
    fn search_is_deterministic() {
        let cfg = quick_config(MatrixClass::SkewSymmetric, 2, 3);
        let a = maximize_ratio(&cfg).unwrap();
        let b = maximize_ratio(&cfg).unwrap();
        assert_eq!(a.best_ratio, b.best_ratio);
        assert_eq!(a.best_restart, b.best_restart);
        assert_eq!(a.best_tuple, b.best_tuple);
        for (x, y) in a.restarts.iter().zip(&b.restarts) {
            assert_eq!(x.ratio, y.ratio);
            assert_eq!(x.iterations, y.iterations);
        }
    }

    #[test]
    fn trace_is_monotone_when_recorded() {
        let mut cfg = quick_config(MatrixClass::Hermitian, 3, 2);
        cfg.record_trace = true;
        let report = maximize_ratio(&cfg).unwrap();
        for outcome in &report.restarts {
            assert!(outcome.trace.windows(2).all(|w| w[1] >= w[0]));
        }
    }

    #[test]
    fn single_matrix_search_returns_zero() {
        let report = maximize_ratio(&quick_config(MatrixClass::Hermitian, 1, 2)).unwrap();
        assert_eq!(report.best_ratio, 0.0);
    }

    #[test]
    fn best_ratio_matches_best_tuple() {
        let report = maximize_ratio(&quick_config(MatrixClass::Symmetric, 2, 2)).unwrap();
        let e = evaluate(&report.best_tuple);
        assert!((report.best_ratio - e.ratio).abs() <= 1e-12);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut cfg = quick_config(MatrixClass::Hermitian, 3, 2);
        cfg.restarts = 0;
        assert!(maximize_ratio(&cfg).is_err());
        let mut cfg = quick_config(MatrixClass::Hermitian, 3, 2);
        cfg.step_shrink = 1.0;
        assert!(maximize_ratio(&cfg).is_err());
    }

    #[test]
    fn explore_is_anchored_by_the_embedded_witness() {
        let mut cfg = quick_config(MatrixClass::GeneralComplex, 3, 2);
        cfg.restarts = 4;
        cfg.max_iters = 200;
        let report = explore_conjecture(&cfg).unwrap();
        assert!(report.search.best_ratio >= 4.0 / 3.0 - 1e-9);
        assert!(!report.exceeded, "margin {}", report.margin);
    }

    #[test]
    fn zero_warm_start_yields_ratio_zero_not_error() {
        let mut cfg = quick_config(MatrixClass::GeneralComplex, 3, 2);
        cfg.restarts = 2;
        let zero = MatrixTuple::zero(MatrixClass::GeneralComplex, 3, 2).unwrap();
        let report = maximize_ratio_with_starts(&cfg, &[zero]).unwrap();
        assert_eq!(report.restarts[0].ratio, 0.0);
        assert_eq!(report.restarts[0].iterations, 0);
    }

    #[test]
    fn explore_rejects_structured_classes_and_pairs() {
        let cfg = quick_config(MatrixClass::Hermitian, 3, 2);
        assert!(explore_conjecture(&cfg).is_err());
        let cfg = quick_config(MatrixClass::GeneralComplex, 2, 2);
        assert!(explore_conjecture(&cfg).is_err());
    }
}
