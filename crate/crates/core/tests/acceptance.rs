//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.
//!
//! Criterion 15 (byte-identical command reports) lives in the CLI crate's
//! acceptance test, next to the command layer it exercises.

use std::time::Instant;

use ddvv_core::basis::{
    comm_gram_row_sum, hermitian_basis, pair_comm_norm_sq, BasisRotation, IndexPair,
};
use ddvv_core::exterior::{exterior_square, verify_transform_chain};
use ddvv_core::ineq::{
    bw_residual, equality_diagnostics, evaluate, extremal_tuple, extremal_tuple_with_theta,
    known_constant, pauli_triple, GapForm,
};
use ddvv_core::lemmas::{self, run_trials, SpectrumVector};
use ddvv_core::matcore::{
    sample_class, sample_orthogonal, sample_unitary, KElement, MatrixClass, MatrixTuple,
    RandomStream, RealMatrix,
};
use ddvv_core::optim::{
    explore_conjecture, maximize_gap_form, maximize_gap_form_over, maximize_ratio, SearchConfig,
    SimplexSearchConfig,
};

fn criterion(id: u32, name: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("acceptance {id:02} {name}: PASS"),
        Err(msg) => {
            println!("acceptance {id:02} {name}: FAIL ({msg})");
            panic!("criterion {id} failed: {msg}");
        }
    }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_tuple(class: MatrixClass, m: usize, n: usize, rng: &mut RandomStream) -> MatrixTuple {
    MatrixTuple::new(class, (0..m).map(|_| sample_class(class, n, rng)).collect())
        .expect("sampled members are in class")
}

#[test]
fn criterion_01_sharp_constant_attainment() {
    criterion(1, "sharp-constant attainment", || {
        let start = Instant::now();
        for n in [2usize, 3, 5] {
            let t = extremal_tuple(MatrixClass::Hermitian, 3, n, 1.0).map_err(|e| e.to_string())?;
            let ratio = evaluate(&t).ratio;
            let target = 4.0 / 3.0;
            check((ratio - target).abs() <= 1e-12 * target, || {
                format!("n={n}: ratio {ratio} not 4/3")
            })?;
        }
        check(start.elapsed().as_secs_f64() < 1.0, || {
            format!("took {:?}", start.elapsed())
        })
    });
}

#[test]
fn criterion_02_sharp_constant_search() {
    criterion(2, "sharp-constant search", || {
        let start = Instant::now();
        let cfg = SearchConfig::new(MatrixClass::Hermitian, 3, 2, 2024);
        let report = maximize_ratio(&cfg).map_err(|e| e.to_string())?;
        let target = 4.0 / 3.0;
        check(
            report.best_ratio >= target - 1e-3 && report.best_ratio <= target + 1e-6,
            || format!("best_ratio {}", report.best_ratio),
        )?;
        check(start.elapsed().as_secs_f64() < 60.0, || {
            format!("took {:?}", start.elapsed())
        })
    });
}

#[test]
fn criterion_03_hermitian_pair_case() {
    criterion(3, "m=2 Hermitian constant", || {
        for theta in [
            0.0,
            std::f64::consts::FRAC_PI_4,
            std::f64::consts::FRAC_PI_2,
        ] {
            let t = extremal_tuple_with_theta(MatrixClass::Hermitian, 2, 2, 1.0, theta)
                .map_err(|e| e.to_string())?;
            let ratio = evaluate(&t).ratio;
            check((ratio - 1.0).abs() <= 1e-12, || {
                format!("theta {theta}: ratio {ratio}")
            })?;
        }
        let cfg = SearchConfig::new(MatrixClass::Hermitian, 2, 3, 2024);
        let report = maximize_ratio(&cfg).map_err(|e| e.to_string())?;
        check((report.best_ratio - 1.0).abs() <= 1e-3, || {
            format!("search best {}", report.best_ratio)
        })
    });
}

#[test]
fn criterion_04_skew_symmetric_constants() {
    criterion(4, "skew-symmetric constants", || {
        let cases = [
            (3usize, 3usize, 1.0 / 3.0),
            (3, 4, 2.0 / 3.0),
            (2, 3, 1.0 / 4.0),
            (2, 4, 1.0 / 2.0),
        ];
        for (m, n, target) in cases {
            let cfg = SearchConfig::new(MatrixClass::SkewSymmetric, m, n, 2024);
            let report = maximize_ratio(&cfg).map_err(|e| e.to_string())?;
            check((report.best_ratio - target).abs() <= 2e-3, || {
                format!("m={m} n={n}: best {} vs {target}", report.best_ratio)
            })?;
        }
        Ok(())
    });
}

#[test]
fn criterion_05_symmetric_constant() {
    criterion(5, "symmetric constant", || {
        let cfg = SearchConfig::new(MatrixClass::Symmetric, 3, 3, 2024);
        let report = maximize_ratio(&cfg).map_err(|e| e.to_string())?;
        check((report.best_ratio - 1.0).abs() <= 1e-3, || {
            format!("search best {}", report.best_ratio)
        })?;
        let mut rng = RandomStream::new(4242);
        for trial in 0..10_000usize {
            let m = 2 + trial % 3;
            let n = 2 + (trial / 3) % 3;
            let t = random_tuple(MatrixClass::Symmetric, m, n, &mut rng);
            let ratio = evaluate(&t).ratio;
            check(ratio <= 1.0 + 1e-9, || {
                format!("trial {trial}: ratio {ratio} > 1")
            })?;
        }
        Ok(())
    });
}

#[test]
fn criterion_06_comm_norm_table() {
    criterion(6, "closed-form commutator table", || {
        let start = Instant::now();
        let mut pairs_checked = 0usize;
        for n in [2usize, 3, 4, 5] {
            let basis = hermitian_basis(n);
            for alpha in 1..=n * n {
                for beta in 1..=n * n {
                    let a = IndexPair::from_flat(alpha, n).map_err(|e| e.to_string())?;
                    let b = IndexPair::from_flat(beta, n).map_err(|e| e.to_string())?;
                    let direct = basis
                        .element(a.slot(n))
                        .commutator(basis.element(b.slot(n)))
                        .map_err(|e| e.to_string())?
                        .norm_sq();
                    let table = pair_comm_norm_sq(a, b, n).map_err(|e| e.to_string())?;
                    check((direct - table).abs() <= 1e-12, || {
                        format!(
                            "n={n} ({},{})x({},{}): {direct} vs {table}",
                            a.i, a.j, b.i, b.j
                        )
                    })?;
                    pairs_checked += 1;
                }
            }
        }
        check(pairs_checked == 16 + 81 + 256 + 625, || {
            format!("checked {pairs_checked} pairs")
        })?;
        check(start.elapsed().as_secs_f64() < 10.0, || {
            format!("took {:?}", start.elapsed())
        })
    });
}

#[test]
fn criterion_07_row_sum_identity() {
    criterion(7, "commutator row-sum identity", || {
        for n in [2usize, 3, 4] {
            let basis = hermitian_basis(n);
            let count = n * n;
            for alpha in 1..=count {
                for beta in 1..=count {
                    let a = IndexPair::from_flat(alpha, n).map_err(|e| e.to_string())?;
                    let b = IndexPair::from_flat(beta, n).map_err(|e| e.to_string())?;
                    let mut direct = 0.0;
                    for gamma in 0..count {
                        let ca = basis
                            .element(a.slot(n))
                            .commutator(basis.element(gamma))
                            .map_err(|e| e.to_string())?;
                        let cb = basis
                            .element(b.slot(n))
                            .commutator(basis.element(gamma))
                            .map_err(|e| e.to_string())?;
                        direct += ca.inner(&cb).map_err(|e| e.to_string())?;
                    }
                    let closed = comm_gram_row_sum(a, b, n).map_err(|e| e.to_string())?;
                    check((direct - closed).abs() <= 1e-10, || {
                        format!("n={n} α={alpha} β={beta}: {direct} vs {closed}")
                    })?;
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_08_exterior_square_properties() {
    criterion(8, "exterior-square properties", || {
        for d in 2..=6usize {
            let phi = exterior_square(&RealMatrix::identity(d));
            check(phi == RealMatrix::identity(d * (d - 1) / 2), || {
                format!("φ(I_{d}) is not the identity")
            })?;
        }
        let mut rng = RandomStream::new(808);
        for trial in 0..1000usize {
            let m = 2 + rng.below(5);
            let k = 2 + rng.below(5);
            let n = 2 + rng.below(5);
            let a = RealMatrix::from_fn(m, k, |_, _| rng.gaussian());
            let b = RealMatrix::from_fn(k, n, |_, _| rng.gaussian());
            let lhs = exterior_square(&a.matmul(&b).map_err(|e| e.to_string())?);
            let rhs = exterior_square(&a)
                .matmul(&exterior_square(&b))
                .map_err(|e| e.to_string())?;
            let scale = 1.0 + lhs.norm_sq().sqrt();
            check(lhs.max_abs_diff(&rhs) <= 1e-10 * scale, || {
                format!("trial {trial} ({m}x{k}x{n}): multiplicativity broke")
            })?;
            check(
                exterior_square(&a.transpose()) == exterior_square(&a).transpose(),
                || format!("trial {trial}: transpose compatibility broke"),
            )?;
        }
        Ok(())
    });
}

#[test]
fn criterion_09_transform_chain() {
    criterion(9, "transform chain", || {
        let mut rng = RandomStream::new(909);
        for trial in 0..1000usize {
            let m = 2 + trial % 3;
            let n = 2 + (trial / 3) % 3;
            let t = random_tuple(MatrixClass::Hermitian, m, n, &mut rng);
            let report = verify_transform_chain(&t).map_err(|e| e.to_string())?;
            check(report.max_rel_deviation <= 1e-8, || {
                format!(
                    "trial {trial} m={m} n={n}: deviation {}",
                    report.max_rel_deviation
                )
            })?;
            check(report.min_eigenvalue() >= -1e-10, || {
                format!(
                    "trial {trial}: negative eigenvalue {}",
                    report.min_eigenvalue()
                )
            })?;
        }
        Ok(())
    });
}

#[test]
fn criterion_10_lemma_trials() {
    criterion(10, "lemma falsification trials", || {
        for n in [2usize, 3, 4] {
            let report = run_trials(n, 100_000, 1000 + n as u64).map_err(|e| e.to_string())?;
            check(report.total_violations() == 0, || {
                format!("n={n}: {} violations", report.total_violations())
            })?;
            check(
                report.gap_excess_max <= lemmas::GAP_EXCESS_BOUND + 1e-12,
                || format!("n={n}: gap excess {}", report.gap_excess_max),
            )?;
            check(report.energy_form_deviation <= 1e-9, || {
                format!(
                    "n={n}: closed form deviates {}",
                    report.energy_form_deviation
                )
            })?;
        }
        // the equality witness reaches the bound exactly
        let mut witness = vec![0.0; 4];
        witness[0] = 1.0;
        witness[3] = -1.0;
        let spectrum = SpectrumVector::new(witness).map_err(|e| e.to_string())?;
        let value = lemmas::gap_excess_sum(&spectrum);
        check((value - 2.0 / 3.0).abs() <= 1e-12, || {
            format!("witness excess {value}")
        })
    });
}

#[test]
fn criterion_11_gap_form_nonpositivity() {
    criterion(11, "gap-form nonpositivity probe", || {
        let mut rng = RandomStream::new(1111);
        for n in [2usize, 3] {
            for probe in 0..50usize {
                let q = BasisRotation::special(sample_orthogonal(n * n, &mut rng))
                    .map_err(|e| e.to_string())?;
                let mut cfg = SimplexSearchConfig::new(probe as u64);
                cfg.random_starts = 8;
                cfg.max_iters = 300;
                let report = maximize_gap_form(&q, n, &cfg).map_err(|e| e.to_string())?;
                check(report.best_value <= 1e-8, || {
                    format!("n={n} probe {probe}: positive value {}", report.best_value)
                })?;
            }
        }
        let mut cfg = SimplexSearchConfig::new(7);
        cfg.epsilon = 0.01;
        for n in [2usize, 3] {
            let report =
                maximize_gap_form_over(&GapForm::identity(n), &cfg).map_err(|e| e.to_string())?;
            check(report.best_value <= -1.0 / 3.0 + 1e-6, || {
                format!(
                    "identity rotation n={n}: interior max {}",
                    report.best_value
                )
            })?;
        }
        Ok(())
    });
}

#[test]
fn criterion_12_equality_diagnostics() {
    criterion(12, "equality diagnostics", || {
        let c = known_constant(MatrixClass::Hermitian, 4, 3)
            .expect("registry row")
            .constant;
        let extremal =
            extremal_tuple(MatrixClass::Hermitian, 4, 3, 1.0).map_err(|e| e.to_string())?;
        let mut rng = RandomStream::new(1212);
        for probe in 0..100usize {
            let g = KElement::new(sample_unitary(3, &mut rng), sample_orthogonal(4, &mut rng))
                .map_err(|e| e.to_string())?;
            let moved = g.apply(&extremal).map_err(|e| e.to_string())?;
            let d = equality_diagnostics(&moved, c).map_err(|e| e.to_string())?;
            check(d.canonical, || {
                format!("probe {probe}: flag lost under the action")
            })?;
        }
        for trial in 0..1000usize {
            let m = 2 + trial % 3;
            let n = 2 + (trial / 3) % 2;
            let t = random_tuple(MatrixClass::Hermitian, m, n, &mut rng);
            let c = known_constant(MatrixClass::Hermitian, m, n)
                .expect("registry row")
                .constant;
            let d = equality_diagnostics(&t, c).map_err(|e| e.to_string())?;
            check(!d.canonical, || {
                format!("trial {trial}: random tuple flagged canonical")
            })?;
        }
        Ok(())
    });
}

#[test]
fn criterion_13_bw_inequality() {
    criterion(13, "Böttcher–Wenzel residuals", || {
        let mut rng = RandomStream::new(1313);
        for trial in 0..10_000usize {
            let n = 2 + trial % 5;
            let x = sample_class(MatrixClass::GeneralComplex, n, &mut rng);
            let y = sample_class(MatrixClass::GeneralComplex, n, &mut rng);
            let res = bw_residual(&x, &y).map_err(|e| e.to_string())?;
            check(res >= -1e-10 * (1.0 + x.norm_sq() * y.norm_sq()), || {
                format!("trial {trial}: residual {res}")
            })?;
        }
        let [h1, h2, _] = pauli_triple(1.0);
        let res = bw_residual(&h1, &h2).map_err(|e| e.to_string())?;
        check(res.abs() <= 1e-12, || format!("Pauli pair residual {res}"))
    });
}

#[test]
fn criterion_14_conjecture_probe() {
    criterion(14, "conjecture probe", || {
        let cfg = SearchConfig::new(MatrixClass::GeneralComplex, 3, 2, 2024);
        let report = explore_conjecture(&cfg).map_err(|e| e.to_string())?;
        let target = 4.0 / 3.0;
        check(report.search.best_ratio >= target - 1e-3, || {
            format!("lower end missed: {}", report.search.best_ratio)
        })?;
        check(report.search.best_ratio <= target + 1e-6, || {
            format!(
                "exceedance: {} (counterexample candidate, margin {})",
                report.search.best_ratio, report.margin
            )
        })?;
        check(!report.exceeded, || "exceeded flag set".to_string())?;
        // the flag itself must fire exactly on the 1e−6 threshold contract
        check(report.margin <= 1e-6, || {
            format!("margin {}", report.margin)
        })
    });
}

/// Embedding sanity that backs criterion 14: a Hermitian extremal read as a
/// general complex tuple keeps its ratio.
#[test]
fn hermitian_embedding_keeps_ratio() {
    let t = extremal_tuple(MatrixClass::Hermitian, 3, 2, 1.0).unwrap();
    let embedded = t.retag(MatrixClass::GeneralComplex).unwrap();
    let ratio = evaluate(&embedded).ratio;
    assert!(
        ratio >= 4.0 / 3.0 - 1e-9,
        "embedded extremal lost its ratio: {ratio}"
    );
}

/// Class-wide soundness sweep that backs criteria 2–5: at every proved
/// registry row with m, n ≤ 4, 10⁴ random tuples never beat the constant.
#[test]
fn proved_constants_are_never_exceeded() {
    use rayon::prelude::*;
    let base = RandomStream::new(5150);
    let mut cases = Vec::new();
    for class in MatrixClass::ALL {
        for m in [2usize, 3, 4] {
            for n in [2usize, 3, 4] {
                let row = known_constant(class, m, n).expect("registry row");
                if row.status == ddvv_core::ineq::ConstantStatus::Proved {
                    cases.push((class, m, n, row.constant.as_f64()));
                }
            }
        }
    }
    let worst: Vec<(usize, f64)> = cases
        .par_iter()
        .enumerate()
        .map(|(idx, &(class, m, n, _))| {
            let mut rng = base.split(idx as u64 + 1);
            let mut worst = 0.0f64;
            for _ in 0..10_000 {
                let t = random_tuple(class, m, n, &mut rng);
                worst = worst.max(evaluate(&t).ratio);
            }
            (idx, worst)
        })
        .collect();
    for (idx, observed) in worst {
        let (class, m, n, c) = cases[idx];
        assert!(
            observed <= c + 1e-9,
            "{class:?} m={m} n={n}: ratio {observed} beats {c}"
        );
    }
}
