//! Executable verifiers for the spectral bounds behind the Hermitian sharp
//! constant. Each bound is checked two ways where a closed form exists, and
//! a randomized falsification harness drives them at scale:
//!
//! - the set I = {(i,j) : λ_i − λ_j > 2/√3} of a sorted unit spectrum is
//!   always a row or a column slice ({1}×I_1 or I_2×{n});
//! - Σ_{(i,j)∈I} [(λ_i−λ_j)² − 4/3] ≤ 2/3, with equality exactly for
//!   λ = (1/√2, 0, …, 0, −1/√2);
//! - Σ_{β∈J} (‖[Q̌_α,Q̌_β]‖² − 4/3) ≤ 4/3 for every subset J and rotation Q;
//! - Σ_{β} ‖[Q̌_α,Q̌_β]‖² ≤ 2n, with the closed form
//!   2n Σ_γ q²_{γα} − 2 (Σ_i q̌ᵅ_ii)².

use rayon::prelude::*;
use serde::Serialize;

use crate::basis::{hermitian_basis, rotate_basis, BasisRotation, BasisSet, IndexPair};
use crate::matcore::{sample_orthogonal, RandomStream};
use crate::{Error, Result};

/// Spectral gap threshold 2/√3 ≈ 1.1547.
pub fn gap_threshold() -> f64 {
    2.0 / 3.0f64.sqrt()
}

/// Upper bound of the gap excess sum.
pub const GAP_EXCESS_BOUND: f64 = 2.0 / 3.0;

/// Sorted unit spectrum: values descending, Σ λ_i² = 1. The constructor
/// sorts and normalizes its input instead of rejecting unsorted data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumVector {
    values: Vec<f64>,
}

impl SpectrumVector {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidConfig("spectrum must be nonempty".into()));
        }
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidConfig(
                "spectrum has non-finite entries".into(),
            ));
        }
        let norm = values.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidConfig("spectrum must be nonzero".into()));
        }
        for x in &mut values {
            *x /= norm;
        }
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// The threshold sets of a spectrum (all indices 1-based):
/// I_1 = {j : λ_1 − λ_j > 2/√3}, I_2 = {i : λ_i − λ_n > 2/√3},
/// I = {(i,j) : λ_i − λ_j > 2/√3}, and n_0 = |I|.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapIndexSets {
    pub i1: Vec<usize>,
    pub i2: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
    pub count: usize,
}

pub fn gap_index_sets(spectrum: &SpectrumVector) -> GapIndexSets {
    let v = spectrum.values();
    let n = v.len();
    let thr = gap_threshold();
    let i1: Vec<usize> = (1..=n).filter(|&j| v[0] - v[j - 1] > thr).collect();
    let i2: Vec<usize> = (1..=n).filter(|&i| v[i - 1] - v[n - 1] > thr).collect();
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if v[i - 1] - v[j - 1] > thr {
                pairs.push((i, j));
            }
        }
    }
    let count = pairs.len();
    // ({1} × I_1) ∪ (I_2 × {n}) is always contained in I
    debug_assert!(i1.iter().all(|&j| pairs.contains(&(1, j))));
    debug_assert!(i2.iter().all(|&i| pairs.contains(&(i, n))));
    GapIndexSets {
        i1,
        i2,
        pairs,
        count,
    }
}

/// Whether I equals {1}×I_1 or I_2×{n}. Always true for a valid spectrum.
pub fn gap_set_dichotomy_holds(spectrum: &SpectrumVector) -> bool {
    let sets = gap_index_sets(spectrum);
    let n = spectrum.len();
    let row: Vec<(usize, usize)> = sets.i1.iter().map(|&j| (1, j)).collect();
    let col: Vec<(usize, usize)> = sets.i2.iter().map(|&i| (i, n)).collect();
    sets.pairs == row || sets.pairs == col
}

/// Σ_{(i,j)∈I} [(λ_i − λ_j)² − 4/3]; bounded by 2/3.
pub fn gap_excess_sum(spectrum: &SpectrumVector) -> f64 {
    let v = spectrum.values();
    gap_index_sets(spectrum)
        .pairs
        .iter()
        .map(|&(i, j)| {
            let d = v[i - 1] - v[j - 1];
            d * d - 4.0 / 3.0
        })
        .sum()
}

/// Equality holds only for λ = (1/√2, 0, …, 0, −1/√2).
pub fn attains_gap_excess_bound(value: f64) -> bool {
    (value - GAP_EXCESS_BOUND).abs() <= 1e-10
}

/// Subset of flat basis indices (1-based, within 1..=N).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexSubset {
    members: Vec<usize>,
}

impl IndexSubset {
    pub fn new(members: impl IntoIterator<Item = usize>, ambient: usize) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&m| m == 0 || m > ambient) {
            return Err(Error::IndexOutOfRange {
                i: bad,
                j: bad,
                n: ambient,
            });
        }
        Ok(Self { members })
    }

    pub fn empty() -> Self {
        Self {
            members: Vec::new(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn rotated_for(q: &BasisRotation, n: usize) -> Result<BasisSet> {
    let count = n * n;
    if q.side() != count {
        return Err(Error::SizeMismatch {
            context: "rotated basis",
            expected: count,
            got: q.side(),
        });
    }
    rotate_basis(&hermitian_basis(n), q)
}

fn comm_norms_against(rotated: &BasisSet, alpha_slot: usize) -> Vec<f64> {
    let reference = rotated.element(alpha_slot);
    rotated
        .elements()
        .iter()
        .map(|e| reference.commutator(e).expect("uniform side").norm_sq())
        .collect()
}

/// Σ_{β∈J} (‖[Q̌_α, Q̌_β]‖² − 4/3) for the rotated basis; `alpha` is a
/// 1-based flat index. Bounded by 4/3 for any subset.
pub fn subset_excess_sum(
    q: &BasisRotation,
    alpha: usize,
    subset: &IndexSubset,
    n: usize,
) -> Result<f64> {
    let rotated = rotated_for(q, n)?;
    let count = n * n;
    if alpha == 0 || alpha > count {
        return Err(Error::IndexOutOfRange {
            i: alpha,
            j: alpha,
            n: count,
        });
    }
    if let Some(&bad) = subset.members().iter().find(|&&b| b > count) {
        return Err(Error::IndexOutOfRange {
            i: bad,
            j: bad,
            n: count,
        });
    }
    let norms = comm_norms_against(&rotated, alpha - 1);
    Ok(subset
        .members()
        .iter()
        .map(|&beta| norms[beta - 1] - 4.0 / 3.0)
        .sum())
}

/// The full commutator energy of one rotated basis element against the
/// whole basis, computed two independent ways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommEnergy {
    /// Direct sum Σ_β ‖[Q̌_α, Q̌_β]‖².
    pub direct: f64,
    /// Closed form 2n Σ_γ q²_{γα} − 2 (Σ_i q̌ᵅ_ii)².
    pub closed_form: f64,
}

/// Σ_β ‖[Q̌_α, Q̌_β]‖² with its closed form; bounded by 2n.
pub fn basis_comm_energy(q: &BasisRotation, alpha: usize, n: usize) -> Result<CommEnergy> {
    let rotated = rotated_for(q, n)?;
    let count = n * n;
    if alpha == 0 || alpha > count {
        return Err(Error::IndexOutOfRange {
            i: alpha,
            j: alpha,
            n: count,
        });
    }
    let norms = comm_norms_against(&rotated, alpha - 1);
    let direct = norms.iter().sum();
    let col_norm_sq: f64 = (0..count).map(|g| q.entry(g, alpha - 1).powi(2)).sum();
    // diagonal entries of Q̌_α are the coefficients on the E_ii generators
    let diag_sum: f64 = (1..=n)
        .map(|i| q.entry(IndexPair { i, j: i }.slot(n), alpha - 1))
        .sum();
    let closed_form = 2.0 * n as f64 * col_norm_sq - 2.0 * diag_sum * diag_sum;
    Ok(CommEnergy {
        direct,
        closed_form,
    })
}

/// Aggregate of a randomized falsification run at one side length.
#[derive(Debug, Clone, Serialize)]
pub struct TrialReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Failures of the set dichotomy (expected 0).
    pub dichotomy_violations: usize,
    /// Max gap excess sum observed and count above 2/3 + tolerance.
    pub gap_excess_max: f64,
    pub gap_excess_violations: usize,
    /// Max subset excess observed and count above 4/3 + tolerance.
    pub subset_excess_max: f64,
    pub subset_excess_violations: usize,
    /// Max commutator energy and count above 2n + tolerance.
    pub comm_energy_max: f64,
    pub comm_energy_violations: usize,
    /// Worst disagreement between direct and closed-form energy.
    pub energy_form_deviation: f64,
}

impl TrialReport {
    pub fn total_violations(&self) -> usize {
        self.dichotomy_violations
            + self.gap_excess_violations
            + self.subset_excess_violations
            + self.comm_energy_violations
    }
}

#[derive(Clone, Copy)]
struct TrialSample {
    dichotomy_ok: bool,
    gap_excess: f64,
    subset_excess: f64,
    comm_energy: f64,
    form_deviation: f64,
}

/// Runs `trials` independent randomized checks of all four bounds at side
/// length `n`. Deterministic for a given seed, regardless of thread count.
pub fn run_trials(n: usize, trials: usize, seed: u64) -> Result<TrialReport> {
    if n == 0 || trials == 0 {
        return Err(Error::InvalidConfig("trials and n must be positive".into()));
    }
    let base = RandomStream::new(seed);
    let basis = hermitian_basis(n);
    let count = n * n;
    let samples: Vec<TrialSample> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = base.split(t as u64 + 1);
            let spectrum =
                SpectrumVector::new((0..n).map(|_| rng.gaussian()).collect()).expect("nonzero");
            let dichotomy_ok = gap_set_dichotomy_holds(&spectrum);
            let gap_excess = gap_excess_sum(&spectrum);

            let q = sample_orthogonal(count, &mut rng);
            let rotation = BasisRotation::new(q).expect("sampled orthogonal");
            let rotated = rotate_basis(&basis, &rotation).expect("matching sides");
            let alpha_slot = rng.below(count);
            let norms = comm_norms_against(&rotated, alpha_slot);

            // worst-case subset: every positive summand
            let positive: f64 = norms
                .iter()
                .map(|&v| v - 4.0 / 3.0)
                .filter(|&e| e > 0.0)
                .sum();
            // plus one random subset to exercise the general statement
            let random_subset: f64 = norms
                .iter()
                .map(|&v| v - 4.0 / 3.0)
                .filter(|_| rng.flip())
                .sum();
            let subset_excess = positive.max(random_subset);

            let direct: f64 = norms.iter().sum();
            let col_norm_sq: f64 = (0..count)
                .map(|g| rotation.entry(g, alpha_slot).powi(2))
                .sum();
            let diag_sum: f64 = (1..=n)
                .map(|i| rotation.entry(IndexPair { i, j: i }.slot(n), alpha_slot))
                .sum();
            let closed = 2.0 * n as f64 * col_norm_sq - 2.0 * diag_sum * diag_sum;

            TrialSample {
                dichotomy_ok,
                gap_excess,
                subset_excess,
                comm_energy: direct,
                form_deviation: (direct - closed).abs(),
            }
        })
        .collect();

    let mut report = TrialReport {
        n,
        trials,
        seed,
        dichotomy_violations: 0,
        gap_excess_max: f64::NEG_INFINITY,
        gap_excess_violations: 0,
        subset_excess_max: f64::NEG_INFINITY,
        subset_excess_violations: 0,
        comm_energy_max: f64::NEG_INFINITY,
        comm_energy_violations: 0,
        energy_form_deviation: 0.0,
    };
    let energy_bound = 2.0 * n as f64;
    for s in &samples {
        if !s.dichotomy_ok {
            report.dichotomy_violations += 1;
        }
        report.gap_excess_max = report.gap_excess_max.max(s.gap_excess);
        if s.gap_excess > GAP_EXCESS_BOUND + 1e-12 {
            report.gap_excess_violations += 1;
        }
        report.subset_excess_max = report.subset_excess_max.max(s.subset_excess);
        if s.subset_excess > 4.0 / 3.0 + 1e-9 {
            report.subset_excess_violations += 1;
        }
        report.comm_energy_max = report.comm_energy_max.max(s.comm_energy);
        if s.comm_energy > energy_bound + 1e-9 {
            report.comm_energy_violations += 1;
        }
        report.energy_form_deviation = report.energy_form_deviation.max(s.form_deviation);
    }
    Ok(report)
}
