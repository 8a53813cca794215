use serde::Serialize;

use crate::matcore::MatrixClass;

/// Exact rational constant (den > 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    pub const fn new(num: i64, den: i64) -> Self {
        assert!(den > 0);
        Self { num, den }
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstantStatus {
    Proved,
    Conjectured,
}

/// Condition on the tuple length m selecting a registry row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MCondition {
    Exactly(usize),
    AtLeast(usize),
}

/// Condition on the side length n selecting a registry row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NCondition {
    Exactly(usize),
    AtLeast(usize),
}

/// One row of the best-constant registry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KnownConstant {
    pub class: MatrixClass,
    pub m_condition: MCondition,
    pub n_condition: NCondition,
    pub constant: Rational,
    pub status: ConstantStatus,
}

const fn row(
    class: MatrixClass,
    m_condition: MCondition,
    n_condition: NCondition,
    num: i64,
    den: i64,
    status: ConstantStatus,
) -> KnownConstant {
    KnownConstant {
        class,
        m_condition,
        n_condition,
        constant: Rational::new(num, den),
        status,
    }
}

/// Best constant for (class, m, n), when settled.
///
/// Real symmetric tuples have c = 1 for every m and n. Skew-symmetric ones
/// have c = 1/3 (n = 3) and 2/3 (n ≥ 4) for m ≥ 3, halved again to 1/4 and
/// 1/2 for m = 2; the n = 2 class is one-dimensional, so the left side
/// vanishes identically and c = 0. Hermitian and skew-Hermitian tuples have
/// c = 4/3 for m ≥ 3 and c = 1 for m = 2. For unstructured matrices the
/// m = 2 case follows from the Böttcher–Wenzel bound (c = 1), while m ≥ 3 is
/// the open conjecture that 4/3 still works.
///
/// Returns `None` when m < 2 or n < 2 (every commutator sum is trivially
/// bounded there but the table does not apply).
pub fn known_constant(class: MatrixClass, m: usize, n: usize) -> Option<KnownConstant> {
    use ConstantStatus::{Conjectured, Proved};
    use MatrixClass as C;
    if m < 2 || n < 2 {
        return None;
    }
    let pair = m == 2;
    let entry = match class {
        C::Symmetric => row(
            class,
            MCondition::AtLeast(2),
            NCondition::AtLeast(2),
            1,
            1,
            Proved,
        ),
        C::SkewSymmetric => {
            let m_cond = if pair {
                MCondition::Exactly(2)
            } else {
                MCondition::AtLeast(3)
            };
            match (pair, n) {
                (_, 2) => row(
                    class,
                    MCondition::AtLeast(2),
                    NCondition::Exactly(2),
                    0,
                    1,
                    Proved,
                ),
                (false, 3) => row(class, m_cond, NCondition::Exactly(3), 1, 3, Proved),
                (false, _) => row(class, m_cond, NCondition::AtLeast(4), 2, 3, Proved),
                (true, 3) => row(class, m_cond, NCondition::Exactly(3), 1, 4, Proved),
                (true, _) => row(class, m_cond, NCondition::AtLeast(4), 1, 2, Proved),
            }
        }
        C::Hermitian | C::SkewHermitian => {
            if pair {
                row(
                    class,
                    MCondition::Exactly(2),
                    NCondition::AtLeast(2),
                    1,
                    1,
                    Proved,
                )
            } else {
                row(
                    class,
                    MCondition::AtLeast(3),
                    NCondition::AtLeast(2),
                    4,
                    3,
                    Proved,
                )
            }
        }
        C::GeneralComplex | C::GeneralReal => {
            if pair {
                row(
                    class,
                    MCondition::Exactly(2),
                    NCondition::AtLeast(2),
                    1,
                    1,
                    Proved,
                )
            } else {
                row(
                    class,
                    MCondition::AtLeast(3),
                    NCondition::AtLeast(2),
                    4,
                    3,
                    Conjectured,
                )
            }
        }
    };
    Some(entry)
}
