use crate::matcore::MatrixClass;

/// Errors shared by all modules of the toolkit.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("size mismatch in {context}: expected {expected}, got {got}")]
    SizeMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("matrix is not in class {class:?} (residual {residual:.3e} > tol {tol:.3e})")]
    NotInClass {
        class: MatrixClass,
        residual: f64,
        tol: f64,
    },
    #[error("class mismatch: expected {expected:?}, got {got:?}")]
    ClassMismatch {
        expected: MatrixClass,
        got: MatrixClass,
    },
    #[error("matrix is not {kind} (residual {residual:.3e} > tol {tol:.3e})")]
    NotOrthonormal {
        kind: &'static str,
        residual: f64,
        tol: f64,
    },
    #[error("group element is invalid for class {class:?}: {reason}")]
    InvalidAction {
        class: MatrixClass,
        reason: &'static str,
    },
    #[error("index ({i},{j}) out of range for side {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("symmetric eigensolver did not converge (side {side})")]
    EigenFailure { side: usize },
    #[error("analytic gradient disagrees with finite differences (rel err {rel_err:.3e})")]
    GradientCheckFailed { rel_err: f64 },
}
