use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("recurrence data covers {available} coefficients, {required} required")]
    InsufficientRecurrence { required: usize, available: usize },

    #[error("tridiagonal eigensolver did not converge within {iterations} iterations")]
    EigenNonConvergence { iterations: usize },

    #[error("point ({0}, {1}) lies outside the domain")]
    OutsideDomain(f64, f64),

    #[error("expected {expected} zeros of the quasi-orthogonal polynomial, found {found}")]
    ZeroCount { expected: usize, found: usize },

    #[error("node count mismatch: expected {expected}, constructed {found}")]
    NodeCount { expected: usize, found: usize },

    #[error("moment system residual {residual:e} exceeds tolerance {tolerance:e}")]
    MomentResidual { residual: f64, tolerance: f64 },

    #[error("nonpositive cubature weight {weight:e} at node ({x1}, {x2})")]
    NonpositiveWeight { weight: f64, x1: f64, x2: f64 },

    #[error("oracle did not converge after {levels} levels (last disagreement {estimate:e})")]
    OracleNonConvergence { levels: usize, estimate: f64 },

    #[error("no reference moments available: {0}")]
    Unsupported(String),
}
