use thiserror::Error;

use crate::discretization::SearchFailure;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("inconsistent dimension: expected {expected}, found {found}")]
    InconsistentDimension { expected: usize, found: usize },

    #[error("empty set has no corners")]
    EmptyCorners,

    #[error("budget exceeded: more than {budget} search nodes")]
    BudgetExceeded { budget: u64 },

    #[error("not a partition: {0}")]
    NotAPartition(String),

    #[error("not a lower set")]
    NotLowerSet,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid corner selector: {0}")]
    InvalidSelector(String),

    #[error(
        "eigen-solver did not converge on {dim}x{dim} Gram matrix \
         (frobenius norm {frobenius:.6e}, diagonal range [{diag_min:.6e}, {diag_max:.6e}])"
    )]
    EigenFailure {
        dim: usize,
        frobenius: f64,
        diag_min: f64,
        diag_max: f64,
    },

    #[error("no m <= {} met the targets", .0.m_max)]
    SearchExhausted(Box<SearchFailure>),
}
