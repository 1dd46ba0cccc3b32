use thiserror::Error;

/// Errors raised by the combinatorial engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("period mismatch: {left} vs {right}")]
    PeriodMismatch { left: usize, right: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid tabloid: {0}")]
    InvalidTabloid(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("budget exceeded while {what}: need {needed}, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0} is not in the two-sided cell {1}")]
    NotInCell(String, String),

    /// An internal cross-check between two independent computations failed.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("no preimage found within search bound {bound}: {detail}")]
    SearchBound { bound: i64, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
