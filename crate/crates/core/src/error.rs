use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The caller handed in something outside the operation's domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An exhaustive enumeration would visit more subsets than allowed.
    #[error("enumeration would visit {required} subsets, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    /// A mathematical invariant that must hold was observed to fail.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// Two independent computations of the same quantity disagree.
    #[error("cross-check mismatch: {0}")]
    Mismatch(String),

    #[error("integer overflow: {0}")]
    Overflow(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub(crate) fn overflow(msg: impl Into<String>) -> Self {
        Error::Overflow(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
