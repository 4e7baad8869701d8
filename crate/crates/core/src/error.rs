use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong inside the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("invalid variable list: {0}")]
    BadVariables(String),

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("exponent overflow while raising to the power {0}")]
    ExponentOverflow(u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("the unit ideal is not allowed here")]
    UnitIdeal,

    #[error("colon ideal is not zero-dimensional, colength is infinite")]
    InfiniteColength,

    #[error("bad test element: {0}")]
    BadTestElement(String),

    #[error("no usable test element found at stage {stage}")]
    TestElementSelection { stage: usize },

    #[error("no stabilization after {levels} levels (budget max_e = {max_e})")]
    BudgetExceeded { levels: usize, max_e: usize },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }
}
