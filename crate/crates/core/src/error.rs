use thiserror::Error;

/// Errors raised by the arithmetic and decision layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the zero polynomial cannot be factored")]
    ZeroPolynomial,
    #[error("size bound exceeded: {what} is {actual}, limit {limit}")]
    SizeBound {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("undecided at precision {precision} (cap {cap}): {context}")]
    PrecisionExhausted {
        precision: u32,
        cap: u32,
        context: String,
    },
    #[error("not metacyclic")]
    NotMetacyclic,
    #[error("brauer class invariants sum to {residue} mod 1, expected 0")]
    NonZeroSum { residue: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
