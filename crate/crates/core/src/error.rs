use thiserror::Error;

/// Errors raised by table construction, parsing and the search routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order {0} is not supported (must be between 1 and {max})", max = crate::table::MAX_ORDER)]
    Order(usize),
    #[error("element {value} is out of range for order {n}")]
    Range { value: u64, n: usize },
    #[error("row {row} has {len} entries, expected {n}")]
    Shape { row: usize, len: usize, n: usize },
    #[error("order {n} has no 64-bit operation codes (codes exist for n <= {max})", max = crate::table::MAX_CODE_ORDER)]
    Overflow { n: usize },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("operands have different orders ({left} and {right})")]
    OrderMismatch { left: usize, right: usize },
    #[error("search budget of {budget} nodes exhausted")]
    Budget { budget: u64 },
    #[error("method {method} cannot be used here: {reason}")]
    Method { method: &'static str, reason: String },
    #[error("operation is not a monoid")]
    NotMonoid,
    #[error("operation is not a group")]
    NotGroup,
    #[error("operation has no two-sided identity")]
    NoIdentity,
    #[error("operation is not compatible with the base operation")]
    NotInDual,
    #[error("invalid labels: {0}")]
    Labels(String),
    #[error("invalid permutation: {0}")]
    Permutation(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
