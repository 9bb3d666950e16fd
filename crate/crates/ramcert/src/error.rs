use thiserror::Error;

/// Errors produced by builders, enumeration, and certification.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A precondition on the inputs was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A map or cell does not have the arity required by the complexes it
    /// is tested against.
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    /// Enumeration hit its resource budget. Carries the cell counts found
    /// so far per dimension so callers can report partial statistics; the
    /// partial result itself is discarded, never returned as an answer.
    #[error("budget exhausted after {cells_found} cells (limit {limit}), reached dimension {dim_reached}")]
    BudgetExhausted {
        limit: u64,
        cells_found: u64,
        dim_reached: usize,
        cells_per_dim: Vec<usize>,
    },

    /// A brute-force routine refuses inputs beyond its configured cap
    /// rather than guessing.
    #[error("{what} exceeds cap: requested {requested}, cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    /// A cohomology query needs more of the skeleton than was enumerated.
    #[error("skeleton depth {available} is insufficient: degree {degree} needs cells up to dimension {required}")]
    InsufficientDepth {
        degree: i64,
        required: usize,
        available: usize,
    },

    /// An internal structural invariant failed; indicates a bug, not bad input.
    #[error("structural failure: {0}")]
    Structural(String),

    /// Malformed JSON input.
    #[error("parse error in {path} at line {line}, column {column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
