use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(
        "syntax error at token {position} ({token:?}): expected `s<k>`, `s<k>^-1`, `k` or `-k`"
    )]
    Syntax { token: String, position: usize },

    #[error("generator out of range: token {token:?} at position {position} needs an index in [1, {max}] for {strands} strands")]
    GeneratorOutOfRange {
        token: String,
        position: usize,
        strands: usize,
        max: usize,
    },

    #[error("invalid strand count {0}: at least 2 strands are required")]
    InvalidStrands(usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid basis state {0:?}")]
    InvalidBasisState(String),

    #[error("shape mismatch: expected dimension {expected}, found {found}")]
    Shape { expected: usize, found: usize },

    #[error("resource limit: {crossings} crossings exceeds the state-sum limit of {limit}")]
    ResourceLimit { crossings: usize, limit: usize },

    #[error("insufficient data: {samples} samples given, at least {needed} required")]
    InsufficientData { samples: usize, needed: usize },

    #[error("class-size shortfall: {reps} representatives requested per class, class sizes are {sizes:?}")]
    Shortfall { reps: usize, sizes: Vec<usize> },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
