use thiserror::Error;

/// Errors raised while building or checking modular data.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid rank parameter k = {k}: su(k) needs k >= {min}")]
    InvalidRank { k: usize, min: usize },

    #[error("invalid level k = {k}: need k >= {min}")]
    InvalidLevel { k: usize, min: usize },

    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },

    #[error("Weyl group of su({k}) exceeds the cap k <= {cap}")]
    ResourceLimit { k: usize, cap: usize },

    #[error("invalid label: {0}")]
    Label(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("internal consistency check `{check}` failed: residual {residual:e}")]
    Consistency { check: String, residual: f64 },

    #[error("branching parity violated: l = {l}, m = {m} must have equal parity")]
    BranchingParity { l: i64, m: i64 },

    #[error("field identification failed: {0}")]
    Identification(String),

    #[error("non-integer fusion coefficient N[{a}][{b}][{c}] (residual {residual:e})")]
    NonIntegerFusion {
        a: String,
        b: String,
        c: String,
        residual: f64,
    },

    #[error("negative fusion coefficient N[{a}][{b}][{c}] = {value}")]
    NegativeFusion {
        a: String,
        b: String,
        c: String,
        value: i64,
    },

    #[error("no unique vacuum row (entrywise real-positive) found")]
    VacuumNotFound,

    #[error("quantum dimension of {label} is {value} < 1: vacuum misidentified")]
    VacuumMisidentified { label: String, value: f64 },

    #[error("modularity failure: {0}")]
    Modularity(String),

    #[error("fusion branch coverage: {0}")]
    BranchCoverage(String),

    #[error("degenerate denominator S_0{label} = 0 in monodromy")]
    DegenerateDenominator { label: String },

    #[error("sampling error: need at least 2 samples, got {0}")]
    Sampling(usize),

    #[error("lattice construction error: {0}")]
    Lattice(String),

    #[error("matrix is singular")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;
