use thiserror::Error;

/// Errors produced by construction, parsing, and decoding.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("malformed alist: {0}")]
    MalformedAlist(String),

    #[error("malformed QC matrix file: {0}")]
    MalformedQc(String),

    #[error("lifting sizes differ: {0} vs {1}")]
    GammaMismatch(usize, usize),

    #[error("circulant conjugation is only defined for monomials and zero")]
    NonMonomial,

    #[error("CSS condition violated: H_X * H_Z^T != 0")]
    CssViolation,

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("decoder produced a non-finite message; check bias configuration")]
    NonFiniteMessage,

    #[error("invalid decoder configuration: {0}")]
    InvalidDecoderConfig(&'static str),

    #[error("decoder ensemble is empty")]
    EmptyEnsemble,

    #[error("factor graph contains a four-cycle; trapping-set analysis requires four-cycle-free factors")]
    FourCycle,

    #[error("generator set is empty")]
    EmptyGeneratorSet,

    #[error("pattern enumeration over {qubits} qubits exceeds budget of 2^{budget_log2} patterns")]
    BudgetExceeded { qubits: usize, budget_log2: u32 },

    #[error("operation requires {required} provenance, code was built as {actual}")]
    WrongProvenance {
        required: &'static str,
        actual: &'static str,
    },

    #[error("random tie-break decoder requires an rng seed")]
    MissingSeed,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
