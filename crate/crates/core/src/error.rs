use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("qubit cap exceeded: {n} qubits requested, cap is {cap}")]
    QubitCapExceeded { n: usize, cap: usize },

    #[error("invalid qubit subset: {0}")]
    InvalidSubset(String),

    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),

    #[error("noise strength must lie in [0, 1], got {0}")]
    InvalidNoise(f64),

    #[error("corrupted state: diagonal sums to {0}")]
    CorruptedState(f64),

    #[error("state is not pure (largest eigenvalue {0})")]
    NotPure(f64),

    #[error("family does not qualify: t = {t} exceeds minimum coverage {coverage}")]
    CoverageTooLow { t: usize, coverage: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration cap exceeded: {bits} transcript bits, cap is {cap}")]
    EnumerationCap { bits: usize, cap: usize },

    #[error("inconsistent oracle: {0}")]
    InconsistentOracle(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
