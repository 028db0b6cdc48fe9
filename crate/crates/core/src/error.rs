use thiserror::Error;

/// Errors raised while parsing or combining Pauli operators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("qubit count {0} exceeds the supported maximum of 64")]
    TooManyQubits(usize),
    #[error("unknown Pauli letter {0:?}")]
    UnknownLetter(char),
    #[error("qubit index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("qubit index {0} appears more than once")]
    DuplicateIndex(usize),
    #[error("malformed operator string at byte {0}")]
    Malformed(usize),
    #[error("mask has bits set beyond qubit {0}")]
    MaskOutOfRange(usize),
    #[error("qubit count mismatch: {0} vs {1}")]
    QubitCountMismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("amplitude vector has length {len}, expected 2^{n}")]
    BadLength { len: usize, n: usize },
    #[error("{0} qubits is too many for a dense state vector")]
    TooLarge(usize),
    #[error("operator acts on {op} qubits but the state has {state}")]
    DimensionMismatch { op: usize, state: usize },
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("input states are not orthonormal (overlap {0:.3e})")]
    NotOrthonormal(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CodeError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error("unknown code name {0:?}")]
    UnknownName(String),
    #[error("invalid construction parameter: {0}")]
    InvalidParameter(String),
    #[error("stabilizer {index} acts on {got} qubits, code has {n}")]
    StabilizerSize { index: usize, got: usize, n: usize },
    #[error("stabilizer generators are dependent: rank {rank} < {count}")]
    DependentGenerators { rank: usize, count: usize },
    #[error("stabilizers {0} and {1} anticommute")]
    NonCommuting(usize, usize),
    #[error("projector product annihilates the all-zeros seed state")]
    SeedAnnihilated,
    #[error("expected {expected} logical bits, got {got}")]
    LogicalBitCount { expected: usize, got: usize },
    #[error("request too large: {0}")]
    TooLarge(String),
    #[error("codeword basis is not orthonormal (deviation {0:.3e})")]
    CodewordsNotOrthonormal(f64),
    #[error("logical set is invalid: {0}")]
    InvalidLogicals(String),
    #[error("invalid code JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NoiseError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error("invalid noise model: {0}")]
    InvalidModel(String),
    #[error("observable has imaginary part {0:.3e}")]
    NotReal(f64),
    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),
    #[error("state trace is {0}, expected 1")]
    TraceNotPreserved(f64),
    #[error("invalid time grid: {0}")]
    InvalidGrid(String),
}
