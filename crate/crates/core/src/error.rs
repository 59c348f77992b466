use thiserror::Error;

/// Errors raised while building states or evaluating entanglement quantities.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid party layout: {0}")]
    InvalidLayout(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("party index {party} out of range for {parties} parties")]
    PartyOutOfRange { party: usize, parties: usize },
    #[error("concurrence needs at least two parties, layout has {0}")]
    TooFewParties(usize),
    #[error("invalid bipartition: {0}")]
    InvalidCut(String),
    #[error("state is not normalized: squared norm {norm_sq}")]
    NotNormalized { norm_sq: f64 },
    #[error("matrix is not Hermitian: max deviation {deviation:e}")]
    NotHermitian { deviation: f64 },
    #[error("density matrix trace is {trace}, expected 1")]
    BadTrace { trace: f64 },
    #[error("matrix is not positive semidefinite: eigenvalue {min_eigenvalue:e}")]
    NotPsd { min_eigenvalue: f64 },
    #[error("observable basis needs local dimension >= 2, got {0}")]
    InvalidLocalDim(usize),
    #[error("unknown catalog state `{0}`")]
    UnknownState(String),
    #[error("invalid state spec: {0}")]
    InvalidSpec(String),
    #[error("invalid shot count {shots}: {reason}")]
    InvalidShots { shots: usize, reason: &'static str },
    #[error("outcome probabilities sum to {total}, expected 1")]
    ProbabilityMismatch { total: f64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True when the error signals a broken numerical invariant rather than
    /// bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::ProbabilityMismatch { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
