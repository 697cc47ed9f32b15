use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure modes of the simulator.
///
/// Every variant carries a stable machine-readable [`code`](Error::code) and
/// maps onto a process exit status via [`exit_code`](Error::exit_code).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A register or grid exceeds the implementation limits.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// The requested physical model would not be a valid mixture.
    #[error("model validity: {0}")]
    ModelValidity(String),

    /// The sampled function returned a value outside [0, 1].
    #[error("oracle contract violated at i={index}: f(i)={value} is outside [0, 1]")]
    OracleContract { index: usize, value: f64 },

    /// Input data failed validation. `indices` are 1-based sample positions.
    #[error("validation failed: {message}")]
    Validation { message: String, indices: Vec<usize> },

    /// A tuning parameter (SNR, trials, Lipschitz constant, ...) is invalid.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Command-line usage error.
    #[error("usage: {0}")]
    Usage(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn validation(message: impl Into<String>) -> Self {
        Error::Validation {
            message: message.into(),
            indices: Vec::new(),
        }
    }

    /// Stable identifier used in machine-readable error records.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "E_DOMAIN",
            Error::Capacity(_) => "E_CAPACITY",
            Error::ModelValidity(_) => "E_MODEL_VALIDITY",
            Error::OracleContract { .. } => "E_ORACLE_CONTRACT",
            Error::Validation { .. } => "E_VALIDATION",
            Error::Parameter(_) => "E_PARAMETER",
            Error::Usage(_) => "E_USAGE",
            Error::Io(_) => "E_IO",
        }
    }

    /// Process exit status: 3 for capacity problems, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capacity(_) => 3,
            _ => 2,
        }
    }

    /// All codes, in the order they are documented.
    pub const CODES: [&'static str; 8] = [
        "E_DOMAIN",
        "E_CAPACITY",
        "E_MODEL_VALIDITY",
        "E_ORACLE_CONTRACT",
        "E_VALIDATION",
        "E_PARAMETER",
        "E_USAGE",
        "E_IO",
    ];
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
