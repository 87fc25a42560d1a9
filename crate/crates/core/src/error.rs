use thiserror::Error;

/// Errors raised by the algebra engine and the command-line front end.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("product of two vacuum envelopes can only be consumed by integration")]
    VacuumSquareOutsideIntegral,
    #[error("star product of two Gaussian-carrying functions does not terminate")]
    NonTerminatingStar,
    #[error("operation does not accept functions carrying a Gaussian envelope")]
    EnvelopeUnsupported,
    #[error("Gaussian envelopes are only available with hbar = 1")]
    EnvelopeInFormalMode,
    #[error("cannot add functions with different envelopes")]
    EnvelopeMismatch,
    #[error("classical limit requires formal-hbar arithmetic")]
    HbarFixedMode,
    #[error("leading order of F/(i hbar) diverges: F has hbar-independent terms")]
    SingularLimit,
    #[error("integral over phase space diverges without a Gaussian envelope")]
    DivergentIntegral,
    #[error("scalar {0} has no exact inverse in this representation")]
    NonInvertible(String),
    #[error("matrix dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("input function {0} is not real-valued")]
    NotRealValued(&'static str),
    #[error("nilpotency conditions violated: {0}")]
    ConditionViolated(String),
    #[error("internal consistency check failed: {0}")]
    InternalMismatch(String),
    #[error("K must depend only on {allowed}: got {got}")]
    BadKArgument { allowed: &'static str, got: String },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("operation requires K = 0")]
    UnsupportedK,
    #[error("parse error at line {line}, column {column}: {message} (near '{token}')")]
    Parse {
        line: usize,
        column: usize,
        token: String,
        message: String,
    },
    #[error("unknown configuration key '{key}' on line {line}")]
    UnknownKey { key: String, line: usize },
    #[error("bad expression for '{key}' on line {line}: {source}")]
    BadExpression {
        key: String,
        line: usize,
        source: Box<Error>,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o failure: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
