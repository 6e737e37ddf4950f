use thiserror::Error;

/// Errors raised by curve construction, measurement and the optimizer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("parameter {s} outside [0, {length}] on an open curve")]
    ParamOutOfRange { s: f64, length: f64 },

    #[error("coincident points: distortion quotient undefined at s={s}, t={t}")]
    UndefinedPair { s: f64, t: f64 },

    #[error("curve is not embedded: edges {0} and {1} come within tolerance")]
    NotEmbedded(usize, usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("thickness is infinite: no pair reaches distortion quotient {b}")]
    InfiniteThickness { b: f64 },

    #[error("measure has an atom of mass {mass} at {position} inside the interval")]
    AtomicMeasure { position: f64, mass: f64 },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("move is a no-op: {0}")]
    NoOp(String),

    #[error("move rejected: {0}")]
    MoveRejected(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
