use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension {0} is too small: need n >= 3")]
    DimensionTooSmall(usize),

    #[error("intermediary block size r = {r} out of range 2..={max} for n = {n}")]
    BlockOutOfRange { r: usize, n: usize, max: usize },

    #[error("coordinate {coordinate} out of range 1..={n}")]
    CoordinateOutOfRange { coordinate: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, found {found} ({what})")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("form index {0:?} is not strictly increasing")]
    UnsortedFormIndex(Vec<usize>),

    #[error("form degree {k} exceeds ambient dimension {n}")]
    DegreeTooLarge { k: usize, n: usize },

    #[error("operation undefined on the zero form: {0}")]
    ZeroForm(&'static str),

    #[error("form is not decomposable, so it does not define a distribution")]
    NotADistribution,

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed form literal at byte {position}: {message}")]
    FormLiteral { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
