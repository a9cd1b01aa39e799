use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Degeneracies are ordinary values here: the harness turns them into
/// skipped checks with the offending factor named, never into a panic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("leading term of the zero function is undefined")]
    ZeroFunction,

    #[error("rational function has a pole at {0}")]
    PoleAtPoint(String),

    #[error("lower parameter #{parameter} makes the Pochhammer denominator vanish at k = {k}")]
    ZeroDenominatorTerm { k: usize, parameter: usize },

    #[error("degenerate parameter point: factor `{factor}` vanishes at index {index}")]
    DegenerateParameter { factor: String, index: i64 },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("boundary convention violated: coefficient of the index -1 term is {value} in {context}")]
    BoundaryNonzero { context: String, value: String },

    #[error("duplicate abscissa at nodes {0} and {1}")]
    DuplicateAbscissa(i64, i64),

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("leading term of the zero matrix is undefined")]
    ZeroMatrix,

    #[error("parameter sampling exhausted after {0} attempts")]
    SamplingExhausted(usize),

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn degenerate(factor: impl Into<String>, index: i64) -> Self {
        Error::DegenerateParameter {
            factor: factor.into(),
            index,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
