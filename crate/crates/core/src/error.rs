use thiserror::Error;

/// Error type shared by the whole crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),
    #[error("scalar mode mismatch")]
    ModeMismatch,
    #[error("order exhausted: {0}")]
    OrderExhausted(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("singular leading matrix: {0}")]
    SingularLeadingMatrix(String),
    #[error("division at pole: {0}")]
    DivisionAtPole(String),
    #[error("function `{0}` needs float mode")]
    FunctionNeedsFloatMode(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("problem file: {0}")]
    Schema(String),
    #[error("regularity failure: {0}")]
    Regularity(String),
    #[error("canonical frame requires k > 2, or k = 2 and m > 1 (got k = {k}, m = {m})")]
    GatingViolation { k: usize, m: usize },
    #[error("{0}")]
    Invalid(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the CLI for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. } | Error::Schema(_) => 2,
            Error::Regularity(_) | Error::SingularLeadingMatrix(_) => 3,
            Error::OrderExhausted(_) => 4,
            Error::GatingViolation { .. } => 5,
            _ => 1,
        }
    }
}
