use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rational number `{0}`")]
    InvalidNumber(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("invalid support: {0}")]
    InvalidSupport(String),
    #[error("invalid coalition: {0}")]
    InvalidCoalition(String),
    #[error("profile is not fully mixed; restrict the game to the profile's support first")]
    NotFullyMixed,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
