use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is invertible, its nullspace is trivial")]
    NoNullspace,

    #[error("nullspace has dimension {nullity}, expected 1")]
    NullityTooLarge { nullity: usize },

    #[error("pieces are not continuous across x1 = 0: {0}")]
    NotContinuous(String),

    #[error("map dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("precondition violated: {0}")]
    Contract(String),

    #[error("cannot parse {field}: {message}")]
    Parse { field: String, message: String },

    #[error("max period {requested} exceeds the limit {limit}")]
    PeriodTooLarge { requested: usize, limit: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}
