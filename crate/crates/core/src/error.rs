use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("move pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("forbidden move: {0}")]
    ForbiddenMove(String),
    #[error("move would use the exterior face: {0}")]
    ExteriorFace(String),
    #[error("diagram is not reduced")]
    NotReduced,
    #[error("surface markers differ")]
    SurfaceMismatch,
    #[error("knotoid must be oriented")]
    NotOriented,
    #[error("closure of {0} has two components")]
    TwoComponents(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("bridge: {0}")]
    Bridge(String),
}

pub type ParseError = Error;

impl Error {
    pub fn syntax(msg: impl Into<String>) -> Self {
        Error::Syntax(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax(_) => "syntax",
            Error::Invalid(_) => "invalid",
            Error::PatternMismatch(_) => "pattern-mismatch",
            Error::ForbiddenMove(_) => "forbidden-move",
            Error::ExteriorFace(_) => "exterior-face",
            Error::NotReduced => "not-reduced",
            Error::SurfaceMismatch => "surface-mismatch",
            Error::NotOriented => "not-oriented",
            Error::TwoComponents(_) => "two-components",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Unsupported(_) => "unsupported",
            Error::Bridge(_) => "bridge",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
