use thiserror::Error;

/// Domain errors raised by monoid and fan operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("element is not in the monoid: {0}")]
    NotInMonoid(String),
    #[error("not a face of the monoid")]
    NotAFace,
    #[error("monoid is not sharp")]
    NotSharp,
    #[error("not a homomorphism: {0}")]
    NotAHom(String),
    #[error("gluing violates the cocycle condition: {0}")]
    Cocycle(String),
    #[error("invalid gluing: {0}")]
    InvalidGluing(String),
    #[error("incompatible ideal sheaf: {0}")]
    IncompatibleIdeals(String),
    #[error("input is not fs: {0}")]
    NotFs(String),
    #[error("not a refinement")]
    NotRefinement,
    #[error("search inconclusive: {0}")]
    Inconclusive(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::NotInMonoid(_) => "not-in-monoid",
            Error::NotAFace => "not-a-face",
            Error::NotSharp => "not-sharp",
            Error::NotAHom(_) => "not-a-hom",
            Error::Cocycle(_) => "cocycle",
            Error::InvalidGluing(_) => "invalid-gluing",
            Error::IncompatibleIdeals(_) => "incompatible-ideals",
            Error::NotFs(_) => "not-fs",
            Error::NotRefinement => "not-refinement",
            Error::Inconclusive(_) => "inconclusive",
            Error::Invalid(_) => "invalid",
            Error::Unsupported(_) => "unsupported",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
