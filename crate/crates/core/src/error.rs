use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown point {0}")]
    UnknownPoint(String),
    #[error("unknown name {0}")]
    UnknownName(String),
    /// A structure failed validation; `law` names the first violated invariant.
    #[error("{structure}: {law} violated ({detail})")]
    Invalid { structure: &'static str, law: &'static str, detail: String },
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A component of a hom is not an open map, so Ef is not defined on it.
    #[error("not an open map: {0}")]
    NotOpen(String),
    /// A construction would exceed the size the dense representation supports.
    #[error("too large: {0}")]
    TooLarge(String),
}

impl Error {
    pub(crate) fn invalid(structure: &'static str, law: &'static str, detail: impl Into<String>) -> Error {
        Error::Invalid { structure, law, detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
