use thiserror::Error;

/// Errors raised by the geometry and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("point not in interior")]
    NotInterior,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),
    #[error("grid function is identically zero")]
    ZeroFunction,
    #[error("singular weight inside the mask: {0}")]
    SingularWeight(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
