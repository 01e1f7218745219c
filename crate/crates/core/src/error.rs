use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument out of supported range: {0}")]
    Range(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("truncation bound diverges: {0}")]
    Divergence(String),
    #[error("invalid signal extent: {0}")]
    InvalidExtent(String),
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
}

pub type Result<T> = std::result::Result<T, Error>;
