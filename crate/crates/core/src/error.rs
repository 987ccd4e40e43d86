use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),

    #[error("cannot enumerate an infinite ring: {0}")]
    InfiniteEnumeration(String),

    #[error("element must be nonzero")]
    ZeroElement,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("elements are not coprime")]
    NotCoprime,

    #[error("element {0} has no clean decomposition")]
    NotClean(String),

    #[error("no decomposition found: {0}")]
    NoDecomposition(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
