use thiserror::Error;

/// Errors raised by the constructions in this crate.
///
/// Law failures are never reported through this type; they are data carried
/// by [`crate::laws::LawReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unknown id `{id}` in {context}")]
    UnknownId { id: String, context: String },

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("search bound exceeded: {0}")]
    SizeCap(String),

    #[error("category has no initial object")]
    NoInitialObject,

    #[error("no mediating algebra 1-cell exists")]
    NoMediator,

    #[error("expected exactly one algebra 2-cell, found {0}")]
    UniquenessViolation(usize),

    #[error("arrow or functor is not invertible: {0}")]
    NotInvertible(String),

    #[error("Lambek chain did not stabilize within {0} steps")]
    NotStabilized(usize),

    #[error("model does not provide binary products")]
    NoProducts,

    #[error("morphism of polynomials is not cartesian: {0}")]
    NotCartesian(String),

    #[error("invalid commuting square: {0}")]
    InvalidSquare(String),

    #[error("operators are not uniquely isomorphic: {0} candidate(s) for {1}")]
    NotContractible(usize, String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}
