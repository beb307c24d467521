use thiserror::Error;

/// Errors raised while building groups, homomorphisms and zip data, or when a
/// runtime cross-check finds a broken invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("cannot parse element `{text}`: {reason}")]
    Parse { text: String, reason: String },

    #[error("element {element} is not in {context}")]
    NotMember { element: String, context: String },

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("mismatched groups: {0}")]
    Mismatch(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("group order exceeds the limit of {limit}")]
    TooLarge { limit: usize },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
