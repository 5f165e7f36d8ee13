use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the operation's domain (wrong group, unknown object, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("not a homomorphism: h({x}·{y}) = {got} but h({x})·h({y}) = {expected}")]
    NotHomomorphism {
        x: String,
        y: String,
        got: String,
        expected: String,
    },

    #[error("malformed grading: {0}")]
    MalformedGrading(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A mathematical invariant that should hold by construction failed.
    #[error("invariant failure: {0}")]
    Invariant(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}
