use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A physical or numerical parameter violates its documented range.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// The requested operation is not defined for this system variant.
    #[error("{operation} is not defined for {kind}")]
    WrongSystem {
        operation: &'static str,
        kind: &'static str,
    },

    /// A closed form collapses for the given parameters (e.g. a vanishing
    /// frequency in a denominator).
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("point outside the declared domain: {0}")]
    OutOfDomain(String),

    #[error("integrand is not finite ({value}) at node {node:?}")]
    NonFinite { value: f64, node: Vec<f64> },

    /// A Wigner function took a genuinely negative value where the overlap
    /// fidelity needs a nonnegative density.
    #[error("{state} state is negative ({value:e}) at node {node:?}")]
    Negativity { state: String, value: f64, node: Vec<f64> },

    #[error("did not converge: {0}")]
    NotConverged(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
