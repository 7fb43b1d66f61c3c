use thiserror::Error;

/// Errors raised by the numeric and exact layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("{op}: domain error: {detail}")]
    Domain { op: &'static str, detail: String },
    /// The quantity is infinite at this input (e.g. K(1)).
    #[error("{op}: diverges: {detail}")]
    Divergence { op: &'static str, detail: String },
    /// A formula divides by zero at this input.
    #[error("{op}: singular: {detail}")]
    Singularity { op: &'static str, detail: String },
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn divergence(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Divergence {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn singularity(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Singularity {
            op,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
