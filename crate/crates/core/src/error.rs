use thiserror::Error;

use crate::patterns::Report;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller violated an operation's contract.
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// An enumeration or depth bound would be exceeded.
    #[error("resource bound exceeded: {what} (bound {bound})")]
    Resource { what: String, bound: u128 },

    /// An input failed the checker that guards an operation.
    #[error("precondition failed: {what}")]
    Precondition { what: String, report: Box<Report> },

    /// A requirement could not be met within the search horizon.
    #[error("requirement `{requirement}` not met from `{stuck_at}` within {horizon} expansions")]
    Density {
        requirement: String,
        stuck_at: String,
        horizon: usize,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn resource(what: impl Into<String>, bound: impl Into<u128>) -> Self {
        Error::Resource {
            what: what.into(),
            bound: bound.into(),
        }
    }
}
