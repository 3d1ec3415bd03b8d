use thiserror::Error;

use crate::model::Diagnostic;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid direction: the zero vector has no direction")]
    InvalidDirection,

    #[error("invalid segment: {0}")]
    InvalidSegment(String),

    #[error("invalid curve `{id}`: {reason}")]
    InvalidCurve { id: String, reason: String },

    #[error("unknown curve `{0}`")]
    UnknownCurve(String),

    #[error("curves `{a}` and `{b}` share a sub-arc of positive length")]
    DegenerateOverlap { a: String, b: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A structural fact guaranteed by the underlying theorem did not hold.
    /// Carries a JSON snapshot of the offending solver state.
    #[error("internal invariant violated: {message}")]
    InternalInvariant {
        message: String,
        state: Option<serde_json::Value>,
    },

    #[error("search node budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("invalid instance ({} diagnostic(s)): {}", .0.len(), join_diagnostics(.0))]
    InvalidInstance(Vec<Diagnostic>),

    #[error("parse error at `{path}`: {message}")]
    Parse { path: String, message: String },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("sampler gave up after {0} rejected samples")]
    RejectionBudget(usize),

    #[error("i/o error: {0}")]
    Io(String),
}

fn join_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    pub(crate) fn internal(message: impl Into<String>) -> Self {
        Error::InternalInvariant {
            message: message.into(),
            state: None,
        }
    }

    pub(crate) fn internal_with(message: impl Into<String>, state: serde_json::Value) -> Self {
        Error::InternalInvariant {
            message: message.into(),
            state: Some(state),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
