use thiserror::Error;

use crate::quantaloid::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("unknown element `{elt}` in hom {hom}")]
    UnknownElement { hom: String, elt: String },

    #[error("endpoint mismatch: {0}")]
    Endpoint(String),

    #[error("extent mismatch: {0}")]
    Extent(String),

    #[error("invalid quantaloid:\n{0}")]
    InvalidQuantaloid(ValidationReport),

    #[error("invalid structure: {0}")]
    Invalid(String),

    #[error("topology axiom violated: {0}")]
    Topology(String),

    #[error("cap of {cap} exceeded while {what}")]
    Cap { what: String, cap: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Cap { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<S: Into<String>>(msg: S) -> Error {
    Error::Input(msg.into())
}
