use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A physical quantity was evaluated outside its domain of definition.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid {what}: {reason}")]
    InvalidInput { what: &'static str, reason: String },

    #[error("velocity guard violated at t = {t:e} s: beta = {beta:e} (limit 0.1)")]
    BetaGuard { t: f64, beta: f64 },

    #[error("trajectory grid is not uniform at index {index}")]
    NonUniformGrid { index: usize },

    #[error("path does not close: |sum dr| = {residual:e} m")]
    OpenPath { residual: f64 },

    #[error("{arm} arm leaves the beam at t = {t:e} s (r_perp = {r_perp:e} m)")]
    ExitedBeam { arm: &'static str, t: f64, r_perp: f64 },

    #[error("pulse has not passed the atom by t_end = {t_end:e} s (envelope ends at {t_pass:e} s)")]
    PulseNotPassed { t_end: f64, t_pass: f64 },

    #[error("singular fit: {0}")]
    SingularFit(String),

    #[error("config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            what,
            reason: reason.into(),
        }
    }
}
