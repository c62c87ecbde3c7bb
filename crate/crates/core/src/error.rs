use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {func}: {msg}")]
    Domain { func: &'static str, msg: String },

    #[error("divergent value in {func}: {msg}")]
    Divergence { func: &'static str, msg: String },

    #[error("{func} failed to converge after {terms} terms")]
    Convergence { func: &'static str, terms: usize },

    #[error("coincident or near-coincident points (r^2 = {r2:e})")]
    Singular { r2: f64 },

    #[error("invalid parameters: {0}")]
    Params(String),

    #[error("invalid curve: {0}")]
    Curve(String),

    #[error("ambiguous classification: point lies {distance:e} from the curve")]
    Ambiguous { distance: f64 },

    #[error("assembly failed at row {row}, column {col}: {source}")]
    Assembly {
        row: usize,
        col: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("linear solve failed (condition estimate {condition:e})")]
    Solver { condition: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(func: &'static str, msg: impl Into<String>) -> Error {
    Error::Domain {
        func,
        msg: msg.into(),
    }
}
