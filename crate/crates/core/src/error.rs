use chrono::NaiveDate;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad failure class, used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Usage,
    Data,
    Numerical,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("singular design: column {column} is linearly dependent on earlier columns")]
    SingularDesign { column: usize },

    #[error("singular panel: {0}")]
    SingularPanel(String),

    #[error("insufficient data for {what}: need {needed}, got {got}")]
    InsufficientData {
        what: String,
        needed: usize,
        got: usize,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("domain error at {date}: {msg}")]
    Domain { date: NaiveDate, msg: String },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("undefined for zero variance: {0}")]
    ZeroVariance(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("did not converge after {iterations} iterations (best value {value})")]
    NonConvergence {
        best: Vec<f64>,
        value: f64,
        iterations: usize,
    },

    #[error("objective is not finite at the starting point")]
    InvalidStart,

    #[error("divergent series: {0}")]
    Divergence(String),

    #[error("singularity: denominator {denominator:e} is too close to zero")]
    Singularity { denominator: f64 },

    #[error("{path}:{line}: {msg}")]
    Ingest {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("{path}: duplicate date {date}")]
    DuplicateDate { path: String, date: NaiveDate },

    #[error("{0}: no observations")]
    EmptyInput(String),

    #[error("alignment failed: {0}")]
    Alignment(String),

    #[error("stale data for {role}: {gap_days} calendar days between {from} and {to} (max {max_gap})")]
    StaleData {
        role: String,
        from: NaiveDate,
        to: NaiveDate,
        gap_days: i64,
        max_gap: i64,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn insufficient(what: impl Into<String>, needed: usize, got: usize) -> Self {
        Error::InsufficientData {
            what: what.into(),
            needed,
            got,
        }
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parameter(_) | Error::Config(_) => ErrorClass::Usage,
            Error::Dimension(_)
            | Error::SingularDesign { .. }
            | Error::SingularPanel(_)
            | Error::Numerical(_)
            | Error::NonConvergence { .. }
            | Error::InvalidStart
            | Error::Divergence(_)
            | Error::Singularity { .. } => ErrorClass::Numerical,
            Error::Stage { source, .. } => source.class(),
            _ => ErrorClass::Data,
        }
    }
}
