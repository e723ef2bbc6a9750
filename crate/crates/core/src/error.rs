use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation (non-finite angle,
    /// reversed phase range, negative absorption, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A tensor does not have the structure an operation requires.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("field `{0}` has no samples")]
    EmptyField(String),

    #[error("unknown catalog model `{0}`")]
    UnknownModel(String),

    #[error("field `{0}` is not elliptic on its samples")]
    NotElliptic(String),

    /// A coercivity direction was requested outside the common Θ-set.
    #[error(
        "direction {theta} is not a common ellipticity direction \
         (curl term {curl_term:.6e}, mass term {mass_term:.6e}{})",
        boundary_term.map(|b| format!(", boundary term {b:.6e}")).unwrap_or_default()
    )]
    OutsideCommonSet {
        theta: f64,
        curl_term: f64,
        mass_term: f64,
        boundary_term: Option<f64>,
    },

    #[error("invalid problem: {0}")]
    Problem(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        let text = err.to_string();
        let suffix = format!(" at line {} column {}", err.line(), err.column());
        Error::Parse {
            line: err.line(),
            column: err.column(),
            message: text.strip_suffix(&suffix).unwrap_or(&text).to_string(),
        }
    }
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
