use thiserror::Error;

/// Errors raised by every module of the crate.
///
/// Variants are grouped by how a caller is expected to react; see
/// [`Error::exit_code`] for the mapping used by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Valuation of the zero function.
    #[error("infinite value: the zero function has valuation +infinity")]
    InfiniteValue,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("capability limit: {0}")]
    Capability(String),

    #[error("parse error in `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("input error: {0}")]
    Input(String),

    #[error(
        "chart compatibility violated: generator {generator} has value {value} < {chart_value}"
    )]
    ChartCompatibility {
        generator: usize,
        value: String,
        chart_value: String,
    },

    #[error("propagation failed at step {step}: {message}")]
    Propagation { step: usize, message: String },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(field: impl Into<String>, message: impl ToString) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.to_string(),
        }
    }

    /// Process exit code: 2 input/precondition, 3 capability, 4 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Dimension { .. }
            | Error::Domain(_)
            | Error::Precondition(_)
            | Error::InfiniteValue
            | Error::Parse { .. }
            | Error::Input(_)
            | Error::ChartCompatibility { .. } => 2,
            Error::Unsupported(_) | Error::Capability(_) => 3,
            Error::Propagation { .. } | Error::Internal(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension { .. } => "dimension",
            Error::Domain(_) => "domain",
            Error::Precondition(_) => "precondition",
            Error::InfiniteValue => "infinite-value",
            Error::Unsupported(_) => "unsupported",
            Error::Capability(_) => "capability",
            Error::Parse { .. } => "parse",
            Error::Input(_) => "input",
            Error::ChartCompatibility { .. } => "chart-compatibility",
            Error::Propagation { .. } => "propagation",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
