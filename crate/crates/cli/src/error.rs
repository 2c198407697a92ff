use thiserror::Error;

use slackhopf_core::Error as CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}", parse_message(.line, .field, .message))]
    Parse {
        line: Option<usize>,
        field: String,
        message: String,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Bound(CoreError),
    #[error("{0}")]
    Invalid(CoreError),
    #[error("{0}")]
    Usage(String),
}

fn parse_message(line: &Option<usize>, field: &str, message: &str) -> String {
    match line {
        Some(n) => format!("parse error at line {n}, field `{field}`: {message}"),
        None => format!("parse error in field `{field}`: {message}"),
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::BoundExceeded { .. } => CliError::Bound(e),
            other => CliError::Invalid(other),
        }
    }
}

impl CliError {
    /// 1 for unusable input, 2 for a search bound that was hit.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Bound(_) => 2,
            _ => 1,
        }
    }
}
