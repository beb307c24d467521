use std::path::Path;

use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;
pub const EXIT_RESOURCE_LIMIT: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or invalid input: the file, its TOML, an element literal,
    /// a group or a homomorphism. `location` is `file` or `file: key.path`.
    #[error("{location}: {message}")]
    Config { location: String, message: String },

    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn config(path: &Path, key: &str, message: impl Into<String>) -> Self {
        let location = if key.is_empty() {
            path.display().to_string()
        } else {
            format!("{}: {key}", path.display())
        };
        CliError::Config {
            location,
            message: message.into(),
        }
    }

    /// Sorts a library error into the exit-code classes: size limits and
    /// broken invariants keep their own codes, everything else is input.
    pub fn from_core(path: &Path, key: &str, e: zipcalc::Error) -> Self {
        match e {
            zipcalc::Error::TooLarge { .. } => {
                let at = if key.is_empty() {
                    String::new()
                } else {
                    format!(": {key}")
                };
                CliError::ResourceLimit(format!("{}{at}: {e}", path.display()))
            }
            zipcalc::Error::InvariantViolation(_) => CliError::CheckFailed(e.to_string()),
            other => CliError::config(path, key, other.to_string()),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::Output(_) => EXIT_CONFIG,
            CliError::CheckFailed(_) => EXIT_CHECK_FAILED,
            CliError::ResourceLimit(_) => EXIT_RESOURCE_LIMIT,
        }
    }
}

impl From<zipcalc::Error> for CliError {
    fn from(e: zipcalc::Error) -> Self {
        match e {
            zipcalc::Error::TooLarge { .. } => CliError::ResourceLimit(e.to_string()),
            other => CliError::CheckFailed(other.to_string()),
        }
    }
}
