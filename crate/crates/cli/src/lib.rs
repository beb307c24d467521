//! Batch front end for `zipcalc`: reads a zip datum from a TOML file, runs
//! one computation or the full verification suite, and writes JSON and DOT
//! reports.

pub mod config;
pub mod error;
pub mod report;
pub mod run;

pub use error::{CliError, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_OK, EXIT_RESOURCE_LIMIT};
pub use run::{run, Command, Options, RunOutput, DEFAULT_MAX_ORDER};
