//! Text formats, reports and subcommands of the `slackhopf` binary.

pub mod commands;
pub mod error;
pub mod format;
pub mod report;

pub use error::CliError;
pub use report::Report;
