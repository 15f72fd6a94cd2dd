//! File formats, reports and subcommands of the `chsh` tool.

pub mod commands;
pub mod error;
pub mod format;
pub mod params;
pub mod record;

pub use error::CliError;
