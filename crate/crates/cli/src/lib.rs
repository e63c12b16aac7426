//! Command-line front end for `weylkit`: the expression grammar, the
//! report format and the golden fixtures.

pub mod commands;
pub mod golden;
pub mod parse;
pub mod report;

pub use commands::{execute, run, Cli, CliError, Command};
pub use report::ReportDocument;
