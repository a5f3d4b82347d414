//! Command-line front end: the text formats, report rendering and the
//! subcommand dispatcher behind the `dgforge` binary.

pub mod commands;
pub mod format;
pub mod report;
pub mod selftest;

pub use commands::{execute, main_with, Cli, Command};
pub use report::Report;
