//! File formats and subcommands of the `qmatch` tool.

pub mod commands;
pub mod format;

pub use commands::{CliError, Outcome, VerifyOptions};
pub use format::{parse_point, parse_problem, write_point, write_problem, ParseError, ProblemFile};
