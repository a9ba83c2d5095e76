//! Library side of the `qhm` command-line tool.

pub mod commands;
pub mod config;
pub mod output;

pub use commands::{run, Outcome};
pub use config::{Command, Format, Overrides, RunConfig};
