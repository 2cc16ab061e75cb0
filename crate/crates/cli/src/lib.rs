//! File formats, reports, experiments and figures behind the `coarseness`
//! command-line tool.

pub mod app;
pub mod blocks;
pub mod experiment;
pub mod instance;
pub mod report;
pub mod svg;

pub use app::{run, Cli, CliError};
