//! The `hallforge` command-line tool: JSON formats, configuration,
//! reproducible sampling and the property suites run by `hallforge verify`.

pub mod cli;
pub mod config;
pub mod error;
pub mod json;
pub mod sampling;
pub mod suites;

pub use cli::{run_args, Outcome};
pub use error::{CliError, CliResult};
