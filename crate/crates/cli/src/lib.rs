//! Library side of the `prefdyn` command: config parsing, seeded
//! experiments, output files, exhaustive equilibrium search and the
//! self-verification suite.

pub mod config;
pub mod enumerate;
pub mod error;
pub mod experiment;
pub mod output;
pub mod verify;

pub use error::CliError;
