//! Command-line front end and file formats for `dvl-core`.

pub mod cli;
pub mod config;
pub mod error;
pub mod exec;
pub mod io;

pub use error::CliError;
pub use exec::RayonExecutor;
