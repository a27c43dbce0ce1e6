//! Command-line front end: curve files, batch runs with resume, and
//! statistics over result files.

pub mod batch;
pub mod commands;
pub mod engine;
pub mod error;
pub mod input;
pub mod record;
pub mod stats;

pub use error::{CliError, CliResult};
