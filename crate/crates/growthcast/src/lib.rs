//! File formats and command-line front end for `growthcast-core`.

pub mod cli;
mod error;
pub mod io;
mod output;
pub mod params;
pub mod pipeline;
pub mod plot;
pub mod report;

pub use error::CliError;
pub use growthcast_core as core;
