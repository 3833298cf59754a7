//! Command-line layer for `eom-core`: run configuration, CSV/JSON
//! datasets, the preset figures and the self-check suite.

pub mod commands;
pub mod config;
mod failure;
pub mod grid;
pub mod output;
pub mod verify;

pub use failure::{CliResult, Failure};
