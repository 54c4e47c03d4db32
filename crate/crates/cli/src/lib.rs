//! Command-line reporting for effective counting measures.
//!
//! This crate wraps the core counting library in file formats and five
//! commands: quantifier reports for states (`state`), effective volumes
//! for grid wavefunctions (`grid`), axiom verification batteries
//! (`verify`), measurement-sampling comparisons (`sample`), and
//! disordered-chain scans (`anderson`). The binary is a thin argument
//! parser over [`commands`]; everything here is callable as a library,
//! which is how the integration tests drive it.

#![deny(unsafe_code)]
#![warn(missing_docs)]

pub mod anderson;
pub mod commands;
pub mod error;
pub mod formats;
pub mod report;

pub use error::CliError;
