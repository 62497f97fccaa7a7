//! File formats, reports and command-line plumbing for [`seclend_core`].
//!
//! - [`csv_io`]: bit-exact CSV export and import of portfolio histories.
//! - [`config`]: the JSON run configuration.
//! - [`report`]: valuation, bid and simulation reports and their tables.
//! - [`commands`]: the `simulate`, `value`, `bid` and `report` commands.

// Negated comparisons are how parameter checks reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod csv_io;
pub mod error;
pub mod report;

pub use config::{Format, RunConfig};
pub use error::{Error, EXIT_RUNTIME, EXIT_VALIDATION};
