//! Capacity-planning toolkit and discrete-event simulator for duty-cycled
//! low-power wide-area networks carrying seismic telemetry.
//!
//! The crate splits along the workflow:
//! - [`frames`] — integral frame geometry and duty-cycle timing,
//! - [`crosslayer`] — the bit-rate/delay design equations, feasibility
//!   criteria, and the exhaustive design search,
//! - [`scenarios`] — data-generation models for the seismic applications,
//! - [`topology`] — node/gateway layout planning and load accounting,
//! - [`simulator`] — seedable cycle-quantized execution of the dual-stream
//!   transmission protocol,
//! - [`cost`] — operational-expenditure model,
//! - [`config`] / [`report`] / [`commands`] — the JSON-configured
//!   workflows behind the CLI.

// `!(x > 0.0)` is used throughout validation so NaN fails the check too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod cost;
pub mod crosslayer;
pub mod frames;
pub mod report;
pub mod scenarios;
pub mod simulator;
pub mod topology;

pub use commands::{cmd_design, cmd_plan, cmd_rates, cmd_simulate, CommandError};
pub use config::ProjectConfig;
pub use report::Report;
