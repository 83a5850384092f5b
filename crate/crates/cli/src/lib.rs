//! Library side of the `fsocap` command-line tool: configuration parsing
//! and CSV sweeps over the `fso-capacity` engines.

pub mod config;
mod error;
pub mod sweep;

pub use config::{Config, SnrAxis, SweepSpec};
pub use error::CliError;
pub use sweep::{evaluate, format_point, run_sweep, SweepReport, SweepRow, CSV_HEADER};
