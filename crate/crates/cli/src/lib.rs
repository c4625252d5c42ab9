//! Command-line layer over `quake_core`: sampling earthquake paths, chart conversion,
//! invariant suites, slope tables and figure data as CSV, JSON and SVG.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod charts;
pub mod checks;
pub mod commands;
pub mod config;
pub mod curves;
pub mod error;
pub mod figures;
pub mod output;
pub mod sampling;

pub use charts::{Chart, ChartPoint};
pub use config::Settings;
pub use curves::NamedCurve;
pub use error::{CliError, CliResult};
pub use figures::FigureId;
pub use sampling::{Param, PathRequest};
