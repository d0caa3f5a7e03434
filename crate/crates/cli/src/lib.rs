//! Command-line front end for `filterfn`: model files, filter tables and
//! sampling reports.

pub mod error;
pub mod eval;
pub mod model;
pub mod report;

pub use error::{CliError, ParseReason, Result};
pub use eval::{eval_table, parse_columns, render_table, Column, EvalTable, EventSelector};
pub use model::{parse_model_file, read_model, render_model, Model};
pub use report::{cmd_simulate, SimulateOptions};
