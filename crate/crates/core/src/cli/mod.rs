//! Batch front end: config parsing, experiment dispatch and artifacts.
//!
//! [`run`] writes three byte-stable files per run directory:
//!
//! - `series.csv` — header row, fixed column order, every value printed with
//!   17 significant digits. `simulate` writes `t` followed by the monitor
//!   columns; sweeps write long-format `alpha_i,alpha_j,t,h_minus_half`
//!   rows; the matrix and property experiments write `check,parameter,value`.
//! - `summary.json` — config echo, seed and headline numbers.
//! - `checks.json` — every inequality record and pass/fail verdict.
//!
//! JSON objects are emitted with sorted keys. Wall-clock time goes to a
//! separate `timing.json` so the three artifacts above are reproducible.
//!
//! Exit codes: 0 when every check passed, 1 for config errors, 2 for a
//! numerical failure or a failed check.

mod config;
mod output;
mod run;

pub use config::{
    parse_config, parse_config_str, ConfigError, EstimatesSpec, Experiment, ForcingSpec,
    InitialCondition, MonitorSpec, OperatorSpec, RunConfig,
};
pub use output::{emit_csv, emit_json, emit_table, format_float};
pub use run::{exit_code, run, RunOptions, RunOutcome};
