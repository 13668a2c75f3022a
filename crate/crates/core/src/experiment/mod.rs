//! Config-driven reproduction runs that write CSV tables.

mod config;
mod run;
mod table;

pub use config::{
    inspect_config, validate_config, ExperimentConfig, GateSpec, Rates, Scenario, ScheduleChoice, SweepParam,
    SweepSpec, TwoQubitSpec, DEFAULT_GAMMA, DEFAULT_OMEGA0,
};
pub use run::{run, sweep, synth, RunOptions, RunOutput};
pub use table::{csv_body_of, Cell, Column, ColumnKind, Provenance, ResultTable};
