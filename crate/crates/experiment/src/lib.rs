//! Experiment runner for the two-way DASTC study: SNR sweeps over the
//! Monte-Carlo, closed-form, quadrature and one-way methods, with CSV and
//! long-format plot output.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::{ExperimentConfig, Methods, Scenario, Settings, SnrGrid};
pub use error::{ExperimentError, Result};
pub use output::{emit_csv, emit_plotdata, parse_csv, parse_plotdata};
pub use run::{run_experiment, run_experiment_with_progress, ExperimentResult, Row};
