//! Experiment orchestration: dataset preparation, the resolution sweep,
//! and CSV/SVG reporting.
//!
//! A run is described by one JSON [`ExperimentConfig`]. `prepare` writes
//! one FFDS file per resolution (training data augmented, test data not),
//! `sweep` grid-searches and evaluates every model at every resolution,
//! and `report` renders the resulting [`SweepReport`].

pub mod config;
pub mod prepare;
pub mod report;
pub mod svg;
pub mod sweep;

pub use config::{ExperimentConfig, GridSpec, ModelKind, WORKERS_ENV};
pub use prepare::cmd_prepare;
pub use report::{cmd_report, cmd_report_file, results_csv, ReportOutputs, CSV_HEADER};
pub use sweep::{cmd_eval, cmd_sweep, cmd_train, evaluate, Evaluation, ReportRow, SweepReport, TrainOutcome};
