//! Configuration, dispatch and artifact output for the `kwlab` binary.
//!
//! Exit codes: `0` on success, `1` when validation of the configuration or
//! inputs fails, `2` when `--check` is set and a tolerance is breached.

pub mod config;
pub mod output;
pub mod refine;
mod run;

use crate::audit::AuditError;
use crate::knot::KnotError;
use crate::lattice::GridError;
use crate::lie::LieError;
use crate::model::ModelError;
use crate::nahm::NahmError;
use crate::residual::ResidualError;
use std::path::PathBuf;
use thiserror::Error;

pub use config::{Command, GridSpec, RunConfig, OUT_DIR_ENV};
pub use refine::{refine_study, OrderRow, RefinementSeries, ORDER_FLOOR};
pub use run::{run, KnotInput, VanishingEntry};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("input: {0}")]
    Input(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Nahm(#[from] NahmError),
    #[error(transparent)]
    Audit(#[from] AuditError),
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    Residual(#[from] ResidualError),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        1
    }
}

/// Result of a successful run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub artifacts: Vec<PathBuf>,
    /// Human-readable report for the terminal.
    pub summary: String,
    /// Tolerance breaches found during the run.
    pub breaches: Vec<String>,
    pub check: bool,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.check && !self.breaches.is_empty() {
            2
        } else {
            0
        }
    }
}
