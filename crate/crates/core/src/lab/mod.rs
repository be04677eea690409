// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Deterministic experiment runner.
//!
//! Every trial draws from its own ChaCha8 stream keyed by the master seed,
//! the cell index and the trial index, and results are gathered in index
//! order. The thread count therefore never changes a byte of the output.

mod config;
mod emit;
mod record;
mod stats;
mod suites;
mod summary;

pub use config::{
    adaptive_ell, gnp_ell, ExperimentConfig, ExperimentKind, OutputFormat, PredicateOptions, MAX_COVER_T,
    MAX_GRAPH_N, MAX_QUERY_N, MAX_SAMPLE_T,
};
pub use emit::{emit, summary_json, RECORDS_CSV, RECORDS_JSON, SUMMARY_FILE};
pub use record::{records_from_csv, records_to_csv, Cell, TrialRecord, RECORD_HEADER};
pub use stats::{quantile, SummaryStats, Tail};
pub use suites::{cell_seed, run_adaptive, run_census, run_cov_scaling, run_gnp, trial_rng};
pub use summary::{summarize, BoundRow, CellSummary, Grid, MetricSummary, Predicate, Summary};

use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("config: {0}")]
    Config(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parse: {0}")]
    Parse(String),
    #[error("thread pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Tree(#[from] crate::treekit::TreeError),
    #[error(transparent)]
    Packing(#[from] crate::packing::PackingError),
    #[error(transparent)]
    Census(#[from] crate::census::CensusError),
    #[error(transparent)]
    Gnp(#[from] crate::gnp::GnpError),
    #[error(transparent)]
    Oracle(#[from] crate::oracle::OracleError),
}

impl LabError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        LabError::Io { path: path.to_path_buf(), source }
    }
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

/// Validates the config, runs the experiment on a pool of `config.threads`
/// workers and summarizes the records.
pub fn run(config: &ExperimentConfig) -> Result<RunResult, LabError> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| LabError::Pool(e.to_string()))?;
    let records = pool.install(|| match config.experiment {
        ExperimentKind::CovScaling => run_cov_scaling(config),
        ExperimentKind::Census => run_census(config),
        ExperimentKind::Gnp => run_gnp(config),
        ExperimentKind::Adaptive => run_adaptive(config),
    })?;
    let summary = summarize(config, &records);
    Ok(RunResult { records, summary })
}

/// [`run`] followed by [`emit`].
pub fn run_and_emit(config: &ExperimentConfig) -> Result<(RunResult, Vec<PathBuf>), LabError> {
    let result = run(config)?;
    let files = emit(config, &result.records, &result.summary)?;
    Ok((result, files))
}
