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

//! Output files. Everything written is a function of the config and the
//! records, so reruns with the same seed are byte-identical.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::config::{ExperimentConfig, ExperimentKind, OutputFormat};
use super::record::{records_to_csv, TrialRecord};
use super::summary::Summary;
use super::LabError;

pub const SUMMARY_FILE: &str = "summary.json";
pub const RECORDS_CSV: &str = "records.csv";
pub const RECORDS_JSON: &str = "records.json";

fn write(path: PathBuf, text: &str, written: &mut Vec<PathBuf>) -> Result<(), LabError> {
    fs::write(&path, text).map_err(|e| LabError::io(&path, e))?;
    written.push(path);
    Ok(())
}

pub fn summary_json(summary: &Summary) -> String {
    let mut s = serde_json::to_string_pretty(summary).expect("summary serializes");
    s.push('\n');
    s
}

/// `x,y,y_err` rows.
fn plot(points: &[(f64, f64, f64)]) -> String {
    let mut out = String::from("x,y,y_err\n");
    for (x, y, e) in points {
        let _ = writeln!(out, "{x},{y},{e}");
    }
    out
}

/// Writes the records table, `summary.json`, plot-data files and the
/// experiment-specific tables into `config.out`. Returns the paths written.
pub fn emit(config: &ExperimentConfig, records: &[TrialRecord], summary: &Summary) -> Result<Vec<PathBuf>, LabError> {
    let dir: &Path = &config.out;
    fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
    let mut written = Vec::new();
    match config.format {
        OutputFormat::Delimited => write(dir.join(RECORDS_CSV), &records_to_csv(records), &mut written)?,
        OutputFormat::Structured => {
            let mut text = serde_json::to_string_pretty(records).expect("records serialize");
            text.push('\n');
            write(dir.join(RECORDS_JSON), &text, &mut written)?;
        }
    }
    write(dir.join(SUMMARY_FILE), &summary_json(summary), &mut written)?;

    // plot curves keyed by the parameter held fixed
    let mut curves: BTreeMap<String, Vec<(f64, f64, f64)>> = BTreeMap::new();
    for c in &summary.cells {
        let cell = &c.cell;
        let entry = match config.experiment {
            ExperimentKind::CovScaling => c.stats("ratio").map(|s| {
                (format!("plot_cov_ell{}.csv", cell.ell.unwrap()), (f64::from(cell.t.unwrap()), s.mean, s.std_error))
            }),
            ExperimentKind::Census => {
                let (t, m) = (f64::from(cell.t.unwrap()), f64::from(cell.m.unwrap()));
                let point = match (c.stats("exact_mean"), c.stats("est_mean"), c.stats("est_mean_se")) {
                    (Some(e), _, _) => Some((e.mean, 0.0)),
                    (None, Some(e), Some(se)) => Some((e.mean, se.mean)),
                    _ => None,
                };
                point.map(|(y, err)| (format!("plot_census_t{}.csv", cell.t.unwrap()), (m, y * m / t, err * m / t)))
            }
            ExperimentKind::Gnp => c.stats("upper_norm").map(|s| {
                (
                    format!("plot_gnp_n{}_delta{}.csv", cell.n.unwrap(), cell.delta.unwrap_or(1.0)),
                    (cell.eps.unwrap(), s.mean, s.std_error),
                )
            }),
            ExperimentKind::Adaptive => c.stats("normalized").map(|s| {
                (format!("plot_adaptive_n{}.csv", cell.n.unwrap()), (cell.eps.unwrap(), s.mean, s.std_error))
            }),
        };
        if let Some((file, point)) = entry {
            curves.entry(file).or_default().push(point);
        }
    }
    for (file, points) in &curves {
        write(dir.join(file), &plot(points), &mut written)?;
    }

    match config.experiment {
        ExperimentKind::Census => write(dir.join("census_table.csv"), &census_table(records), &mut written)?,
        ExperimentKind::Gnp => write(dir.join("gnp_decomposition.csv"), &gnp_table(records), &mut written)?,
        _ => {}
    }
    Ok(written)
}

/// `t,m,method,value_log,std_error_log,samples`, one row per method per cell.
fn census_table(records: &[TrialRecord]) -> String {
    let mut out = String::from(crate::census::CensusResult::ROW_HEADER);
    out.push('\n');
    let find = |t, m, metric: &str| {
        records.iter().find(|r| r.t == Some(t) && r.m == Some(m) && r.metric == metric).map(|r| r.value)
    };
    let mut seen = Vec::new();
    for r in records {
        let (Some(t), Some(m)) = (r.t, r.m) else { continue };
        if seen.contains(&(t, m)) {
            continue;
        }
        seen.push((t, m));
        if let Some(exact) = find(t, m, "exact") {
            let _ = writeln!(out, "{t},{m},enumerate,{},0,0", exact.ln());
        }
        if let (Some(l), Some(se), Some(s)) = (find(t, m, "est_log"), find(t, m, "est_log_se"), find(t, m, "samples")) {
            let _ = writeln!(out, "{t},{m},estimate,{l},{se},{s}");
        }
    }
    out
}

/// One row per gnp trial.
fn gnp_table(records: &[TrialRecord]) -> String {
    const COLUMNS: [&str; 9] = ["giant", "second", "two_core", "x_lo", "x_hi", "z", "y_upper", "total_lo", "total_hi"];
    let mut out = String::from(
        "trial,n,eps,giant_size,second_size,two_core_size,X_lo,X_hi,Z,Y_upper,total_lo,total_hi\n",
    );
    let mut i = 0;
    while i < records.len() {
        let head = &records[i];
        let mut j = i;
        while j < records.len() && records[j].trial == head.trial && records[j].cell() == head.cell() {
            j += 1;
        }
        let rows = &records[i..j];
        let _ = write!(out, "{},{},{}", head.trial, head.n.unwrap_or(0), head.eps.unwrap_or(0.0));
        for col in COLUMNS {
            let v = rows.iter().find(|r| r.metric == col).map(|r| r.value).unwrap_or(f64::NAN);
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
        i = j;
    }
    out
}
