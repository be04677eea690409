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

//! End-to-end runs through config text, emission and re-reading.

use std::fs;
use std::path::Path;

use pathlab::lab::{
    records_from_csv, run_and_emit, summarize, summary_json, ExperimentConfig, TrialRecord, RECORDS_CSV,
    RECORDS_JSON, SUMMARY_FILE,
};

fn config(text: &str, out: &Path) -> ExperimentConfig {
    let mut c = ExperimentConfig::parse(text).unwrap();
    c.out = out.to_path_buf();
    c
}

fn dir_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_file())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

#[test]
fn cov_scaling_plot_files_have_three_columns() {
    let dir = tempfile::tempdir().unwrap();
    let c = config("experiment = cov-scaling\nseed = 5\ntrials = 6\nt = 50, 100, 200\nell = 2, 5\n", dir.path());
    run_and_emit(&c).unwrap();
    for ell in [2, 5] {
        let text = fs::read_to_string(dir.path().join(format!("plot_cov_ell{ell}.csv"))).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x,y,y_err");
        assert_eq!(lines.len(), 4);
        for row in &lines[1..] {
            let cols: Vec<f64> = row.split(',').map(|x| x.parse().unwrap()).collect();
            assert_eq!(cols.len(), 3);
            assert!(cols[1] > 0.0 && cols[2] >= 0.0);
        }
    }
}

#[test]
fn ell_equal_to_t_gives_empty_cover() {
    let dir = tempfile::tempdir().unwrap();
    let c = config("experiment = cov-scaling\ntrials = 5\nt = 40\nell = 40\n", dir.path());
    let (r, _) = run_and_emit(&c).unwrap();
    assert!(r.records.iter().filter(|x| x.metric == "cov").all(|x| x.value == 0.0));
}

#[test]
fn repeated_runs_are_byte_identical_across_thread_counts() {
    for text in [
        "experiment = census\nt = 5, 30\nm = 1, 2, 4\nsamples = 3000\n",
        "experiment = gnp\nn = 2000\neps = 0.2, 0.4\ntrials = 3\nsurrogate = true\n",
        "experiment = adaptive\nn = 500\neps = 0.6, 0.9\ntrials = 3\n",
    ] {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let mut ca = config(text, a.path());
        let mut cb = config(text, b.path());
        ca.threads = 1;
        cb.threads = 4;
        run_and_emit(&ca).unwrap();
        run_and_emit(&cb).unwrap();
        assert_eq!(dir_bytes(a.path()), dir_bytes(b.path()), "{text}");
    }
}

#[test]
fn summaries_are_recomputable_from_emitted_records() {
    let dir = tempfile::tempdir().unwrap();
    let c = config("experiment = gnp\nn = 1500\neps = 0.3\ntrials = 4\nformat = json\n", dir.path());
    run_and_emit(&c).unwrap();
    let records: Vec<TrialRecord> =
        serde_json::from_str(&fs::read_to_string(dir.path().join(RECORDS_JSON)).unwrap()).unwrap();
    assert_eq!(summary_json(&summarize(&c, &records)), fs::read_to_string(dir.path().join(SUMMARY_FILE)).unwrap());
    assert!(!dir.path().join(RECORDS_CSV).exists());
    let table = fs::read_to_string(dir.path().join("gnp_decomposition.csv")).unwrap();
    assert_eq!(table.lines().count(), 5);
}

#[test]
fn census_table_and_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let c = config("experiment = census\nt = 4, 6\nm = 1, 2, 3\n", dir.path());
    let (r, _) = run_and_emit(&c).unwrap();
    let table = fs::read_to_string(dir.path().join("census_table.csv")).unwrap();
    assert!(table.contains("\n4,2,enumerate,"));
    assert!(r.summary.fitted_constants.is_some());
    assert!(r.summary.bounds.iter().all(|b| b.upper_log >= b.value_log - 1e-9));
    let text = fs::read_to_string(dir.path().join(RECORDS_CSV)).unwrap();
    let back = records_from_csv(&text).unwrap();
    let exact = back.iter().find(|x| x.t == Some(4) && x.m == Some(2) && x.metric == "exact").unwrap();
    assert_eq!(exact.value, 12.0);
}

#[test]
fn budgets_refuse_before_running() {
    let dir = tempfile::tempdir().unwrap();
    let c = config("experiment = cov-scaling\nt = 1000000\nell = 4\n", dir.path());
    assert!(run_and_emit(&c).is_err());
    assert!(fs::read_dir(dir.path()).unwrap().next().is_none());
}
