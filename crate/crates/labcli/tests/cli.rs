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

//! The binary end to end: exit codes, overrides and transcript replay.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn pathlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathlab")).args(args).output().expect("binary runs")
}

fn out_arg(dir: &Path) -> String {
    dir.display().to_string()
}

#[test]
fn passing_run_exits_zero_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = pathlab(&["run", "--experiment", "cov_scaling", "--t", "1000,2000", "--ell", "3", "--trials", "8", "--out", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("PASS"));
    for f in ["records.csv", "summary.json", "plot_cov_ell3.csv"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
}

#[test]
fn failing_predicate_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = pathlab(&[
        "run", "--experiment", "adaptive", "--n", "200", "--eps", "1", "--trials", "2",
        "--set", "success_min=1.5", "--out", &out_arg(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL success["));
}

#[test]
fn errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(pathlab(&["run"]).status.code(), Some(2));
    let o = pathlab(&["run", "--experiment", "census", "--t", "12", "--m", "0", "--out", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
    let o = pathlab(&["run", "--experiment", "gnp", "--n", "5000000", "--out", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.cfg");
    fs::write(&config, "experiment = cov_scaling\nseed = 3\ntrials = 4\nt = 50\nell = 2\n").unwrap();
    let out = dir.path().join("out");
    let o = pathlab(&["run", "--config", config.to_str().unwrap(), "--t", "60", "--seed", "9", "--out", &out_arg(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let records = fs::read_to_string(out.join("records.csv")).unwrap();
    let row = records.lines().nth(1).unwrap();
    assert!(row.starts_with("cov_scaling,9,0,60,2,"), "{row}");
}

#[test]
fn replay_checks_a_recorded_search() {
    let dir = tempfile::tempdir().unwrap();
    let o = pathlab(&[
        "run", "--experiment", "adaptive", "--n", "300", "--eps", "0.8", "--ell", "15", "--trials", "1",
        "--set", "transcripts=true", "--out", &out_arg(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let transcript = dir.path().join("transcripts").join("cell0_trial0.csv");
    let t = transcript.to_str().unwrap();
    let o = pathlab(&["replay", "--transcript", t, "--n", "300", "--ell", "15"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("is witnessed"));

    // a path whose first step was never answered positively
    let o = pathlab(&["replay", "--transcript", t, "--n", "300", "--ell", "1", "--path", "1,2"]);
    assert_ne!(o.status.code(), Some(0));

    // dropping the last query breaks the replay
    let text = fs::read_to_string(&transcript).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.pop();
    let cut = dir.path().join("cut.csv");
    fs::write(&cut, lines.join("\n") + "\n").unwrap();
    let o = pathlab(&["replay", "--transcript", cut.to_str().unwrap(), "--n", "300", "--ell", "15"]);
    assert_eq!(o.status.code(), Some(2));
}
