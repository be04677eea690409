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

//! Per-trial records and their CSV form.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::LabError;

pub const RECORD_HEADER: &str = "experiment,seed,trial,t,ell,m,n,eps,delta,metric,value";

/// Grid coordinates of a cell; unused parameters are `None`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub t: Option<u32>,
    pub ell: Option<u32>,
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub eps: Option<f64>,
    pub delta: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub experiment: String,
    pub seed: u64,
    pub trial: u32,
    pub t: Option<u32>,
    pub ell: Option<u32>,
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub eps: Option<f64>,
    pub delta: Option<f64>,
    pub metric: String,
    pub value: f64,
}

impl TrialRecord {
    pub fn new(experiment: &str, seed: u64, trial: u32, cell: &Cell, metric: &str, value: f64) -> Self {
        TrialRecord {
            experiment: experiment.to_string(),
            seed,
            trial,
            t: cell.t,
            ell: cell.ell,
            m: cell.m,
            n: cell.n,
            eps: cell.eps,
            delta: cell.delta,
            metric: metric.to_string(),
            value,
        }
    }

    pub fn cell(&self) -> Cell {
        Cell { t: self.t, ell: self.ell, m: self.m, n: self.n, eps: self.eps, delta: self.delta }
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Header plus one newline-terminated row per record. Floats use the
/// shortest representation that parses back to the same value.
pub fn records_to_csv(records: &[TrialRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(RECORD_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.experiment,
            r.seed,
            r.trial,
            opt(r.t),
            opt(r.ell),
            opt(r.m),
            opt(r.n),
            opt(r.eps),
            opt(r.delta),
            r.metric,
            r.value
        );
    }
    out
}

pub fn records_from_csv(text: &str) -> Result<Vec<TrialRecord>, LabError> {
    let mut lines = text.lines();
    if lines.next() != Some(RECORD_HEADER) {
        return Err(LabError::Parse("records table has an unexpected header".into()));
    }
    let mut out = Vec::new();
    for (i, line) in lines.enumerate() {
        let bad = |what: &str| LabError::Parse(format!("records row {}: bad {what}", i + 1));
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 11 {
            return Err(bad("field count"));
        }
        fn parse_opt<T: std::str::FromStr>(s: &str) -> Result<Option<T>, ()> {
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse().map(Some).map_err(|_| ())
            }
        }
        out.push(TrialRecord {
            experiment: f[0].to_string(),
            seed: f[1].parse().map_err(|_| bad("seed"))?,
            trial: f[2].parse().map_err(|_| bad("trial"))?,
            t: parse_opt(f[3]).map_err(|_| bad("t"))?,
            ell: parse_opt(f[4]).map_err(|_| bad("ell"))?,
            m: parse_opt(f[5]).map_err(|_| bad("m"))?,
            n: parse_opt(f[6]).map_err(|_| bad("n"))?,
            eps: parse_opt(f[7]).map_err(|_| bad("eps"))?,
            delta: parse_opt(f[8]).map_err(|_| bad("delta"))?,
            metric: f[9].to_string(),
            value: f[10].parse().map_err(|_| bad("value"))?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let cell = Cell { t: Some(10), ell: Some(3), eps: Some(0.1), ..Cell::default() };
        let records = vec![
            TrialRecord::new("cov_scaling", 5, 0, &cell, "cov", 7.0),
            TrialRecord::new("cov_scaling", 5, 1, &cell, "ratio", 1.0 / 3.0),
        ];
        let text = records_to_csv(&records);
        assert!(text.starts_with(RECORD_HEADER));
        assert!(text.contains("cov_scaling,5,0,10,3,,,0.1,,cov,7\n"));
        assert_eq!(records_from_csv(&text).unwrap(), records);
        assert_eq!(records_to_csv(&[]), format!("{RECORD_HEADER}\n"));
        assert!(records_from_csv("a,b\n").is_err());
    }
}
