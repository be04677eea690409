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

//! Transcript files and replay.
//!
//! A transcript is CSV with header `u,v,answer` and one row per distinct
//! query, answers written as 0 or 1.

use std::io::{self, BufRead, Write};

use rustc_hash::FxHashMap;

use super::{check_witnessed, AdaptiveStrategy, DfsStrategy, OracleError, QueryLedger, RunOutcome, Step};
use crate::treekit::Vertex;

pub fn write_transcript<W: Write>(mut out: W, ledger: &QueryLedger) -> io::Result<()> {
    writeln!(out, "u,v,answer")?;
    for &(u, v, a) in &ledger.transcript {
        writeln!(out, "{u},{v},{}", u8::from(a))?;
    }
    Ok(())
}

pub fn read_transcript<R: BufRead>(input: R) -> Result<Vec<(Vertex, Vertex, bool)>, OracleError> {
    let mut rows = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line.map_err(|e| OracleError::Transcript { line: i + 1, msg: e.to_string() })?;
        let line = line.trim();
        if line.is_empty() || (i == 0 && line == "u,v,answer") {
            continue;
        }
        let bad = |msg: &str| OracleError::Transcript { line: i + 1, msg: msg.to_string() };
        let fields: Vec<&str> = line.split(',').collect();
        let [u, v, a] = fields[..] else {
            return Err(bad("expected three fields"));
        };
        let u = u.trim().parse().map_err(|_| bad("bad vertex"))?;
        let v = v.trim().parse().map_err(|_| bad("bad vertex"))?;
        let a = match a.trim() {
            "0" => false,
            "1" => true,
            _ => return Err(bad("answer must be 0 or 1")),
        };
        rows.push((u, v, a));
    }
    Ok(rows)
}

fn answers_of(
    transcript: &[(Vertex, Vertex, bool)],
) -> Result<FxHashMap<(Vertex, Vertex), bool>, OracleError> {
    let mut map = FxHashMap::default();
    for (i, &(u, v, a)) in transcript.iter().enumerate() {
        if map.insert((u.min(v), u.max(v)), a).is_some() {
            return Err(OracleError::Transcript { line: i + 2, msg: format!("pair {u}-{v} repeated") });
        }
    }
    Ok(map)
}

/// Checks a claimed path against a transcript alone: no repeated pairs, and
/// every step of the path answered positively.
pub fn validate_outcome(
    transcript: &[(Vertex, Vertex, bool)],
    n: u32,
    target_edges: u32,
    path: &[Vertex],
) -> Result<(), OracleError> {
    let answers = answers_of(transcript)?;
    check_witnessed(path, target_edges, n, |u, v| answers.get(&(u.min(v), u.max(v))) == Some(&true))
}

/// Re-runs the depth-first search with the recorded answers in place of the
/// hidden graph and checks that it asks exactly the recorded queries, in
/// the recorded order. No randomness is recomputed.
pub fn replay_dfs(
    transcript: &[(Vertex, Vertex, bool)],
    n: u32,
    target_edges: u32,
) -> Result<RunOutcome, OracleError> {
    if target_edges == 0 {
        return Err(OracleError::ZeroTarget);
    }
    let answers = answers_of(transcript)?;
    let mut strategy = DfsStrategy::new(n, target_edges);
    let mut ledger = QueryLedger::new();
    let mut last = None;
    let path = loop {
        match strategy.next_step(last, &ledger) {
            Step::Query(u, v) => {
                let index = ledger.transcript.len();
                let Some(&a) = answers.get(&(u.min(v), u.max(v))) else {
                    return Err(OracleError::ReplayMismatch {
                        index,
                        msg: format!("pair {u}-{v} was never recorded"),
                    });
                };
                if transcript.get(index) != Some(&(u, v, a)) {
                    return Err(OracleError::ReplayMismatch {
                        index,
                        msg: format!("search asks {u}-{v} here"),
                    });
                }
                ledger.record(u, v, a);
                last = Some(a);
            }
            Step::Stop => break None,
            Step::Declare(path) => break Some(path),
        }
    };
    if ledger.transcript.len() != transcript.len() {
        return Err(OracleError::ReplayMismatch {
            index: ledger.transcript.len(),
            msg: "search ends before the transcript does".into(),
        });
    }
    Ok(RunOutcome::from_ledger(path, ledger))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{dfs_find_path, HiddenGraph};

    #[test]
    fn round_trip_and_replay() {
        let mut g = HiddenGraph::new(300, 0.01, 5).unwrap();
        let out = dfs_find_path(&mut g, 10).unwrap();
        let mut buf = Vec::new();
        write_transcript(&mut buf, &out.ledger).unwrap();
        let rows = read_transcript(&buf[..]).unwrap();
        assert_eq!(rows, out.ledger.transcript);
        let again = replay_dfs(&rows, 300, 10).unwrap();
        assert_eq!(again, out);
        if let Some(path) = &out.path {
            validate_outcome(&rows, 300, 10, path).unwrap();
        }
    }

    #[test]
    fn tampered_transcripts_fail() {
        let mut g = HiddenGraph::new(100, 0.05, 8).unwrap();
        let out = dfs_find_path(&mut g, 5).unwrap();
        let mut rows = out.ledger.transcript.clone();
        let i = rows.iter().position(|r| !r.2).unwrap();
        rows[i].2 = true;
        assert!(replay_dfs(&rows, 100, 5).is_err());
        let mut dup = out.ledger.transcript.clone();
        dup.push(dup[0]);
        assert!(replay_dfs(&dup, 100, 5).is_err());
        assert!(validate_outcome(&out.ledger.transcript, 100, 5, &[1, 2, 3, 4, 5, 6]).is_err());
        assert!(read_transcript("u,v,answer\n1,2,x\n".as_bytes()).is_err());
    }
}
