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

//! Adaptive query model on a hidden `G(n, p)`.
//!
//! The answer for a pair is a pure function of `(seed, pair)`, so the hidden
//! graph is fixed before any query is made and does not depend on the order
//! in which a strategy asks.

mod dfs;
mod transcript;

pub use dfs::{dfs_find_path, DfsStrategy};
pub use transcript::{read_transcript, replay_dfs, validate_outcome, write_transcript};

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::treekit::Vertex;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("pair {u}-{v} is not a pair of distinct vertices in 1..={n}")]
    BadPair { u: Vertex, v: Vertex, n: u32 },
    #[error("target must be at least one edge")]
    ZeroTarget,
    #[error("declared path is not witnessed: {0}")]
    UnwitnessedPath(String),
    #[error("transcript line {line}: {msg}")]
    Transcript { line: usize, msg: String },
    #[error("replay diverged at query {index}: {msg}")]
    ReplayMismatch { index: usize, msg: String },
    #[error("edge probability {0} outside [0, 1]")]
    InvalidProbability(f64),
}

#[inline]
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

#[inline]
fn pair_key(u: Vertex, v: Vertex) -> u64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    (u64::from(a) << 32) | u64::from(b)
}

/// Lazily revealed `G(n, p)`.
#[derive(Clone, Debug)]
pub struct HiddenGraph {
    n: u32,
    p: f64,
    seed: u64,
    memo: FxHashMap<u64, bool>,
}

impl HiddenGraph {
    pub fn new(n: u32, p: f64, seed: u64) -> Result<Self, OracleError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(OracleError::InvalidProbability(p));
        }
        Ok(HiddenGraph { n, p, seed, memo: FxHashMap::default() })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The answer for `{u, v}` without recording anything.
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        let h = splitmix64(splitmix64(self.seed) ^ pair_key(u, v));
        ((h >> 11) as f64) * (1.0 / (1u64 << 53) as f64) < self.p
    }

    /// Every edge of the hidden graph, `(u, v)` with `u < v`.
    pub fn materialize(&self) -> Vec<(Vertex, Vertex)> {
        (1..=self.n)
            .flat_map(|u| (u + 1..=self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.adjacent(u, v))
            .collect()
    }

    /// The revealed answer for `{u, v}`, if it was queried.
    pub fn revealed(&self, u: Vertex, v: Vertex) -> Option<bool> {
        self.memo.get(&pair_key(u, v)).copied()
    }

    pub fn query(&mut self, ledger: &mut QueryLedger, u: Vertex, v: Vertex) -> Result<bool, OracleError> {
        if u == v || u == 0 || v == 0 || u > self.n || v > self.n {
            return Err(OracleError::BadPair { u, v, n: self.n });
        }
        let key = pair_key(u, v);
        if let Some(&answer) = self.memo.get(&key) {
            return Ok(answer);
        }
        let answer = self.adjacent(u, v);
        self.memo.insert(key, answer);
        ledger.record(u, v, answer);
        Ok(answer)
    }
}

/// Distinct queries in the order they were first asked.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QueryLedger {
    pub transcript: Vec<(Vertex, Vertex, bool)>,
    positives: u64,
}

impl QueryLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> u64 {
        self.transcript.len() as u64
    }

    pub fn positive_answers(&self) -> u64 {
        self.positives
    }

    pub(crate) fn record(&mut self, u: Vertex, v: Vertex, answer: bool) {
        self.transcript.push((u, v, answer));
        self.positives += u64::from(answer);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub success: bool,
    pub path: Option<Vec<Vertex>>,
    pub queries: u64,
    pub positive_answers: u64,
    pub ledger: QueryLedger,
}

impl RunOutcome {
    fn from_ledger(path: Option<Vec<Vertex>>, ledger: QueryLedger) -> Self {
        RunOutcome {
            success: path.is_some(),
            path,
            queries: ledger.count(),
            positive_answers: ledger.positive_answers(),
            ledger,
        }
    }
}

/// What a strategy does next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Query(Vertex, Vertex),
    /// Give up.
    Stop,
    /// Claim a path; it must be witnessed by positive answers.
    Declare(Vec<Vertex>),
}

/// An adaptive algorithm: each step may depend on every earlier answer.
pub trait AdaptiveStrategy {
    /// `last` is the answer to the previous query, if the previous step was
    /// a query.
    fn next_step(&mut self, last: Option<bool>, ledger: &QueryLedger) -> Step;
}

/// Drives `strategy` until it stops or declares a path with at least
/// `target_edges` edges; a declared path is checked against the answers.
pub fn run_strategy<S: AdaptiveStrategy + ?Sized>(
    hidden: &mut HiddenGraph,
    strategy: &mut S,
    target_edges: u32,
) -> Result<RunOutcome, OracleError> {
    if target_edges == 0 {
        return Err(OracleError::ZeroTarget);
    }
    let mut ledger = QueryLedger::new();
    let mut last = None;
    loop {
        match strategy.next_step(last, &ledger) {
            Step::Query(u, v) => last = Some(hidden.query(&mut ledger, u, v)?),
            Step::Stop => return Ok(RunOutcome::from_ledger(None, ledger)),
            Step::Declare(path) => {
                check_witnessed(&path, target_edges, hidden.n, |u, v| hidden.revealed(u, v) == Some(true))?;
                return Ok(RunOutcome::from_ledger(Some(path), ledger));
            }
        }
    }
}

/// A path is witnessed when it is simple, long enough, and each consecutive
/// pair was answered positively.
pub(crate) fn check_witnessed(
    path: &[Vertex],
    target_edges: u32,
    n: u32,
    positive: impl Fn(Vertex, Vertex) -> bool,
) -> Result<(), OracleError> {
    let fail = |msg: String| Err(OracleError::UnwitnessedPath(msg));
    if path.len() < target_edges as usize + 1 {
        return fail(format!("{} edges, need {target_edges}", path.len().saturating_sub(1)));
    }
    let mut seen = rustc_hash::FxHashSet::default();
    for &v in path {
        if v == 0 || v > n || !seen.insert(v) {
            return fail(format!("vertex {v} repeated or out of range"));
        }
    }
    if let Some(w) = path.windows(2).find(|w| !positive(w[0], w[1])) {
        return fail(format!("pair {}-{} has no positive answer", w[0], w[1]));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extreme_probabilities() {
        let mut ledger = QueryLedger::new();
        let mut g1 = HiddenGraph::new(10, 1.0, 3).unwrap();
        let mut g0 = HiddenGraph::new(10, 0.0, 3).unwrap();
        for u in 1..10 {
            assert!(g1.query(&mut ledger, u, u + 1).unwrap());
            assert!(!g0.query(&mut ledger, u, u + 1).unwrap());
        }
    }

    #[test]
    fn repeats_are_free_and_stable() {
        let mut g = HiddenGraph::new(50, 0.5, 9).unwrap();
        let mut ledger = QueryLedger::new();
        let a = g.query(&mut ledger, 3, 7).unwrap();
        assert_eq!(g.query(&mut ledger, 7, 3).unwrap(), a);
        assert_eq!(ledger.count(), 1);
        assert!(g.query(&mut ledger, 3, 3).is_err());
        assert!(g.query(&mut ledger, 0, 3).is_err());
        assert!(g.query(&mut ledger, 51, 3).is_err());
        assert!(HiddenGraph::new(5, 1.5, 0).is_err());
    }

    #[test]
    fn answers_ignore_query_order() {
        let pairs: Vec<(u32, u32)> = (1..30).flat_map(|u| (u + 1..=30).map(move |v| (u, v))).collect();
        let mut fwd = HiddenGraph::new(30, 0.3, 77).unwrap();
        let mut rev = HiddenGraph::new(30, 0.3, 77).unwrap();
        let (mut l1, mut l2) = (QueryLedger::new(), QueryLedger::new());
        let a: Vec<bool> = pairs.iter().map(|&(u, v)| fwd.query(&mut l1, u, v).unwrap()).collect();
        let mut b: Vec<bool> = pairs.iter().rev().map(|&(u, v)| rev.query(&mut l2, v, u).unwrap()).collect();
        b.reverse();
        assert_eq!(a, b);
    }

    struct Quitter;
    impl AdaptiveStrategy for Quitter {
        fn next_step(&mut self, _: Option<bool>, _: &QueryLedger) -> Step {
            Step::Stop
        }
    }

    struct Liar;
    impl AdaptiveStrategy for Liar {
        fn next_step(&mut self, last: Option<bool>, _: &QueryLedger) -> Step {
            match last {
                None => Step::Query(1, 2),
                Some(_) => Step::Declare(vec![1, 2, 3]),
            }
        }
    }

    #[test]
    fn strategy_contract() {
        let mut g = HiddenGraph::new(10, 1.0, 1).unwrap();
        let out = run_strategy(&mut g, &mut Quitter, 2).unwrap();
        assert!(!out.success);
        assert_eq!(out.queries, 0);
        let mut g = HiddenGraph::new(10, 1.0, 1).unwrap();
        assert!(matches!(run_strategy(&mut g, &mut Liar, 2), Err(OracleError::UnwitnessedPath(_))));
    }
}
