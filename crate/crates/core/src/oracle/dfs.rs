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

//! Depth-first search for a long path.
//!
//! The active path is a stack. The top vertex is tested against unvisited
//! vertices in ascending label order: a positive answer pushes the new
//! vertex, running out of candidates pops the top for good. When the stack
//! empties, the smallest unvisited vertex starts a new search without a query.

use std::collections::BTreeSet;

use super::{run_strategy, AdaptiveStrategy, HiddenGraph, OracleError, QueryLedger, RunOutcome, Step};
use crate::treekit::Vertex;

/// Smallest unvisited label `>= x`, with path compression; `n + 1` is the
/// sentinel.
struct Unvisited {
    next: Vec<Vertex>,
}

impl Unvisited {
    fn new(n: u32) -> Self {
        Unvisited { next: (0..=n + 1).collect() }
    }

    fn successor(&mut self, x: Vertex) -> Vertex {
        let mut root = x;
        while self.next[root as usize] != root {
            root = self.next[root as usize];
        }
        let mut y = x;
        while self.next[y as usize] != root {
            let up = self.next[y as usize];
            self.next[y as usize] = root;
            y = up;
        }
        root
    }

    fn remove(&mut self, x: Vertex) {
        self.next[x as usize] = x + 1;
    }
}

/// Runs the depth-first search until the stack holds `target_edges + 1`
/// vertices or every vertex has been popped.
pub fn dfs_find_path(hidden: &mut HiddenGraph, target_edges: u32) -> Result<RunOutcome, OracleError> {
    if target_edges == 0 {
        return Err(OracleError::ZeroTarget);
    }
    let n = hidden.n();
    let mut ledger = QueryLedger::new();
    let mut unvisited = Unvisited::new(n);
    // (vertex, last label it was tested against)
    let mut stack: Vec<(Vertex, Vertex)> = Vec::new();
    loop {
        let Some(&(v, cursor)) = stack.last() else {
            let s = unvisited.successor(1);
            if s > n {
                return Ok(RunOutcome::from_ledger(None, ledger));
            }
            unvisited.remove(s);
            stack.push((s, 0));
            continue;
        };
        if stack.len() > target_edges as usize {
            let path = stack.iter().map(|&(x, _)| x).collect();
            return Ok(RunOutcome::from_ledger(Some(path), ledger));
        }
        let w = unvisited.successor(cursor + 1);
        if w > n {
            stack.pop();
            continue;
        }
        stack.last_mut().expect("non-empty").1 = w;
        if hidden.query(&mut ledger, v, w)? {
            unvisited.remove(w);
            stack.push((w, 0));
        }
    }
}

/// The same search as [`dfs_find_path`], written as a step-by-step strategy.
#[derive(Clone, Debug)]
pub struct DfsStrategy {
    target_edges: u32,
    unvisited: BTreeSet<Vertex>,
    stack: Vec<Vertex>,
    /// The pair awaiting an answer.
    pending: Option<Vertex>,
    /// Per stack entry, the last candidate tested.
    tried: Vec<Vertex>,
}

impl DfsStrategy {
    pub fn new(n: u32, target_edges: u32) -> Self {
        DfsStrategy {
            target_edges,
            unvisited: (1..=n).collect(),
            stack: Vec::new(),
            pending: None,
            tried: Vec::new(),
        }
    }

    /// Runs the strategy through [`run_strategy`].
    pub fn run(hidden: &mut HiddenGraph, target_edges: u32) -> Result<RunOutcome, OracleError> {
        let mut s = DfsStrategy::new(hidden.n(), target_edges);
        run_strategy(hidden, &mut s, target_edges)
    }
}

impl AdaptiveStrategy for DfsStrategy {
    fn next_step(&mut self, last: Option<bool>, _: &QueryLedger) -> Step {
        if let (Some(w), Some(answer)) = (self.pending.take(), last) {
            if answer {
                self.unvisited.remove(&w);
                self.stack.push(w);
                self.tried.push(0);
            }
        }
        loop {
            if self.stack.len() > self.target_edges as usize {
                return Step::Declare(self.stack.clone());
            }
            let Some(&v) = self.stack.last() else {
                match self.unvisited.pop_first() {
                    Some(s) => {
                        self.stack.push(s);
                        self.tried.push(0);
                        continue;
                    }
                    None => return Step::Stop,
                }
            };
            let after = *self.tried.last().expect("aligned with stack");
            match self.unvisited.range(after + 1..).next() {
                Some(&w) => {
                    *self.tried.last_mut().expect("aligned with stack") = w;
                    self.pending = Some(w);
                    return Step::Query(v, w);
                }
                None => {
                    self.stack.pop();
                    self.tried.pop();
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_extends_every_time() {
        let mut g = HiddenGraph::new(20, 1.0, 0).unwrap();
        let out = dfs_find_path(&mut g, 5).unwrap();
        assert!(out.success);
        assert_eq!(out.queries, 5);
        assert_eq!(out.path, Some(vec![1, 2, 3, 4, 5, 6]));
    }

    #[test]
    fn empty_graph_asks_everything_once() {
        let mut g = HiddenGraph::new(25, 0.0, 0).unwrap();
        let out = dfs_find_path(&mut g, 3).unwrap();
        assert!(!out.success);
        assert_eq!(out.queries, 25 * 24 / 2);
    }

    #[test]
    fn strategy_form_agrees() {
        for seed in 0..30 {
            for (n, p, target) in [(60, 0.05, 6), (200, 0.01, 12), (40, 0.5, 30)] {
                let a = dfs_find_path(&mut HiddenGraph::new(n, p, seed).unwrap(), target).unwrap();
                let b = DfsStrategy::run(&mut HiddenGraph::new(n, p, seed).unwrap(), target).unwrap();
                assert_eq!(a, b);
            }
        }
    }
}
