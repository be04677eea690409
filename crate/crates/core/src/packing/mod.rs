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

//! Path packings on trees and forests.
//!
//! Path length is the number of edges, except in [`split_path`] where the
//! segment threshold counts vertices.

mod brute;
mod centred;
mod cover;
mod greedy;
mod split;

pub use brute::{cov_bruteforce, BRUTE_FORCE_MAX};
pub use centred::{centred_edges, is_centred, CentredEdgeReport};
pub(crate) use centred::{count_centred, count_centred_multi, CentredScratch};
pub use cover::{cov_exact, cov_value, Cover, CoverSolver};
pub use greedy::greedy_pack;
pub use split::{split_path, Segment};

use std::fmt;

use rustc_hash::FxHashSet;
use thiserror::Error;

use crate::treekit::{Tree, Vertex};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PackingError {
    #[error("edge {0}-{1} is not in the tree")]
    EdgeAbsent(Vertex, Vertex),
    #[error("path length threshold must be at least 1")]
    ZeroLength,
    #[error("tree has {t} vertices, exhaustive search is limited to {max}")]
    TooLarge { t: u32, max: u32 },
    #[error("{removed} removed edges exceed alpha * n = {bound}")]
    TooManyRemoved { removed: usize, bound: f64 },
    #[error("alpha = {alpha} is below 1/n = {min}")]
    AlphaTooSmall { alpha: f64, min: f64 },
    #[error("edge index {index} outside 1..{n}")]
    EdgeIndexOutOfRange { index: u32, n: u32 },
    #[error("invalid path system: {0}")]
    InvalidSystem(String),
}

/// Vertex-disjoint paths in a host on `{1..host_size}`, each with at least
/// `min_edges` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSystem {
    pub host_size: u32,
    pub min_edges: u32,
    pub paths: Vec<Vec<Vertex>>,
}

impl PathSystem {
    pub fn empty(host_size: u32, min_edges: u32) -> Self {
        PathSystem {
            host_size,
            min_edges,
            paths: Vec::new(),
        }
    }

    /// Number of distinct vertices on the paths.
    pub fn covered(&self) -> usize {
        self.paths
            .iter()
            .flatten()
            .copied()
            .collect::<FxHashSet<_>>()
            .len()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.paths.iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    /// Checks every invariant against a host whose adjacency is `has_edge`.
    pub fn validate_with(&self, has_edge: impl Fn(Vertex, Vertex) -> bool) -> Result<(), PackingError> {
        let bad = |msg: String| Err(PackingError::InvalidSystem(msg));
        let mut seen = vec![false; self.host_size as usize + 1];
        for (i, path) in self.paths.iter().enumerate() {
            if path.len() < self.min_edges as usize + 1 {
                return bad(format!("path {i} has {} edges", path.len().saturating_sub(1)));
            }
            for &v in path {
                if v == 0 || v > self.host_size {
                    return bad(format!("vertex {v} outside the host"));
                }
                if std::mem::replace(&mut seen[v as usize], true) {
                    return bad(format!("vertex {v} used twice"));
                }
            }
            if let Some(w) = path.windows(2).find(|w| !has_edge(w[0], w[1])) {
                return bad(format!("{}-{} is not an edge", w[0], w[1]));
            }
        }
        Ok(())
    }

    pub fn validate_tree(&self, tree: &Tree) -> Result<(), PackingError> {
        if tree.len() != self.host_size {
            return Err(PackingError::InvalidSystem("host size mismatch".into()));
        }
        self.validate_with(|u, v| tree.has_edge(u, v))
    }

    /// Validates against a forest with concatenated vertex ids, as produced
    /// by [`cov_exact`].
    pub fn validate_forest(&self, forest: &[Tree]) -> Result<(), PackingError> {
        let mut offsets = Vec::with_capacity(forest.len() + 1);
        let mut total = 0u32;
        offsets.push(0);
        for tree in forest {
            total += tree.len();
            offsets.push(total);
        }
        if total != self.host_size {
            return Err(PackingError::InvalidSystem("host size mismatch".into()));
        }
        self.validate_with(|u, v| {
            let i = offsets.partition_point(|&o| o < u) - 1;
            let (lo, hi) = (offsets[i], offsets[i + 1]);
            v > lo && v <= hi && forest[i].has_edge(u - lo, v - lo)
        })
    }
}

/// One path per line, vertex ids separated by spaces.
impl fmt::Display for PathSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for path in &self.paths {
            let line: Vec<String> = path.iter().map(u32::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_catches_each_invariant() {
        let tree = Tree::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let ok = PathSystem {
            host_size: 5,
            min_edges: 1,
            paths: vec![vec![1, 2], vec![3, 4, 5]],
        };
        ok.validate_tree(&tree).unwrap();
        assert_eq!(ok.covered(), 5);
        assert_eq!(ok.to_string(), "1 2\n3 4 5\n");

        let mut overlap = ok.clone();
        overlap.paths[1] = vec![2, 3];
        assert!(overlap.validate_tree(&tree).is_err());
        let mut short = ok.clone();
        short.min_edges = 2;
        assert!(short.validate_tree(&tree).is_err());
        let mut gap = ok;
        gap.paths[1] = vec![3, 5];
        assert!(gap.validate_tree(&tree).is_err());
    }
}
