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

//! m-centred edges.
//!
//! An edge `uv` is m-centred when `T - uv` has a path of at least `m - 1`
//! edges starting at `u` and another starting at `v`. Equivalently, both
//! components of `T - uv` have height at least `m - 1` when rooted at the
//! respective endpoint.

use std::collections::VecDeque;
use std::fmt;

use crate::treekit::{Tree, Vertex};

use super::PackingError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentredEdgeReport {
    pub m: u32,
    /// Edges `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(Vertex, Vertex)>,
    pub count: usize,
}

/// `m count` header followed by one `u v` edge per line.
impl fmt::Display for CentredEdgeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.m, self.count)?;
        for (u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

/// Height of the component of `tree - {u v}` that contains `from`, rooted at
/// `from`. Plain breadth-first search; used as the reference check.
fn side_height(tree: &Tree, from: Vertex, blocked: Vertex) -> u32 {
    let mut dist = vec![u32::MAX; tree.len() as usize + 1];
    dist[from as usize] = 0;
    dist[blocked as usize] = 0;
    let mut queue = VecDeque::from([from]);
    let mut best = 0;
    while let Some(x) = queue.pop_front() {
        for &y in tree.neighbors(x) {
            if dist[y as usize] == u32::MAX {
                dist[y as usize] = dist[x as usize] + 1;
                best = best.max(dist[y as usize]);
                queue.push_back(y);
            }
        }
    }
    best
}

/// Direct check of the m-centred predicate for one edge.
pub fn is_centred(tree: &Tree, edge: (Vertex, Vertex), m: u32) -> Result<bool, PackingError> {
    let (u, v) = edge;
    if !tree.has_edge(u, v) {
        return Err(PackingError::EdgeAbsent(u, v));
    }
    if m == 0 {
        return Err(PackingError::ZeroLength);
    }
    let need = m - 1;
    Ok(side_height(tree, u, v) >= need && side_height(tree, v, u) >= need)
}

/// Buffers for the rerooting pass.
#[derive(Clone, Debug, Default)]
pub(crate) struct CentredScratch {
    down: Vec<u32>,
    best1: Vec<u32>,
    best1_child: Vec<Vertex>,
    best2: Vec<u32>,
    above: Vec<u32>,
}

impl CentredScratch {
    /// Computes, for every non-root vertex `c`, the height of its own subtree
    /// (`down[c]`) and the height of its parent's side of the edge
    /// (`side(c)`), then calls `visit(c, down, side)`.
    ///
    /// `order` must list every vertex after all of its children; `parent`
    /// is 0 at the root. Two passes: heights bottom-up keeping the two best
    /// child branches per vertex, then the parent-side heights top-down.
    pub(crate) fn run(
        &mut self,
        parent: &[Vertex],
        order: &[Vertex],
        mut visit: impl FnMut(Vertex, u32, u32),
    ) {
        let n = parent.len();
        for buf in [&mut self.down, &mut self.best1, &mut self.best2, &mut self.above] {
            buf.clear();
            buf.resize(n, 0);
        }
        self.best1_child.clear();
        self.best1_child.resize(n, 0);

        for &c in order {
            let c = c as usize;
            let p = parent[c] as usize;
            if p == 0 {
                continue;
            }
            let h = self.down[c] + 1;
            if h > self.best1[p] {
                self.best2[p] = self.best1[p];
                self.best1[p] = h;
                self.best1_child[p] = c as Vertex;
            } else if h > self.best2[p] {
                self.best2[p] = h;
            }
            self.down[p] = self.best1[p];
        }
        for &c in order.iter().rev() {
            let ci = c as usize;
            let p = parent[ci] as usize;
            if p == 0 {
                continue;
            }
            let sibling = if self.best1_child[p] == c {
                self.best2[p]
            } else {
                self.best1[p]
            };
            let side = self.above[p].max(sibling);
            self.above[ci] = side + 1;
            visit(c, self.down[ci], side);
        }
    }
}

/// Counts m-centred edges from parent pointers, allocation-free after warmup.
pub(crate) fn count_centred(
    scratch: &mut CentredScratch,
    parent: &[Vertex],
    order: &[Vertex],
    m: u32,
) -> usize {
    let need = m.saturating_sub(1);
    let mut count = 0;
    scratch.run(parent, order, |_, down, side| {
        if down >= need && side >= need {
            count += 1;
        }
    });
    count
}

/// Counts m-centred edges for several thresholds in one pass.
pub(crate) fn count_centred_multi(
    scratch: &mut CentredScratch,
    parent: &[Vertex],
    order: &[Vertex],
    ms: &[u32],
    counts: &mut [u64],
) {
    scratch.run(parent, order, |_, down, side| {
        let h = down.min(side);
        for (i, &m) in ms.iter().enumerate() {
            if h + 1 >= m {
                counts[i] += 1;
            }
        }
    });
}

/// All m-centred edges, in O(t).
pub fn centred_edges(tree: &Tree, m: u32) -> Result<CentredEdgeReport, PackingError> {
    if m == 0 {
        return Err(PackingError::ZeroLength);
    }
    let traversal = tree.bfs(1);
    let order: Vec<Vertex> = traversal.order.iter().rev().copied().collect();
    let need = m - 1;
    let mut edges = Vec::new();
    CentredScratch::default().run(&traversal.parent, &order, |c, down, side| {
        if down >= need && side >= need {
            let p = traversal.parent[c as usize];
            edges.push((p.min(c), p.max(c)));
        }
    });
    edges.sort_unstable();
    Ok(CentredEdgeReport {
        m,
        count: edges.len(),
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: u32) -> Tree {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Tree::from_edges(n, &edges).unwrap()
    }

    fn star(n: u32) -> Tree {
        let edges: Vec<_> = (2..=n).map(|i| (1, i)).collect();
        Tree::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn predicate_examples() {
        let p = path(5);
        assert!(is_centred(&p, (2, 3), 2).unwrap());
        assert!(!is_centred(&p, (1, 2), 2).unwrap());
        assert!(is_centred(&p, (1, 2), 1).unwrap());
        assert!(is_centred(&p, (1, 3), 1).is_err());
    }

    #[test]
    fn census_of_small_trees() {
        let r = centred_edges(&path(5), 2).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.edges, vec![(2, 3), (3, 4)]);
        assert_eq!(centred_edges(&star(6), 2).unwrap().count, 0);
        assert_eq!(centred_edges(&star(6), 1).unwrap().count, 5);
        assert_eq!(centred_edges(&Tree::singleton(), 1).unwrap().count, 0);
        assert_eq!(centred_edges(&path(5), 0), Err(PackingError::ZeroLength));
    }

    #[test]
    fn report_text() {
        let r = centred_edges(&path(5), 2).unwrap();
        assert_eq!(r.to_string(), "2 2\n2 3\n3 4\n");
    }
}
