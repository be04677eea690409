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

//! Exact maximum path cover on trees.
//!
//! Tree dynamic programming over a rooted tree with threshold `L` (minimum
//! edges per path). For each vertex `v` the table holds the best number of
//! covered vertices inside the subtree of `v` when
//!
//! * `free[v]`: `v` lies on no path;
//! * `join[v]`: `v` is an inner vertex of a finished path that bends at `v`
//!   (two child branches meet there);
//! * `pend[v][d]`: `v` is the upper end of a path that has `d` edges below
//!   `v` and may still continue to the parent. Depths are capped at `L`:
//!   every pending path of `L` or more edges behaves the same way.
//!
//! A subtree is *closed* when nothing continues upward:
//! `closed[v] = max(free, join, pend[v][L])`. Combining children costs
//! `O(L)` per child, so the whole pass is `O(t * L)`.

use crate::treekit::{Tree, Vertex};

use super::{PackingError, PathSystem};

const NEG: i32 = i32::MIN / 4;

/// A child and the pending depth taken through it.
type Branch = (Vertex, usize);

#[inline]
fn valid(x: i32) -> bool {
    x > NEG / 2
}

/// Reusable DP tables.
#[derive(Debug, Default)]
pub struct CoverSolver {
    free: Vec<i32>,
    join: Vec<i32>,
    closed: Vec<i32>,
    pend: Vec<i32>,
    suffix: Vec<i32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Free,
    Join,
    /// Upper end of a pending path with this many edges below (capped).
    Pend(u32),
}

impl CoverSolver {
    pub fn new() -> Self {
        Self::default()
    }

    fn fill(&mut self, tree: &Tree, parent: &[Vertex], order: &[Vertex], len: u32) {
        let n = tree.len() as usize;
        let w = len as usize + 1;
        self.free.clear();
        self.free.resize(n + 1, 0);
        self.join.clear();
        self.join.resize(n + 1, NEG);
        self.closed.clear();
        self.closed.resize(n + 1, 0);
        self.pend.clear();
        self.pend.resize((n + 1) * w, NEG);
        self.suffix.clear();
        self.suffix.resize(w, NEG);

        let l = len as usize;
        for &v in order.iter().rev() {
            let vi = v as usize;
            let p = parent[vi];
            let base: i32 = tree
                .neighbors(v)
                .iter()
                .filter(|&&c| c != p)
                .map(|&c| self.closed[c as usize])
                .sum();
            self.free[vi] = base;
            let row = vi * w;
            self.pend[row] = base + 1;
            let mut join = NEG;
            self.suffix.iter_mut().for_each(|s| *s = NEG);
            for &c in tree.neighbors(v) {
                if c == p {
                    continue;
                }
                let ci = c as usize;
                let crow = ci * w;
                let cc = self.closed[ci];
                for d in 0..=l {
                    let pc = self.pend[crow + d];
                    if !valid(pc) {
                        continue;
                    }
                    let g = pc - cc;
                    let nd = (d + 1).min(l);
                    let cand = base + 1 + g;
                    if cand > self.pend[row + nd] {
                        self.pend[row + nd] = cand;
                    }
                    let need = l.saturating_sub(d + 2);
                    let other = self.suffix[need];
                    if valid(other) && base + 1 + g + other > join {
                        join = base + 1 + g + other;
                    }
                }
                let mut running = NEG;
                for d in (0..=l).rev() {
                    let pc = self.pend[crow + d];
                    if valid(pc) && pc - cc > running {
                        running = pc - cc;
                    }
                    if running > self.suffix[d] {
                        self.suffix[d] = running;
                    }
                }
            }
            self.join[vi] = join;
            self.closed[vi] = base.max(join).max(self.pend[row + l]);
        }
    }

    /// Maximum number of vertices covered by vertex-disjoint paths with at
    /// least `min_edges` edges each.
    pub fn value(&mut self, tree: &Tree, min_edges: u32) -> Result<u32, PackingError> {
        if min_edges == 0 {
            return Err(PackingError::ZeroLength);
        }
        let traversal = tree.bfs(1);
        self.fill(tree, &traversal.parent, &traversal.order, min_edges);
        Ok(self.closed[1] as u32)
    }

    /// Optimal value together with a witness path system (labels of `tree`).
    pub fn solve(&mut self, tree: &Tree, min_edges: u32) -> Result<(u32, Vec<Vec<Vertex>>), PackingError> {
        if min_edges == 0 {
            return Err(PackingError::ZeroLength);
        }
        let traversal = tree.bfs(1);
        let (parent, order) = (&traversal.parent, &traversal.order);
        self.fill(tree, parent, order, min_edges);
        let value = self.closed[1];
        let paths = self.reconstruct(tree, parent, order, min_edges);
        debug_assert_eq!(paths.iter().map(Vec::len).sum::<usize>(), value as usize);
        Ok((value as u32, paths))
    }

    fn closed_role(&self, v: usize, l: usize) -> Role {
        let w = l + 1;
        let best = self.closed[v];
        if self.free[v] == best {
            Role::Free
        } else if self.pend[v * w + l] == best {
            Role::Pend(l as u32)
        } else {
            debug_assert_eq!(self.join[v], best);
            Role::Join
        }
    }

    fn reconstruct(&self, tree: &Tree, parent: &[Vertex], order: &[Vertex], len: u32) -> Vec<Vec<Vertex>> {
        let n = tree.len() as usize;
        let l = len as usize;
        let w = l + 1;
        // None = closed requirement, Some(d) = must be pending with d edges
        let mut need: Vec<Option<u32>> = vec![None; n + 1];
        let mut down: Vec<[Vertex; 2]> = vec![[0, 0]; n + 1];
        let mut tops: Vec<(Vertex, Role)> = Vec::new();

        for &v in order {
            let vi = v as usize;
            let p = parent[vi];
            let role = match need[vi] {
                None => {
                    let r = self.closed_role(vi, l);
                    if r != Role::Free {
                        tops.push((v, r));
                    }
                    r
                }
                Some(d) => Role::Pend(d),
            };
            let children = tree.neighbors(v).iter().copied().filter(|&c| c != p);
            match role {
                Role::Free | Role::Pend(0) => {}
                Role::Pend(target) => {
                    let target = target as usize;
                    let mut best: Option<(i32, Vertex, usize)> = None;
                    for c in children {
                        let ci = c as usize;
                        for d in 0..=l {
                            let pc = self.pend[ci * w + d];
                            if valid(pc) && (d + 1).min(l) == target {
                                let g = pc - self.closed[ci];
                                if best.is_none_or(|(bg, _, _)| g > bg) {
                                    best = Some((g, c, d));
                                }
                            }
                        }
                    }
                    let (_, c, d) = best.expect("pending state has a realising child");
                    need[c as usize] = Some(d as u32);
                    down[vi][0] = c;
                }
                Role::Join => {
                    // suffix[e] = best (gain, child, depth) over earlier children with depth >= e
                    let mut suffix: Vec<Option<(i32, Vertex, usize)>> = vec![None; w];
                    // (gain, first branch, second branch), a branch being (child, depth)
                    let mut best: Option<(i32, Branch, Branch)> = None;
                    for c in children {
                        let ci = c as usize;
                        let cc = self.closed[ci];
                        for d in 0..=l {
                            let pc = self.pend[ci * w + d];
                            if !valid(pc) {
                                continue;
                            }
                            let g = pc - cc;
                            if let Some((og, oc, od)) = suffix[l.saturating_sub(d + 2)] {
                                if best.is_none_or(|(bg, _, _)| g + og > bg) {
                                    best = Some((g + og, (oc, od), (c, d)));
                                }
                            }
                        }
                        let mut running: Option<(i32, Vertex, usize)> = None;
                        for d in (0..=l).rev() {
                            let pc = self.pend[ci * w + d];
                            if valid(pc) && running.is_none_or(|(rg, _, _)| pc - cc > rg) {
                                running = Some((pc - cc, c, d));
                            }
                            if let Some(r) = running {
                                if suffix[d].is_none_or(|s| r.0 > s.0) {
                                    suffix[d] = Some(r);
                                }
                            }
                        }
                    }
                    let (_, (c1, d1), (c2, d2)) = best.expect("join state has a realising pair");
                    need[c1 as usize] = Some(d1 as u32);
                    need[c2 as usize] = Some(d2 as u32);
                    down[vi] = [c1, c2];
                }
            }
        }

        let chain = |start: Vertex| {
            let mut out = Vec::new();
            let mut x = start;
            while x != 0 {
                out.push(x);
                x = down[x as usize][0];
            }
            out
        };
        tops.into_iter()
            .map(|(v, role)| match role {
                Role::Join => {
                    let [c1, c2] = down[v as usize];
                    let mut path = chain(c1);
                    path.reverse();
                    path.push(v);
                    path.extend(chain(c2));
                    path
                }
                _ => chain(v),
            })
            .collect()
    }
}

/// Exact cover value and witness for a forest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub value: u64,
    pub witness: PathSystem,
}

/// Exact `cov` of a forest: the maximum number of vertices covered by
/// vertex-disjoint paths with at least `min_edges` edges, summed over trees.
///
/// Witness vertices use forest-wide ids: vertex `v` of the `i`-th tree is
/// reported as `v + t_0 + ... + t_{i-1}`.
pub fn cov_exact(forest: &[Tree], min_edges: u32) -> Result<Cover, PackingError> {
    if min_edges == 0 {
        return Err(PackingError::ZeroLength);
    }
    let mut solver = CoverSolver::new();
    let mut offset = 0u32;
    let mut value = 0u64;
    let mut paths = Vec::new();
    for tree in forest {
        let (v, tree_paths) = solver.solve(tree, min_edges)?;
        value += u64::from(v);
        paths.extend(
            tree_paths
                .into_iter()
                .map(|p| p.into_iter().map(|x| x + offset).collect::<Vec<_>>()),
        );
        offset += tree.len();
    }
    Ok(Cover {
        value,
        witness: PathSystem {
            host_size: offset,
            min_edges,
            paths,
        },
    })
}

/// Value-only variant of [`cov_exact`] for a single tree.
pub fn cov_value(tree: &Tree, min_edges: u32) -> Result<u32, PackingError> {
    CoverSolver::new().value(tree, min_edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: u32) -> Tree {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Tree::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn path_is_covered_whole() {
        let c = cov_exact(&[path(5)], 2).unwrap();
        assert_eq!(c.value, 5);
        assert_eq!(c.witness.paths.len(), 1);
        assert_eq!(cov_value(&path(12), 11).unwrap(), 12);
        assert_eq!(cov_value(&path(12), 12).unwrap(), 0);
    }

    #[test]
    fn star_and_spider() {
        let star = Tree::from_edges(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(cov_value(&star, 2).unwrap(), 3);
        assert_eq!(cov_value(&star, 3).unwrap(), 0);
        assert_eq!(cov_value(&star, 1).unwrap(), 3);
        // centre 1, legs 1-2-3, 1-4-5, 1-6-7
        let spider =
            Tree::from_edges(7, &[(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)]).unwrap();
        let c = cov_exact(std::slice::from_ref(&spider), 2).unwrap();
        assert_eq!(c.value, 5);
        c.witness.validate_forest(&[spider]).unwrap();
    }

    #[test]
    fn forest_offsets_witness() {
        let forest = vec![path(3), Tree::singleton(), path(4)];
        let c = cov_exact(&forest, 2).unwrap();
        assert_eq!(c.value, 7);
        assert_eq!(c.witness.host_size, 8);
        c.witness.validate_forest(&forest).unwrap();
        assert!(c.witness.paths.iter().any(|p| p.contains(&8)));
    }

    #[test]
    fn zero_threshold_rejected() {
        assert_eq!(cov_value(&path(3), 0), Err(PackingError::ZeroLength));
    }
}
