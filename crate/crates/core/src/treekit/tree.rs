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

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use super::TreeError;

/// Vertex label. Trees on `t` vertices use labels `1..=t`.
pub type Vertex = u32;

/// A labelled tree on the vertex set `{1..t}`.
///
/// Adjacency is stored in compressed form: the neighbours of `v` are
/// `neighbors[offsets[v]..offsets[v + 1]]`, sorted ascending. Slot 0 is
/// unused so labels index directly. Because neighbour lists are sorted,
/// two trees compare equal exactly when their edge sets are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    offsets: Vec<u32>,
    neighbors: Vec<Vertex>,
}

impl Tree {
    /// The single-vertex tree.
    pub fn singleton() -> Self {
        Tree {
            offsets: vec![0, 0, 0],
            neighbors: Vec::new(),
        }
    }

    /// Builds a tree from an edge list, checking every tree invariant.
    pub fn from_edges(t: u32, edges: &[(Vertex, Vertex)]) -> Result<Self, TreeError> {
        if t == 0 {
            return Err(TreeError::EmptyTree);
        }
        if edges.len() as u64 != u64::from(t) - 1 {
            return Err(TreeError::NotATree(format!(
                "expected {} edges, found {}",
                t - 1,
                edges.len()
            )));
        }
        for &(u, v) in edges {
            if u == 0 || v == 0 || u > t || v > t {
                return Err(TreeError::VertexOutOfRange { vertex: u.max(v), t });
            }
            if u == v {
                return Err(TreeError::NotATree(format!("self-loop at {u}")));
            }
        }
        let tree = Self::from_edges_unchecked(t, edges);
        tree.validate()?;
        Ok(tree)
    }

    /// Builds the adjacency without validation. Callers guarantee a tree.
    pub(crate) fn from_edges_unchecked(t: u32, edges: &[(Vertex, Vertex)]) -> Self {
        let n = t as usize;
        let mut offsets = vec![0u32; n + 2];
        for &(u, v) in edges {
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 1..offsets.len() {
            offsets[i] += offsets[i - 1];
        }
        let mut fill = offsets.clone();
        let mut neighbors = vec![0; 2 * edges.len()];
        for &(u, v) in edges {
            neighbors[fill[u as usize] as usize] = v;
            fill[u as usize] += 1;
            neighbors[fill[v as usize] as usize] = u;
            fill[v as usize] += 1;
        }
        for v in 1..=n {
            neighbors[offsets[v] as usize..offsets[v + 1] as usize].sort_unstable();
        }
        Tree { offsets, neighbors }
    }

    /// Builds a tree from a parent array (`parent[root] == 0`, index 0 unused).
    pub(crate) fn from_parents(parent: &[Vertex]) -> Self {
        let t = (parent.len() - 1) as u32;
        let edges: Vec<(Vertex, Vertex)> = (1..=t)
            .filter(|&v| parent[v as usize] != 0)
            .map(|v| (v, parent[v as usize]))
            .collect();
        Self::from_edges_unchecked(t, &edges)
    }

    /// Number of vertices.
    #[inline]
    pub fn len(&self) -> u32 {
        (self.offsets.len() - 2) as u32
    }

    /// Always false; trees have at least one vertex.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.neighbors[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u >= 1 && u <= self.len() && self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 1..=self.len() {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Checks edge count, symmetry, absence of loops/duplicates and connectivity.
    pub fn validate(&self) -> Result<(), TreeError> {
        let t = self.len();
        if self.edge_count() as u64 != u64::from(t) - 1 {
            return Err(TreeError::NotATree(format!(
                "{} edges on {t} vertices",
                self.edge_count()
            )));
        }
        for u in 1..=t {
            let nb = self.neighbors(u);
            for w in nb.windows(2) {
                if w[0] == w[1] {
                    return Err(TreeError::NotATree(format!("duplicate edge {u}-{}", w[0])));
                }
            }
            for &v in nb {
                if v == u {
                    return Err(TreeError::NotATree(format!("self-loop at {u}")));
                }
                if v == 0 || v > t {
                    return Err(TreeError::VertexOutOfRange { vertex: v, t });
                }
                if self.neighbors(v).binary_search(&u).is_err() {
                    return Err(TreeError::NotATree(format!("asymmetric edge {u}-{v}")));
                }
            }
        }
        let order = self.bfs(1).order;
        if order.len() != t as usize {
            return Err(TreeError::NotATree(format!(
                "disconnected: {} of {t} vertices reachable",
                order.len()
            )));
        }
        Ok(())
    }

    /// Breadth-first traversal from `root`: parent pointers and visit order.
    /// Children are visited in ascending label order.
    pub fn bfs(&self, root: Vertex) -> Traversal {
        let n = self.len() as usize;
        let mut parent = vec![0; n + 1];
        let mut seen = vec![false; n + 1];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::with_capacity(n);
        seen[root as usize] = true;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    parent[w as usize] = v;
                    queue.push_back(w);
                }
            }
        }
        Traversal { root, parent, order }
    }

    /// Relabels vertices: `v` becomes `perm[v - 1]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Tree {
        let edges: Vec<(Vertex, Vertex)> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u as usize - 1], perm[v as usize - 1]))
            .collect();
        Tree::from_edges_unchecked(self.len(), &edges)
    }

    /// Splits the subgraph induced by `vertices` into its connected
    /// components, each relabelled to `1..k` in ascending order of the
    /// original labels.
    pub fn induced_forest(&self, vertices: &[Vertex]) -> Vec<EmbeddedTree> {
        let n = self.len() as usize;
        let mut keep = vec![false; n + 1];
        for &v in vertices {
            keep[v as usize] = true;
        }
        let mut sorted: Vec<Vertex> = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut done = vec![false; n + 1];
        let mut out = Vec::new();
        for &start in &sorted {
            if done[start as usize] {
                continue;
            }
            let mut comp = vec![start];
            done[start as usize] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in self.neighbors(v) {
                    if keep[w as usize] && !done[w as usize] {
                        done[w as usize] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            let edges: Vec<(Vertex, Vertex)> = comp
                .iter()
                .flat_map(|&u| {
                    self.neighbors(u)
                        .iter()
                        .copied()
                        .filter(move |&w| u < w)
                        .map(move |w| (u, w))
                })
                .filter(|&(_, w)| keep[w as usize])
                .collect();
            out.push(EmbeddedTree::from_global(&comp, &edges));
        }
        out
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tree")
            .field("t", &self.len())
            .field("edges", &self.edges())
            .finish()
    }
}

/// Plain-text edge list: `t <count>` then one sorted `u v` pair per line.
impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "t {}", self.len())?;
        for (u, v) in self.edges() {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for Tree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| TreeError::Parse("missing header".into()))?;
        let t: u32 = header
            .strip_prefix("t ")
            .and_then(|c| c.trim().parse().ok())
            .ok_or_else(|| TreeError::Parse(format!("bad header {header:?}")))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace().map(str::parse::<u32>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
                _ => return Err(TreeError::Parse(format!("bad edge line {line:?}"))),
            }
        }
        Tree::from_edges(t, &edges)
    }
}

/// Result of a rooted traversal.
#[derive(Clone, Debug)]
pub struct Traversal {
    pub root: Vertex,
    /// `parent[root] == 0`; index 0 unused.
    pub parent: Vec<Vertex>,
    /// Breadth-first order; every vertex appears after its parent.
    pub order: Vec<Vertex>,
}

/// A tree stored with local labels `1..k` together with the global label of
/// each local vertex. Used for components cut out of a larger graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedTree {
    pub tree: Tree,
    /// `labels[i]` is the global label of local vertex `i + 1`.
    pub labels: Vec<Vertex>,
}

impl EmbeddedTree {
    /// `vertices` must be sorted; `edges` use global labels.
    pub(crate) fn from_global(vertices: &[Vertex], edges: &[(Vertex, Vertex)]) -> Self {
        let local = |g: Vertex| vertices.binary_search(&g).expect("edge endpoint in component") as u32 + 1;
        let local_edges: Vec<(Vertex, Vertex)> =
            edges.iter().map(|&(u, v)| (local(u), local(v))).collect();
        EmbeddedTree {
            tree: Tree::from_edges_unchecked(vertices.len() as u32, &local_edges),
            labels: vertices.to_vec(),
        }
    }

    pub fn global(&self, local: Vertex) -> Vertex {
        self.labels[local as usize - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_cycles_and_bad_counts() {
        assert!(Tree::from_edges(3, &[(1, 2), (2, 3), (3, 1)]).is_err());
        assert!(Tree::from_edges(4, &[(1, 2), (2, 1), (3, 4)]).is_err());
        assert!(Tree::from_edges(4, &[(1, 2), (3, 4), (3, 4)]).is_err());
        assert!(Tree::from_edges(3, &[(1, 4), (2, 3)]).is_err());
        assert!(Tree::from_edges(0, &[]).is_err());
        assert!(Tree::from_edges(1, &[]).is_ok());
    }

    #[test]
    fn text_round_trip() {
        let tree = Tree::from_edges(5, &[(5, 1), (2, 1), (3, 2), (4, 2)]).unwrap();
        let text = tree.to_string();
        assert_eq!(text, "t 5\n1 2\n1 5\n2 3\n2 4\n");
        assert_eq!(text.parse::<Tree>().unwrap(), tree);
        assert!("t 3\n1 2\n".parse::<Tree>().is_err());
        assert!("x 3".parse::<Tree>().is_err());
    }

    #[test]
    fn induced_forest_splits_components() {
        // path 1-2-3-4-5, keep {1,2,4,5}
        let tree = Tree::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let parts = tree.induced_forest(&[5, 1, 2, 4]);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].labels, vec![1, 2]);
        assert_eq!(parts[1].labels, vec![4, 5]);
        assert_eq!(parts[1].tree.edges(), vec![(1, 2)]);
    }
}
