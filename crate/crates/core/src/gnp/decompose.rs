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

//! Components, giant 2-core and the forest hanging off it.

use std::collections::VecDeque;

use super::GnpGraph;
use crate::treekit::{EmbeddedTree, Vertex};

/// Union by size with path halving.
struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n as u32).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
    }
}

/// Groups `vertices` by their set in `sets`; each group sorted.
fn groups(sets: &mut DisjointSets, vertices: impl Iterator<Item = Vertex>) -> Vec<Vec<Vertex>> {
    let mut index = vec![u32::MAX; sets.parent.len()];
    let mut out: Vec<Vec<Vertex>> = Vec::new();
    for v in vertices {
        let r = sets.find(v) as usize;
        if index[r] == u32::MAX {
            index[r] = out.len() as u32;
            out.push(Vec::new());
        }
        out[index[r] as usize].push(v);
    }
    out
}

/// A component with a cycle, kept with one spanning tree of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicComponent {
    pub spanning_tree: EmbeddedTree,
    pub edges: usize,
}

impl CyclicComponent {
    pub fn vertices(&self) -> u32 {
        self.spanning_tree.tree.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GnpDecomposition {
    pub n: u32,
    /// Vertex sets, sorted by size descending then smallest vertex; each
    /// set sorted. The first one is the giant.
    pub components: Vec<Vec<Vertex>>,
    /// Edge count of each component, aligned with `components`.
    pub component_edges: Vec<usize>,
    /// 2-core of the giant: sorted vertices and its (induced) edges.
    pub two_core: Vec<Vertex>,
    pub two_core_edges: Vec<(Vertex, Vertex)>,
    /// Components of the giant once the 2-core edges are deleted, sorted by
    /// smallest vertex. With a non-empty core each holds exactly one core
    /// vertex; otherwise the single entry is the whole giant.
    pub hanging_forest: Vec<EmbeddedTree>,
    /// Non-giant components without a cycle.
    pub small_trees: Vec<EmbeddedTree>,
    /// Non-giant components with a cycle.
    pub small_cyclic: Vec<CyclicComponent>,
}

impl GnpDecomposition {
    pub fn giant(&self) -> &[Vertex] {
        &self.components[0]
    }

    pub fn second_size(&self) -> usize {
        self.components.get(1).map_or(0, Vec::len)
    }
}

pub fn decompose(graph: &GnpGraph) -> GnpDecomposition {
    let n = graph.n as usize;
    let mut sets = DisjointSets::new(n + 1);
    for &(u, v) in &graph.edges {
        sets.union(u, v);
    }
    let mut components = groups(&mut sets, 1..=graph.n);
    components.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let mut comp_of = vec![0u32; n + 1];
    for (i, comp) in components.iter().enumerate() {
        for &v in comp {
            comp_of[v as usize] = i as u32;
        }
    }
    let mut comp_edges: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); components.len()];
    for &(u, v) in &graph.edges {
        comp_edges[comp_of[u as usize] as usize].push((u, v));
    }
    let (offsets, targets) = graph.adjacency();
    let neighbors = |v: Vertex| &targets[offsets[v as usize]..offsets[v as usize + 1]];

    // peel the giant down to its 2-core
    let giant = &components[0];
    let mut degree: Vec<u32> = vec![0; n + 1];
    let mut removed = vec![true; n + 1];
    let mut queue = VecDeque::new();
    for &v in giant {
        degree[v as usize] = neighbors(v).len() as u32;
        removed[v as usize] = false;
        if degree[v as usize] <= 1 {
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        if removed[v as usize] {
            continue;
        }
        removed[v as usize] = true;
        for &w in neighbors(v) {
            if !removed[w as usize] {
                degree[w as usize] -= 1;
                if degree[w as usize] == 1 {
                    queue.push_back(w);
                }
            }
        }
    }
    let in_core = |v: Vertex| !removed[v as usize];
    let two_core: Vec<Vertex> = giant.iter().copied().filter(|&v| in_core(v)).collect();
    let (two_core_edges, hanging_edges): (Vec<_>, Vec<_>) =
        comp_edges[0].iter().partition(|&&(u, v)| in_core(u) && in_core(v));

    let mut forest_sets = DisjointSets::new(n + 1);
    for &(u, v) in &hanging_edges {
        forest_sets.union(u, v);
    }
    let mut pieces = groups(&mut forest_sets, giant.iter().copied());
    pieces.sort_by_key(|p| p[0]);
    let mut piece_edges: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); pieces.len()];
    let mut piece_of = vec![0u32; n + 1];
    for (i, piece) in pieces.iter().enumerate() {
        for &v in piece {
            piece_of[v as usize] = i as u32;
        }
    }
    for &(u, v) in &hanging_edges {
        piece_edges[piece_of[u as usize] as usize].push((u, v));
    }
    let hanging_forest = pieces
        .iter()
        .zip(&piece_edges)
        .map(|(vs, es)| EmbeddedTree::from_global(vs, es))
        .collect();

    let mut small_trees = Vec::new();
    let mut small_cyclic = Vec::new();
    let mut seen = vec![false; n + 1];
    for (comp, edges) in components.iter().zip(&comp_edges).skip(1) {
        if edges.len() + 1 == comp.len() {
            small_trees.push(EmbeddedTree::from_global(comp, edges));
            continue;
        }
        // breadth-first spanning tree
        let mut tree_edges = Vec::with_capacity(comp.len() - 1);
        let mut queue = VecDeque::from([comp[0]]);
        seen[comp[0] as usize] = true;
        while let Some(x) = queue.pop_front() {
            for &y in neighbors(x) {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    tree_edges.push((x.min(y), x.max(y)));
                    queue.push_back(y);
                }
            }
        }
        small_cyclic.push(CyclicComponent {
            spanning_tree: EmbeddedTree::from_global(comp, &tree_edges),
            edges: edges.len(),
        });
    }

    GnpDecomposition {
        n: graph.n,
        component_edges: comp_edges.iter().map(Vec::len).collect(),
        components,
        two_core,
        two_core_edges,
        hanging_forest,
        small_trees,
        small_cyclic,
    }
}

/// Independent check of every decomposition invariant. The 2-core is
/// recomputed by repeated full sweeps (quadratic in the worst case).
pub fn validate_decomposition(graph: &GnpGraph, d: &GnpDecomposition) -> Result<(), String> {
    let n = graph.n as usize;
    let (offsets, targets) = graph.adjacency();
    let neighbors = |v: Vertex| &targets[offsets[v as usize]..offsets[v as usize + 1]];

    // partition into connected, closed, correctly ordered parts
    let mut owner = vec![usize::MAX; n + 1];
    for (i, comp) in d.components.iter().enumerate() {
        if comp.is_empty() || comp.windows(2).any(|w| w[0] >= w[1]) {
            return Err(format!("component {i} empty or unsorted"));
        }
        for &v in comp {
            if owner[v as usize] != usize::MAX {
                return Err(format!("vertex {v} in two components"));
            }
            owner[v as usize] = i;
        }
    }
    if owner[1..].contains(&usize::MAX) {
        return Err("components do not cover every vertex".into());
    }
    if d.components
        .windows(2)
        .any(|w| (w[0].len(), std::cmp::Reverse(w[0][0])) < (w[1].len(), std::cmp::Reverse(w[1][0])))
    {
        return Err("components out of order".into());
    }
    let mut edge_count = vec![0usize; d.components.len()];
    for &(u, v) in &graph.edges {
        if owner[u as usize] != owner[v as usize] {
            return Err(format!("edge {u}-{v} joins two components"));
        }
        edge_count[owner[u as usize]] += 1;
    }
    if edge_count != d.component_edges {
        return Err("component edge counts differ".into());
    }
    for (i, comp) in d.components.iter().enumerate() {
        let mut reached = vec![false; n + 1];
        let mut stack = vec![comp[0]];
        reached[comp[0] as usize] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in neighbors(x) {
                if !reached[y as usize] {
                    reached[y as usize] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        if count != comp.len() {
            return Err(format!("component {i} is not connected"));
        }
    }

    // 2-core by sweeping until nothing changes
    let mut alive = vec![false; n + 1];
    for &v in d.giant() {
        alive[v as usize] = true;
    }
    loop {
        let doomed: Vec<Vertex> = d
            .giant()
            .iter()
            .copied()
            .filter(|&v| alive[v as usize] && neighbors(v).iter().filter(|&&w| alive[w as usize]).count() < 2)
            .collect();
        if doomed.is_empty() {
            break;
        }
        for v in doomed {
            alive[v as usize] = false;
        }
    }
    let core: Vec<Vertex> = d.giant().iter().copied().filter(|&v| alive[v as usize]).collect();
    if core != d.two_core {
        return Err("2-core differs from the sweep recomputation".into());
    }
    let core_edges: Vec<_> = graph
        .edges
        .iter()
        .copied()
        .filter(|&(u, v)| alive[u as usize] && alive[v as usize])
        .collect();
    if core_edges != d.two_core_edges {
        return Err("2-core edges differ".into());
    }

    // hanging forest: trees, covering the giant, one core vertex each
    let mut covered = 0;
    let mut forest_edges = 0;
    for piece in &d.hanging_forest {
        piece.tree.validate().map_err(|e| e.to_string())?;
        covered += piece.labels.len();
        forest_edges += piece.tree.edge_count();
        let anchors = piece.labels.iter().filter(|&&v| alive[v as usize]).count();
        if !core.is_empty() && anchors != 1 {
            return Err(format!("hanging tree with {anchors} core vertices"));
        }
        for (a, b) in piece.tree.edges() {
            let (u, v) = (piece.global(a), piece.global(b));
            if graph.edges.binary_search(&(u.min(v), u.max(v))).is_err() {
                return Err(format!("hanging edge {u}-{v} not in graph"));
            }
        }
    }
    if covered != d.giant().len() || forest_edges + core_edges.len() != d.component_edges[0] {
        return Err("hanging forest does not match the giant".into());
    }
    if core.is_empty() && d.hanging_forest.len() != 1 {
        return Err("acyclic giant must be a single hanging tree".into());
    }

    let small: usize = d.small_trees.len() + d.small_cyclic.len();
    if small + 1 != d.components.len() {
        return Err("small components miscounted".into());
    }
    for c in &d.small_cyclic {
        c.spanning_tree.tree.validate().map_err(|e| e.to_string())?;
        if c.edges < c.spanning_tree.labels.len() {
            return Err("cyclic component has too few edges".into());
        }
    }
    for t in &d.small_trees {
        t.tree.validate().map_err(|e| e.to_string())?;
    }
    Ok(())
}
