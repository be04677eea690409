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

use super::{Tree, TreeError, Vertex};

/// A tree with a distinguished root and cached depth statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    tree: Tree,
    root: Vertex,
    parent: Vec<Vertex>,
    order: Vec<Vertex>,
    depth: Vec<u32>,
    height: u32,
    width: u32,
}

impl RootedTree {
    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn into_tree(self) -> Tree {
        self.tree
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn len(&self) -> u32 {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Distance from the root in edges.
    pub fn depth(&self, v: Vertex) -> u32 {
        self.depth[v as usize]
    }

    /// `0` for the root.
    pub fn parent(&self, v: Vertex) -> Vertex {
        self.parent[v as usize]
    }

    /// Breadth-first order from the root.
    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Largest generation size over depths `1..=height`; 0 for a single vertex.
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn children(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let p = self.parent[v as usize];
        self.tree.neighbors(v).iter().copied().filter(move |&w| w != p)
    }
}

/// Roots `tree` at `root` and fills depth, height and width in one traversal.
pub fn tree_stats(tree: Tree, root: Vertex) -> Result<RootedTree, TreeError> {
    if root == 0 || root > tree.len() {
        return Err(TreeError::VertexOutOfRange { vertex: root, t: tree.len() });
    }
    let traversal = tree.bfs(root);
    let n = tree.len() as usize;
    let mut depth = vec![0u32; n + 1];
    let mut per_level = vec![0u32; n];
    let mut height = 0;
    for &v in &traversal.order[1..] {
        let d = depth[traversal.parent[v as usize] as usize] + 1;
        depth[v as usize] = d;
        per_level[d as usize] += 1;
        height = height.max(d);
    }
    let width = per_level[1..=height as usize].iter().copied().max().unwrap_or(0);
    Ok(RootedTree {
        tree,
        root,
        parent: traversal.parent,
        order: traversal.order,
        depth,
        height,
        width,
    })
}
