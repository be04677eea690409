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

//! Greedy packing by longest monotone paths.
//!
//! After removing a top-down path from a full subtree, what remains splits
//! into full subtrees hanging off the path. So the available vertices always
//! form full subtrees of the original rooting, subtree heights never change,
//! and the longest available monotone path starts at one of the current
//! subtree roots. A max-heap over those roots gives `O(t log t)`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::treekit::{RootedTree, Vertex};

use super::PathSystem;

/// Repeatedly takes the longest monotone path disjoint from earlier picks,
/// while it has at least `min_edges` edges. Equal lengths go to the path
/// whose deepest vertex has the smaller label.
pub fn greedy_pack(rooted: &RootedTree, min_edges: u32) -> PathSystem {
    let n = rooted.len() as usize;
    let mut system = PathSystem::empty(rooted.len(), min_edges);
    // height of the subtree, its smallest-label deepest vertex, and the child towards it
    let mut height = vec![0u32; n + 1];
    let mut bottom: Vec<Vertex> = (0..=n as Vertex).collect();
    let mut next = vec![0 as Vertex; n + 1];
    for &v in rooted.order().iter().rev() {
        let vi = v as usize;
        let p = rooted.parent(v) as usize;
        if p == 0 {
            continue;
        }
        let h = height[vi] + 1;
        if next[p] == 0 || h > height[p] || (h == height[p] && bottom[vi] < bottom[p]) {
            height[p] = h;
            bottom[p] = bottom[vi];
            next[p] = v;
        }
    }

    let mut heap = BinaryHeap::new();
    let root = rooted.root();
    heap.push((height[root as usize], Reverse(bottom[root as usize]), root));
    while let Some((h, _, top)) = heap.pop() {
        if min_edges == 0 || h < min_edges {
            break;
        }
        let mut path = Vec::with_capacity(h as usize + 1);
        let mut x = top;
        while x != 0 {
            path.push(x);
            x = next[x as usize];
        }
        for (i, &v) in path.iter().enumerate() {
            let on_path = path.get(i + 1).copied();
            for c in rooted.children(v) {
                if Some(c) != on_path {
                    heap.push((height[c as usize], Reverse(bottom[c as usize]), c));
                }
            }
        }
        system.paths.push(path);
    }
    system
}
