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

use rand::Rng;

use super::prufer::{decode_into, DecodeScratch};
use super::{tree_stats, RootedTree, Tree, TreeError, Vertex};

/// Fills `code` with a uniform Prüfer code for `t` (empty when `t <= 2`).
pub fn sample_code_into<R: Rng + ?Sized>(t: u32, rng: &mut R, code: &mut Vec<Vertex>) {
    code.clear();
    code.extend((0..t.saturating_sub(2)).map(|_| rng.random_range(1..=t)));
}

/// Uniform random tree on `{1..t}` via a uniform Prüfer code.
pub fn sample_uniform_tree<R: Rng + ?Sized>(t: u32, rng: &mut R) -> Result<Tree, TreeError> {
    if t == 0 {
        return Err(TreeError::EmptyTree);
    }
    let mut code = Vec::new();
    let mut scratch = DecodeScratch::new();
    sample_code_into(t, rng, &mut code);
    decode_into(t, &code, &mut scratch);
    Ok(Tree::from_parents(&scratch.parent))
}

/// Uniform random rooted tree: a uniform tree with an independent uniform root.
pub fn sample_uniform_rooted_tree<R: Rng + ?Sized>(
    t: u32,
    rng: &mut R,
) -> Result<RootedTree, TreeError> {
    let tree = sample_uniform_tree(t, rng)?;
    let root = rng.random_range(1..=t);
    tree_stats(tree, root)
}
