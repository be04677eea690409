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

//! Exhaustive path-system search, used only as a reference for small trees.

use rustc_hash::FxHashMap;

use crate::treekit::Tree;

use super::PackingError;

pub const BRUTE_FORCE_MAX: u32 = 12;

/// Maximum cover by exhaustive recursion over vertex-disjoint path systems.
///
/// Candidate paths are bitmasks; the search always decides the lowest
/// undecided vertex first (leave it uncovered, or pick a path through it),
/// memoised on the undecided set.
pub fn cov_bruteforce(tree: &Tree, min_edges: u32) -> Result<u32, PackingError> {
    let t = tree.len();
    if t > BRUTE_FORCE_MAX {
        return Err(PackingError::TooLarge { t, max: BRUTE_FORCE_MAX });
    }
    if min_edges == 0 {
        return Err(PackingError::ZeroLength);
    }
    // by_vertex[x] = paths (bitmask over bit v-1) containing x
    let mut by_vertex: Vec<Vec<u32>> = vec![Vec::new(); t as usize];
    for u in 1..=t {
        let traversal = tree.bfs(u);
        for v in u + 1..=t {
            let mut mask = 0u32;
            let mut x = v;
            let mut edges = 0;
            while x != u {
                mask |= 1 << (x - 1);
                x = traversal.parent[x as usize];
                edges += 1;
            }
            mask |= 1 << (u - 1);
            if edges >= min_edges {
                for b in 0..t {
                    if mask >> b & 1 == 1 {
                        by_vertex[b as usize].push(mask);
                    }
                }
            }
        }
    }
    let full = if t == 32 { u32::MAX } else { (1u32 << t) - 1 };
    let mut memo = FxHashMap::default();
    Ok(best(full, &by_vertex, &mut memo))
}

fn best(undecided: u32, by_vertex: &[Vec<u32>], memo: &mut FxHashMap<u32, u32>) -> u32 {
    if undecided == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&undecided) {
        return v;
    }
    let x = undecided.trailing_zeros();
    let rest = undecided & !(1 << x);
    let mut value = best(rest, by_vertex, memo);
    for &path in &by_vertex[x as usize] {
        if path & !undecided == 0 {
            value = value.max(path.count_ones() + best(undecided & !path, by_vertex, memo));
        }
    }
    memo.insert(undecided, value);
    value
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(cov_bruteforce(&Tree::singleton(), 3).unwrap(), 0);
        let edges: Vec<_> = (1..12).map(|i| (i, i + 1)).collect();
        let p12 = Tree::from_edges(12, &edges).unwrap();
        assert_eq!(cov_bruteforce(&p12, 11).unwrap(), 12);
        assert_eq!(cov_bruteforce(&p12, 5).unwrap(), 12);
        let star = Tree::from_edges(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(cov_bruteforce(&star, 2).unwrap(), 3);
        let edges: Vec<_> = (1..13).map(|i| (i, i + 1)).collect();
        let p13 = Tree::from_edges(13, &edges).unwrap();
        assert!(matches!(cov_bruteforce(&p13, 2), Err(PackingError::TooLarge { .. })));
    }
}
