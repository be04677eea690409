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

//! Census counts against an enumeration that shares no code with the
//! library's: all (t-1)-edge subsets of the complete graph, filtered for
//! acyclicity, with each edge tested directly.

use pathlab::census::{enumerate_m, estimate_many_seeded};
use pathlab::packing::is_centred;
use pathlab::treekit::{Tree, Vertex};

/// Number of pairs (labelled tree on `t` vertices, m-centred edge) for each m in `1..t`.
fn subset_census(t: u32) -> Vec<u64> {
    let pairs: Vec<(Vertex, Vertex)> = (1..=t).flat_map(|u| (u + 1..=t).map(move |v| (u, v))).collect();
    let mut counts = vec![0u64; t as usize];
    let mut trees = 0u64;
    let k = t as usize - 1;
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        let edges: Vec<_> = pick.iter().map(|&i| pairs[i]).collect();
        if let Ok(tree) = Tree::from_edges(t, &edges) {
            trees += 1;
            for &e in &edges {
                for m in 1..t {
                    if is_centred(&tree, e, m).unwrap() {
                        counts[m as usize] += 1;
                    }
                }
            }
        }
        // next k-combination in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| pick[i] < pairs.len() - k + i) else { break };
        pick[i] += 1;
        for j in i + 1..k {
            pick[j] = pick[j - 1] + 1;
        }
    }
    assert_eq!(trees, u64::from(t).pow(t - 2));
    counts
}

#[test]
fn small_counts() {
    assert_eq!(enumerate_m(3, 1).unwrap().exact, Some(6));
    assert_eq!(enumerate_m(3, 2).unwrap().exact, Some(0));
    assert_eq!(enumerate_m(4, 2).unwrap().exact, Some(12));
}

#[test]
fn enumeration_matches_subset_oracle() {
    for t in 3..=7 {
        let oracle = subset_census(t);
        for m in 1..t {
            assert_eq!(enumerate_m(t, m).unwrap().exact, Some(oracle[m as usize]), "t={t} m={m}");
        }
    }
}

#[test]
fn estimates_agree_with_enumeration() {
    for t in 4..=7u32 {
        let ms: Vec<u32> = (1..t).collect();
        let est = estimate_many_seeded(t, &ms, 50_000, u64::from(t)).unwrap();
        for (e, &m) in est.iter().zip(&ms) {
            let exact = enumerate_m(t, m).unwrap();
            let diff = (e.mean_per_tree - exact.mean_per_tree).abs();
            assert!(
                diff <= 4.0 * e.mean_std_error || (diff == 0.0 && e.mean_std_error == 0.0),
                "t={t} m={m}: {} vs {}",
                e.mean_per_tree,
                exact.mean_per_tree
            );
        }
    }
}
