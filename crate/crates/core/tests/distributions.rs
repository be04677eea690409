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

//! Sampler distributions against closed-form laws. Every check is at four
//! standard errors (or a 1% chi-square critical value) with a fixed seed.

use std::collections::HashMap;

use pathlab::gnp::{gw_surrogate_cover, sample_gnp_p, solve_mu};
use pathlab::oracle::HiddenGraph;
use pathlab::treekit::{
    gw_size_pmf, sample_gw_conditioned, sample_gw_poisson, sample_uniform_rooted_tree, sample_uniform_tree,
    GwConfig, Vertex,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every class count within 4 binomial standard deviations of `n / classes`.
fn assert_uniform_counts(counts: &HashMap<Vec<(Vertex, Vertex)>, u64>, classes: usize, n: u64) {
    assert_eq!(counts.len(), classes);
    let p = 1.0 / classes as f64;
    let mean = n as f64 * p;
    let sd = (n as f64 * p * (1.0 - p)).sqrt();
    for (k, &c) in counts {
        assert!((c as f64 - mean).abs() <= 4.0 * sd, "{k:?}: {c} vs {mean}");
    }
}

#[test]
fn uniform_trees_on_four_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 160_000;
    let mut counts = HashMap::new();
    for _ in 0..n {
        *counts.entry(sample_uniform_tree(4, &mut rng).unwrap().edges()).or_insert(0) += 1;
    }
    assert_uniform_counts(&counts, 16, n);
}

#[test]
fn uniform_rooted_trees_on_three_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let n = 90_000;
    let mut counts = HashMap::new();
    for _ in 0..n {
        let r = sample_uniform_rooted_tree(3, &mut rng).unwrap();
        let mut key = r.tree().edges();
        // the root rides along as a loop so the key stays one type
        key.push((r.root(), r.root()));
        *counts.entry(key).or_insert(0) += 1;
    }
    assert_uniform_counts(&counts, 9, n);
}

#[test]
fn root_is_uniform_at_t_100() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let t = 100u32;
    let n = 50_000u64;
    let mut counts = vec![0u64; t as usize + 1];
    for _ in 0..n {
        counts[sample_uniform_rooted_tree(t, &mut rng).unwrap().root() as usize] += 1;
    }
    let e = n as f64 / f64::from(t);
    let chi2: f64 = counts[1..].iter().map(|&c| (c as f64 - e).powi(2) / e).sum();
    // 99 degrees of freedom, upper 1% point
    assert!(chi2 < 134.64, "chi2 = {chi2}");
}

#[test]
fn gw_sizes_follow_the_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let config = GwConfig::new(0.5, 10_000).unwrap();
    let n = 100_000u64;
    let mut counts = [0u64; 11];
    for _ in 0..n {
        let size = sample_gw_poisson(&config, &mut rng).tree().unwrap().len() as usize;
        if size <= 10 {
            counts[size] += 1;
        }
    }
    for (size, &c) in counts.iter().enumerate().skip(1) {
        let p = gw_size_pmf(0.5, size as u32);
        let sd = (n as f64 * p * (1.0 - p)).sqrt();
        assert!((c as f64 - n as f64 * p).abs() <= 4.0 * sd + 1.0, "size {size}: {c}");
    }
}

#[test]
fn conditioned_gw_acceptance_rate() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    // P(|T| = 4) for Poisson(1) is 4^3 e^-4 / 4!
    let p = 64.0 * (-4.0f64).exp() / 24.0;
    let n = 20_000u64;
    let mut attempts = 0u64;
    let mut counts = HashMap::new();
    for _ in 0..n {
        let s = sample_gw_conditioned(1.0, 4, 1_000_000, &mut rng).unwrap();
        attempts += s.attempts;
        let mut key = s.tree.tree().edges();
        key.push((s.tree.root(), s.tree.root()));
        *counts.entry(key).or_insert(0) += 1;
    }
    let mean = attempts as f64 / n as f64;
    let sd = (1.0 - p).sqrt() / p / (n as f64).sqrt();
    assert!((mean - 1.0 / p).abs() <= 4.0 * sd, "mean attempts {mean} vs {}", 1.0 / p);
    assert_uniform_counts(&counts, 64, n);
}

#[test]
fn gnp_edge_count_is_binomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let (n, p) = (200u32, 0.05);
    let pairs = f64::from(n) * f64::from(n - 1) / 2.0;
    let reps = 2000;
    let total: usize = (0..reps).map(|_| sample_gnp_p(n, p, &mut rng).unwrap().edges.len()).sum();
    let mean = total as f64 / f64::from(reps);
    let sd = (pairs * p * (1.0 - p) / f64::from(reps)).sqrt();
    assert!((mean - pairs * p).abs() <= 4.0 * sd, "{mean}");
}

fn edge_and_triangle_counts(n: u32, edges: &[(Vertex, Vertex)]) -> (f64, f64) {
    let mut adj = vec![vec![false; n as usize + 1]; n as usize + 1];
    for &(u, v) in edges {
        adj[u as usize][v as usize] = true;
        adj[v as usize][u as usize] = true;
    }
    let mut triangles = 0u64;
    for &(u, v) in edges {
        triangles += (v + 1..=n).filter(|&w| adj[u as usize][w as usize] && adj[v as usize][w as usize]).count() as u64;
    }
    (edges.len() as f64, triangles as f64)
}

/// Mean and standard error.
fn moments(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[test]
fn hidden_graph_matches_gnp_law() {
    let (n, p) = (30u32, 0.3);
    let reps = 10_000u64;
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let (mut he, mut ht, mut se, mut st) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for seed in 0..reps {
        let h = HiddenGraph::new(n, p, seed).unwrap();
        let (e, t) = edge_and_triangle_counts(n, &h.materialize());
        he.push(e);
        ht.push(t);
        let g = sample_gnp_p(n, p, &mut rng).unwrap();
        let (e, t) = edge_and_triangle_counts(n, &g.edges);
        se.push(e);
        st.push(t);
    }
    let pairs = 435.0;
    let triples = 4060.0;
    for (xs, expect) in [(&he, pairs * p), (&se, pairs * p), (&ht, triples * p * p * p), (&st, triples * p * p * p)] {
        let (mean, err) = moments(xs);
        assert!((mean - expect).abs() <= 4.0 * err, "{mean} vs {expect}");
    }
    let (a, ea) = moments(&ht);
    let (b, eb) = moments(&st);
    assert!((a - b).abs() <= 4.0 * (ea * ea + eb * eb).sqrt());
}

#[test]
fn surrogate_tree_sizes_have_mean_one_over_one_minus_mu() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let eps = 0.3;
    let mu = solve_mu(eps).unwrap().mu;
    let mut total = 0u64;
    let mut trees = 0u64;
    for _ in 0..20 {
        let s = gw_surrogate_cover(eps, 20_000, 9, &mut rng).unwrap();
        assert!(s.covered_vertices <= s.total_vertices);
        total += s.total_vertices;
        trees += s.trees;
    }
    let mean = total as f64 / trees as f64;
    // Var |T| = mu / (1 - mu)^3 for Poisson offspring
    let sd = (mu / (1.0 - mu).powi(3) / trees as f64).sqrt();
    assert!((mean - 1.0 / (1.0 - mu)).abs() <= 4.0 * sd, "{mean} vs {}", 1.0 / (1.0 - mu));
}
