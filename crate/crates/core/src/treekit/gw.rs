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

//! Galton–Watson trees.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{tree_stats, RootedTree, Tree, TreeError, Vertex};

pub const DEFAULT_SIZE_CAP: u32 = 10_000_000;
pub const DEFAULT_MAX_ATTEMPTS: u64 = 10_000_000;

/// Offspring law of a Galton–Watson process.
pub trait OffspringLaw {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32;
}

/// Poisson offspring, sampled by inversion with sequential search.
#[derive(Clone, Copy, Debug)]
pub struct Poisson {
    mean: f64,
    p0: f64,
}

impl Poisson {
    pub fn new(mean: f64) -> Self {
        Poisson { mean, p0: (-mean).exp() }
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }
}

impl OffspringLaw for Poisson {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        let u: f64 = rng.random();
        let mut k = 0u32;
        let mut pk = self.p0;
        let mut cdf = pk;
        while u > cdf {
            k += 1;
            pk *= self.mean / f64::from(k);
            let next = cdf + pk;
            if next == cdf {
                break;
            }
            cdf = next;
        }
        k
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GwConfig {
    mu: f64,
    size_cap: u32,
}

impl GwConfig {
    pub fn new(mu: f64, size_cap: u32) -> Result<Self, TreeError> {
        if !(mu > 0.0 && mu <= 1.0) {
            return Err(TreeError::InvalidMean(mu));
        }
        if size_cap == 0 {
            return Err(TreeError::InvalidSizeCap);
        }
        Ok(GwConfig { mu, size_cap })
    }

    pub fn with_default_cap(mu: f64) -> Result<Self, TreeError> {
        Self::new(mu, DEFAULT_SIZE_CAP)
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn size_cap(&self) -> u32 {
        self.size_cap
    }
}

#[derive(Clone, Debug)]
pub enum GwSample {
    Tree(RootedTree),
    /// The population exceeded the configured cap.
    Oversize,
}

impl GwSample {
    pub fn tree(self) -> Option<RootedTree> {
        match self {
            GwSample::Tree(t) => Some(t),
            GwSample::Oversize => None,
        }
    }
}

/// Grows a tree breadth first and returns its parent array (root 1, labels in
/// generation order), or `None` once the population would exceed `cap`.
pub(crate) fn grow_parents<L, R>(law: &L, cap: u32, rng: &mut R, parent: &mut Vec<Vertex>) -> bool
where
    L: OffspringLaw,
    R: Rng + ?Sized,
{
    parent.clear();
    parent.push(0);
    parent.push(0);
    let mut next = 1usize;
    while next < parent.len() {
        let k = law.sample(rng);
        if (parent.len() - 1) as u64 + u64::from(k) > u64::from(cap) {
            return false;
        }
        for _ in 0..k {
            parent.push(next as Vertex);
        }
        next += 1;
    }
    true
}

/// Galton–Watson tree with an arbitrary offspring law.
pub fn sample_gw<L, R>(law: &L, size_cap: u32, rng: &mut R) -> GwSample
where
    L: OffspringLaw,
    R: Rng + ?Sized,
{
    let mut parent = Vec::new();
    if !grow_parents(law, size_cap, rng, &mut parent) {
        return GwSample::Oversize;
    }
    let tree = Tree::from_parents(&parent);
    GwSample::Tree(tree_stats(tree, 1).expect("root 1 exists"))
}

/// Poisson(μ) Galton–Watson tree, labelled `1..|T|` in generation order.
pub fn sample_gw_poisson<R: Rng + ?Sized>(config: &GwConfig, rng: &mut R) -> GwSample {
    sample_gw(&Poisson::new(config.mu), config.size_cap, rng)
}

/// A conditioned sample together with the number of trees grown to get it.
#[derive(Clone, Debug)]
pub struct ConditionedGw {
    pub tree: RootedTree,
    pub attempts: u64,
}

/// Poisson(μ) Galton–Watson tree conditioned on exactly `t` vertices, by
/// rejection, followed by a uniformly random relabelling of `{1..t}`.
///
/// Growth stops as soon as a tree exceeds `t` vertices; such trees would be
/// rejected anyway, so the accepted distribution is unchanged.
pub fn sample_gw_conditioned<R: Rng + ?Sized>(
    mu: f64,
    t: u32,
    max_attempts: u64,
    rng: &mut R,
) -> Result<ConditionedGw, TreeError> {
    GwConfig::new(mu, t.max(1))?;
    if t == 0 {
        return Err(TreeError::EmptyTree);
    }
    let law = Poisson::new(mu);
    let mut parent = Vec::with_capacity(t as usize + 1);
    for attempt in 1..=max_attempts {
        if !grow_parents(&law, t, rng, &mut parent) || parent.len() - 1 != t as usize {
            continue;
        }
        let mut perm: Vec<Vertex> = (1..=t).collect();
        perm.shuffle(rng);
        let tree = Tree::from_parents(&parent).relabel(&perm);
        let root = perm[0];
        return Ok(ConditionedGw {
            tree: tree_stats(tree, root)?,
            attempts: attempt,
        });
    }
    Err(TreeError::RetryExhausted { attempts: max_attempts })
}

/// `P(|T| = t)` for a Poisson(μ) Galton–Watson tree:
/// `t^(t-1) (μ e^-μ)^t / (μ t!)`, evaluated in log space.
pub fn gw_size_pmf(mu: f64, t: u32) -> f64 {
    let t = f64::from(t);
    let log = (t - 1.0) * t.ln() + t * (mu.ln() - mu) - mu.ln() - ln_factorial(t as u64);
    log.exp()
}

fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn config_validation() {
        assert!(GwConfig::new(0.0, 10).is_err());
        assert!(GwConfig::new(1.2, 10).is_err());
        assert!(GwConfig::new(0.5, 0).is_err());
        assert!(GwConfig::new(1.0, 1).is_ok());
    }

    struct Fixed(u32);
    impl OffspringLaw for Fixed {
        fn sample<R: Rng + ?Sized>(&self, _: &mut R) -> u32 {
            self.0
        }
    }

    #[test]
    fn oversize_marker() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // every vertex has two children: the population never stops growing
        assert!(matches!(sample_gw(&Fixed(2), 10, &mut rng), GwSample::Oversize));
        let leaf = sample_gw(&Fixed(0), 10, &mut rng).tree().unwrap();
        assert_eq!(leaf.len(), 1);
    }

    #[test]
    fn generation_order_labels() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let config = GwConfig::new(1.0, 1000).unwrap();
        for _ in 0..200 {
            if let GwSample::Tree(t) = sample_gw_poisson(&config, &mut rng) {
                t.tree().validate().unwrap();
                assert_eq!(t.root(), 1);
                for v in 2..=t.len() {
                    assert!(t.parent(v) < v);
                    assert!(t.depth(v) >= t.depth(v - 1));
                }
            }
        }
    }

    #[test]
    fn size_pmf_sums_to_one_subcritical() {
        let total: f64 = (1..400).map(|t| gw_size_pmf(0.5, t)).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!((gw_size_pmf(0.5, 1) - (-0.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn conditioned_single_vertex() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = sample_gw_conditioned(1.0, 1, 1000, &mut rng).unwrap();
        assert_eq!(s.tree.len(), 1);
        assert!(s.attempts >= 1);
    }

    #[test]
    fn conditioned_retry_exhausted() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let err = sample_gw_conditioned(0.01, 50, 3, &mut rng).unwrap_err();
        assert!(matches!(err, TreeError::RetryExhausted { attempts: 3 }));
    }
}
