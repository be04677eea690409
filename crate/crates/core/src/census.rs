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

//! Counting m-centred (edge, tree) pairs over all labelled trees on `{1..t}`.
//!
//! Exact counts come from running the linear centred-edge pass on every
//! Prüfer code; beyond `t = 9` counts are estimated from uniform samples and
//! carried in log scale, since `t^(t-2)` overflows quickly.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::packing::{count_centred, count_centred_multi, CentredScratch};
use crate::treekit::prufer::{decode_into, DecodeScratch};
use crate::treekit::{sample_code_into, Vertex};

pub const ENUMERATION_MAX_T: u32 = 9;

/// Samples drawn from one RNG stream by the seeded estimators.
const BLOCK: u64 = 4096;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CensusError {
    #[error("exhaustive enumeration is limited to t <= {max} (t^(t-2) trees), got t = {t}")]
    BudgetExceeded { t: u32, max: u32 },
    #[error("m must be at least 1")]
    ZeroM,
    #[error("need m < t, got m = {m}, t = {t}")]
    MNotBelowT { t: u32, m: u32 },
    #[error("at least one sample is required")]
    ZeroSamples,
    #[error("constants must be positive, got c1 = {c1}, c2 = {c2}")]
    InvalidConstant { c1: f64, c2: f64 },
    #[error("no usable points for fitting")]
    NothingToFit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CensusResult {
    pub t: u32,
    pub m: u32,
    /// Present iff computed by full enumeration.
    pub exact: Option<u64>,
    /// `ln |M(t, m)|`, estimated; present iff `samples > 0`.
    pub log_estimate: Option<f64>,
    /// Standard error of `log_estimate` (delta method).
    pub log_std_error: Option<f64>,
    pub samples: u64,
    /// Mean number of m-centred edges per tree and its standard error.
    pub mean_per_tree: f64,
    pub mean_std_error: f64,
}

impl CensusResult {
    pub fn method(&self) -> &'static str {
        if self.exact.is_some() {
            "enumerate"
        } else {
            "estimate"
        }
    }

    /// `ln |M(t, m)|` from whichever source is present.
    pub fn value_log(&self) -> f64 {
        match (self.exact, self.log_estimate) {
            (Some(x), _) => (x as f64).ln(),
            (None, Some(l)) => l,
            (None, None) => f64::NAN,
        }
    }

    pub fn std_error_log(&self) -> f64 {
        self.log_std_error.unwrap_or(0.0)
    }

    pub const ROW_HEADER: &'static str = "t,m,method,value_log,std_error_log,samples";
}

/// One `t,m,method,value_log,std_error_log,samples` row.
impl fmt::Display for CensusResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{},{}",
            self.t,
            self.m,
            self.method(),
            self.value_log(),
            self.std_error_log(),
            self.samples
        )
    }
}

/// `ln(t^(t-2))`, the log number of labelled trees.
pub fn log_tree_count(t: u32) -> f64 {
    if t <= 2 {
        0.0
    } else {
        f64::from(t - 2) * f64::from(t).ln()
    }
}

/// Sums `counts[i] += #{m_i-centred edges}` over every tree whose code starts
/// with `prefix` (or over all trees when `t <= 2`).
fn enumerate_block(t: u32, prefix: Option<Vertex>, ms: &[u32]) -> Vec<u64> {
    let mut counts = vec![0u64; ms.len()];
    let mut decode = DecodeScratch::new();
    let mut scratch = CentredScratch::default();
    let len = t.saturating_sub(2) as usize;
    let mut code = vec![1 as Vertex; len];
    let fixed = usize::from(prefix.is_some());
    if let Some(p) = prefix {
        code[0] = p;
    }
    loop {
        decode_into(t, &code, &mut decode);
        count_centred_multi(&mut scratch, &decode.parent, &decode.order, ms, &mut counts);
        let mut i = len;
        loop {
            if i == fixed {
                return counts;
            }
            i -= 1;
            if code[i] < t {
                code[i] += 1;
                break;
            }
            code[i] = 1;
        }
    }
}

/// Exact `|M(t, m)|` for every `m` in `ms`, one pass over all trees.
pub fn enumerate_many(t: u32, ms: &[u32]) -> Result<Vec<CensusResult>, CensusError> {
    if t > ENUMERATION_MAX_T {
        return Err(CensusError::BudgetExceeded { t, max: ENUMERATION_MAX_T });
    }
    if t == 0 {
        return Err(CensusError::MNotBelowT { t, m: ms.first().copied().unwrap_or(1) });
    }
    if ms.contains(&0) {
        return Err(CensusError::ZeroM);
    }
    let totals = if t <= 2 {
        enumerate_block(t, None, ms)
    } else {
        (1..=t)
            .into_par_iter()
            .map(|p| enumerate_block(t, Some(p), ms))
            .reduce(
                || vec![0; ms.len()],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    };
    let trees = (f64::from(t)).powi(t as i32 - 2).max(1.0);
    Ok(ms
        .iter()
        .zip(totals)
        .map(|(&m, exact)| CensusResult {
            t,
            m,
            exact: Some(exact),
            log_estimate: None,
            log_std_error: None,
            samples: 0,
            mean_per_tree: exact as f64 / trees,
            mean_std_error: 0.0,
        })
        .collect())
}

/// Exact `|M(t, m)| = sum over trees on {1..t} of the number of m-centred edges`.
pub fn enumerate_m(t: u32, m: u32) -> Result<CensusResult, CensusError> {
    Ok(enumerate_many(t, &[m])?.remove(0))
}

/// Running sums of per-tree counts for several thresholds.
#[derive(Clone, Debug)]
struct Moments {
    n: u64,
    sum: Vec<f64>,
    sum_sq: Vec<f64>,
}

impl Moments {
    fn new(k: usize) -> Self {
        Moments { n: 0, sum: vec![0.0; k], sum_sq: vec![0.0; k] }
    }

    fn merge(mut self, other: Moments) -> Moments {
        self.n += other.n;
        for i in 0..self.sum.len() {
            self.sum[i] += other.sum[i];
            self.sum_sq[i] += other.sum_sq[i];
        }
        self
    }
}

fn sample_moments<R: Rng + ?Sized>(t: u32, ms: &[u32], samples: u64, rng: &mut R) -> Moments {
    let mut moments = Moments::new(ms.len());
    let mut code = Vec::new();
    let mut decode = DecodeScratch::new();
    let mut scratch = CentredScratch::default();
    let mut counts = vec![0u64; ms.len()];
    for _ in 0..samples {
        sample_code_into(t, rng, &mut code);
        decode_into(t, &code, &mut decode);
        if let [m] = ms {
            counts[0] = count_centred(&mut scratch, &decode.parent, &decode.order, *m) as u64;
        } else {
            counts.iter_mut().for_each(|c| *c = 0);
            count_centred_multi(&mut scratch, &decode.parent, &decode.order, ms, &mut counts);
        }
        for (i, &c) in counts.iter().enumerate() {
            let c = c as f64;
            moments.sum[i] += c;
            moments.sum_sq[i] += c * c;
        }
    }
    moments.n = samples;
    moments
}

fn finish(t: u32, ms: &[u32], moments: Moments) -> Vec<CensusResult> {
    let n = moments.n as f64;
    ms.iter()
        .enumerate()
        .map(|(i, &m)| {
            let mean = moments.sum[i] / n;
            let var = if moments.n > 1 {
                ((moments.sum_sq[i] - n * mean * mean) / (n - 1.0)).max(0.0)
            } else {
                0.0
            };
            let se = (var / n).sqrt();
            let log_se = if se == 0.0 { 0.0 } else { se / mean };
            CensusResult {
                t,
                m,
                exact: None,
                log_estimate: Some(mean.ln() + log_tree_count(t)),
                log_std_error: Some(log_se),
                samples: moments.n,
                mean_per_tree: mean,
                mean_std_error: se,
            }
        })
        .collect()
}

fn check_estimate_args(t: u32, ms: &[u32], samples: u64) -> Result<(), CensusError> {
    if samples == 0 {
        return Err(CensusError::ZeroSamples);
    }
    for &m in ms {
        if m == 0 {
            return Err(CensusError::ZeroM);
        }
        if m >= t {
            return Err(CensusError::MNotBelowT { t, m });
        }
    }
    Ok(())
}

/// Monte Carlo estimate of `|M(t, m)|` from `samples` uniform trees drawn
/// from `rng`.
pub fn estimate_m<R: Rng + ?Sized>(
    t: u32,
    m: u32,
    samples: u64,
    rng: &mut R,
) -> Result<CensusResult, CensusError> {
    check_estimate_args(t, &[m], samples)?;
    Ok(finish(t, &[m], sample_moments(t, &[m], samples, rng)).remove(0))
}

/// Parallel estimate for several thresholds from the same trees.
///
/// Samples are drawn in fixed blocks, block `b` from its own ChaCha8 stream
/// `b` keyed by `seed`, so the result does not depend on the thread count.
pub fn estimate_many_seeded(
    t: u32,
    ms: &[u32],
    samples: u64,
    seed: u64,
) -> Result<Vec<CensusResult>, CensusError> {
    check_estimate_args(t, ms, samples)?;
    let blocks = samples.div_ceil(BLOCK);
    let moments = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let size = BLOCK.min(samples - b * BLOCK);
            sample_moments(t, ms, size, &mut rng)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Moments::new(ms.len()), Moments::merge);
    Ok(finish(t, ms, moments))
}

/// The two sums in the bound shapes, without the common `t^(t-1)` factor:
///
/// * upper: `sum_{k=m}^{floor(t/2)} k^(-3/2) exp(-c1 m^2 / k)`
/// * lower: `sum_{k=ceil(c2 m^2)}^{floor(t/2)} k^(-3/2)`, 0 on an empty range.
pub fn bound_sums(t: u32, m: u32, c1: f64, c2: f64) -> Result<(f64, f64), CensusError> {
    if !(c1 > 0.0 && c2 > 0.0) {
        return Err(CensusError::InvalidConstant { c1, c2 });
    }
    if m == 0 {
        return Err(CensusError::ZeroM);
    }
    if m >= t {
        return Err(CensusError::MNotBelowT { t, m });
    }
    let top = u64::from(t / 2);
    let m2 = f64::from(m) * f64::from(m);
    let upper = (u64::from(m)..=top)
        .map(|k| {
            let k = k as f64;
            k.powf(-1.5) * (-c1 * m2 / k).exp()
        })
        .sum();
    let start = ((c2 * m2).ceil() as u64).max(1);
    let lower = (start..=top).map(|k| (k as f64).powf(-1.5)).sum();
    Ok((upper, lower))
}

/// A measured point `ln |M(t, m)|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CensusPoint {
    pub t: u32,
    pub m: u32,
    pub value_log: f64,
}

impl From<&CensusResult> for CensusPoint {
    fn from(r: &CensusResult) -> Self {
        CensusPoint { t: r.t, m: r.m, value_log: r.value_log() }
    }
}

/// Constants of the bound shapes fitted to measured counts.
///
/// `c1`, `c2` are chosen on a log grid. For each, the multiplicative constant
/// is fitted by least squares in log space (`ls_*`); the envelope constants
/// are the tightest ones with every point inside the band.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct FittedConstants {
    pub c1: f64,
    pub ls_upper: f64,
    pub envelope_upper: f64,
    pub rms_upper: f64,
    pub c2: f64,
    pub ls_lower: f64,
    pub envelope_lower: f64,
    pub rms_lower: f64,
}

fn log_grid(lo: f64, hi: f64, steps: usize) -> impl Iterator<Item = f64> {
    (0..=steps).map(move |i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / steps as f64).exp())
}

/// Returns (ln C least squares, rms residual, ln C envelope) for the ratios
/// `value - (t-1) ln t - ln sum`. `upper` selects max vs min for the envelope.
fn fit_offsets(residuals: &[f64], upper: bool) -> (f64, f64, f64) {
    let n = residuals.len() as f64;
    let mean = residuals.iter().sum::<f64>() / n;
    let rms = (residuals.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / n).sqrt();
    let env = if upper {
        residuals.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    } else {
        residuals.iter().copied().fold(f64::INFINITY, f64::min)
    };
    (mean, rms, env)
}

pub fn fit_bound_constants(points: &[CensusPoint]) -> Result<FittedConstants, CensusError> {
    let points: Vec<_> = points
        .iter()
        .filter(|p| p.value_log.is_finite() && p.m < p.t)
        .collect();
    if points.is_empty() {
        return Err(CensusError::NothingToFit);
    }
    let lead = |p: &CensusPoint| f64::from(p.t - 1) * f64::from(p.t).ln();

    let mut best_upper: Option<(f64, (f64, f64, f64))> = None;
    for c1 in log_grid(1e-3, 10.0, 80) {
        let residuals: Vec<f64> = points
            .iter()
            .map(|p| p.value_log - lead(p) - bound_sums(p.t, p.m, c1, 1.0).unwrap().0.ln())
            .collect();
        let fit = fit_offsets(&residuals, true);
        if best_upper.is_none_or(|(_, b)| fit.1 < b.1) {
            best_upper = Some((c1, fit));
        }
    }
    let mut best_lower: Option<(f64, (f64, f64, f64))> = None;
    for c2 in log_grid(1e-3, 10.0, 80) {
        let residuals: Vec<f64> = points
            .iter()
            .filter_map(|p| {
                let lower = bound_sums(p.t, p.m, 1.0, c2).unwrap().1;
                (lower > 0.0).then(|| p.value_log - lead(p) - lower.ln())
            })
            .collect();
        // only constants that keep most points informative
        if residuals.len() * 2 < points.len() {
            continue;
        }
        let fit = fit_offsets(&residuals, false);
        if best_lower.is_none_or(|(_, b)| fit.1 < b.1) {
            best_lower = Some((c2, fit));
        }
    }
    let (c1, (ls_u, rms_u, env_u)) = best_upper.ok_or(CensusError::NothingToFit)?;
    let (c2, (ls_l, rms_l, env_l)) = best_lower.ok_or(CensusError::NothingToFit)?;
    Ok(FittedConstants {
        c1,
        ls_upper: ls_u.exp(),
        envelope_upper: env_u.exp(),
        rms_upper: rms_u,
        c2,
        ls_lower: ls_l.exp(),
        envelope_lower: env_l.exp(),
        rms_lower: rms_l,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_exact_counts() {
        assert_eq!(enumerate_m(3, 1).unwrap().exact, Some(6));
        assert_eq!(enumerate_m(3, 2).unwrap().exact, Some(0));
        assert_eq!(enumerate_m(4, 2).unwrap().exact, Some(12));
        assert_eq!(enumerate_m(2, 1).unwrap().exact, Some(1));
        assert_eq!(enumerate_m(1, 1).unwrap().exact, Some(0));
        assert!(matches!(enumerate_m(10, 2), Err(CensusError::BudgetExceeded { .. })));
    }

    #[test]
    fn m_one_counts_every_edge() {
        for t in 2..=7u32 {
            let r = enumerate_m(t, 1).unwrap();
            let trees = u64::from(t).pow(t - 2);
            assert_eq!(r.exact, Some(trees * u64::from(t - 1)));
        }
    }

    #[test]
    fn zero_variance_estimate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = estimate_m(3, 1, 50, &mut rng).unwrap();
        assert!((r.value_log() - 6f64.ln()).abs() < 1e-12);
        assert_eq!(r.log_std_error, Some(0.0));
        assert!(estimate_m(3, 1, 0, &mut rng).is_err());
        assert!(estimate_m(3, 3, 10, &mut rng).is_err());
    }

    #[test]
    fn seeded_estimate_is_reproducible() {
        let a = estimate_many_seeded(20, &[2, 3], 10_000, 9).unwrap();
        let b = estimate_many_seeded(20, &[2, 3], 10_000, 9).unwrap();
        assert_eq!(a, b);
        assert!(a[0].mean_per_tree >= a[1].mean_per_tree);
    }

    #[test]
    fn bound_sum_limits() {
        let (upper, lower) = bound_sums(20, 9, 1.0, 1.0).unwrap();
        assert_eq!(lower, 0.0);
        assert!(upper > 0.0);
        let direct: f64 = (3..=50u32).map(|k| f64::from(k).powf(-1.5)).sum();
        let (u, _) = bound_sums(100, 3, 1e-12, 1.0).unwrap();
        assert!((u - direct).abs() < 1e-9);
        assert!(bound_sums(100, 3, 0.0, 1.0).is_err());
        let mut prev = f64::INFINITY;
        for m in [2, 4, 8, 16, 32] {
            let (u, _) = bound_sums(1_000_000, m, 1.0, 1.0).unwrap();
            assert!(u < prev);
            prev = u;
        }
    }

    #[test]
    fn row_format() {
        let r = enumerate_m(3, 1).unwrap();
        assert_eq!(r.to_string(), format!("3,1,enumerate,{},0,0", 6f64.ln()));
    }
}
