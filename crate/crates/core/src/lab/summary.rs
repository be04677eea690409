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

//! Summaries and acceptance predicates, computed from records alone so that
//! an emitted table can be re-audited.

use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, ExperimentKind};
use super::record::{Cell, TrialRecord};
use super::stats::SummaryStats;
use crate::census::{bound_sums, fit_bound_constants, CensusPoint, FittedConstants};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Grid {
    pub t: Vec<u32>,
    pub ell: Vec<u32>,
    pub m: Vec<u32>,
    pub n: Vec<u32>,
    pub eps: Vec<f64>,
    pub delta: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub metric: String,
    pub stats: SummaryStats,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    #[serde(flatten)]
    pub cell: Cell,
    pub metrics: Vec<MetricSummary>,
}

impl CellSummary {
    pub fn stats(&self, metric: &str) -> Option<&SummaryStats> {
        self.metrics.iter().find(|m| m.metric == metric).map(|m| &m.stats)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Predicate {
    pub name: String,
    pub value: f64,
    /// One of `<=`, `<`, `>=`.
    pub comparison: String,
    pub threshold: f64,
    pub pass: bool,
}

impl Predicate {
    fn new(name: String, value: f64, comparison: &str, threshold: f64) -> Self {
        let pass = match comparison {
            "<=" => value <= threshold,
            "<" => value < threshold,
            ">=" => value >= threshold,
            _ => unreachable!("known comparison"),
        };
        Predicate { name, value, comparison: comparison.to_string(), threshold, pass }
    }
}

/// One census cell against the fitted bound shapes (natural logs).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRow {
    pub t: u32,
    pub m: u32,
    pub value_log: f64,
    pub upper_log: f64,
    pub lower_log: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub experiment: String,
    pub seed: u64,
    pub trials: u32,
    pub grid: Grid,
    pub options: super::config::PredicateOptions,
    pub cells: Vec<CellSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fitted_constants: Option<FittedConstants>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<BoundRow>,
    pub predicates: Vec<Predicate>,
    pub all_pass: bool,
}

impl Summary {
    pub fn cell(&self, cell: &Cell) -> Option<&CellSummary> {
        self.cells.iter().find(|c| &c.cell == cell)
    }

    pub fn predicate(&self, name: &str) -> Option<&Predicate> {
        self.predicates.iter().find(|p| p.name == name)
    }
}

fn label(cell: &Cell) -> String {
    let mut parts = Vec::new();
    let fields: [(&str, Option<String>); 6] = [
        ("t", cell.t.map(|x| x.to_string())),
        ("ell", cell.ell.map(|x| x.to_string())),
        ("m", cell.m.map(|x| x.to_string())),
        ("n", cell.n.map(|x| x.to_string())),
        ("eps", cell.eps.map(|x| x.to_string())),
        ("delta", cell.delta.map(|x| x.to_string())),
    ];
    for (k, v) in fields {
        if let Some(v) = v {
            parts.push(format!("{k}={v}"));
        }
    }
    parts.join(",")
}

/// Metric name and its values, per cell.
type Grouped = Vec<(Cell, Vec<(String, Vec<f64>)>)>;

/// Groups values by cell and metric, both in order of first appearance.
fn group(records: &[TrialRecord]) -> Grouped {
    let mut out: Grouped = Vec::new();
    for r in records {
        let cell = r.cell();
        let idx = match out.iter().position(|(c, _)| *c == cell) {
            Some(i) => i,
            None => {
                out.push((cell, Vec::new()));
                out.len() - 1
            }
        };
        let metrics = &mut out[idx].1;
        match metrics.iter_mut().find(|(m, _)| *m == r.metric) {
            Some((_, v)) => v.push(r.value),
            None => metrics.push((r.metric.clone(), vec![r.value])),
        }
    }
    out
}

fn spread(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    if min > 0.0 {
        max / min
    } else {
        f64::INFINITY
    }
}

pub fn summarize(config: &ExperimentConfig, records: &[TrialRecord]) -> Summary {
    let opts = &config.predicates;
    let grouped = group(records);
    let cells: Vec<CellSummary> = grouped
        .iter()
        .map(|(cell, metrics)| CellSummary {
            cell: *cell,
            metrics: metrics
                .iter()
                .map(|(metric, values)| {
                    let tails: Vec<f64> = match (config.experiment, metric.as_str(), cell.t, cell.ell) {
                        (ExperimentKind::CovScaling, "cov", Some(t), Some(l)) => {
                            opts.tail_factors.iter().map(|f| f * f64::from(t) / f64::from(l)).collect()
                        }
                        _ => Vec::new(),
                    };
                    MetricSummary { metric: metric.clone(), stats: SummaryStats::from_values(values, &tails) }
                })
                .collect(),
        })
        .collect();

    let mut predicates = Vec::new();
    let mut fitted_constants = None;
    let mut bounds = Vec::new();
    match config.experiment {
        ExperimentKind::CovScaling => {
            let means: Vec<f64> = cells.iter().filter_map(|c| c.stats("ratio")).map(|s| s.mean).collect();
            if means.len() >= 2 {
                predicates.push(Predicate::new("ratio_spread".into(), spread(&means), "<=", opts.ratio_spread_max));
            }
            let t_max = cells.iter().filter_map(|c| c.cell.t).max();
            for c in cells.iter().filter(|c| c.cell.t == t_max) {
                if let Some(tail) = c.stats("cov").and_then(|s| s.tails.first()) {
                    predicates.push(Predicate::new(format!("tail[{}]", label(&c.cell)), tail.frequency, "<", opts.tail_max));
                }
            }
        }
        ExperimentKind::Census => {
            let mean_of = |c: &CellSummary| {
                c.stats("exact_mean").or_else(|| c.stats("est_mean")).map(|s| s.mean)
            };
            for c in &cells {
                if let (Some(exact), Some(est), Some(se)) = (c.stats("exact_mean"), c.stats("est_mean"), c.stats("est_mean_se")) {
                    let diff = (est.mean - exact.mean).abs();
                    let z = if se.mean > 0.0 {
                        diff / se.mean
                    } else if diff <= 1e-12 * exact.mean.abs().max(1.0) {
                        0.0
                    } else {
                        f64::INFINITY
                    };
                    predicates.push(Predicate::new(format!("estimate_vs_exact[{}]", label(&c.cell)), z, "<=", opts.z_max));
                }
            }
            let mut ts: Vec<u32> = cells.iter().filter_map(|c| c.cell.t).collect();
            ts.dedup();
            for t in ts {
                let mut row: Vec<(u32, f64)> = cells
                    .iter()
                    .filter(|c| c.cell.t == Some(t))
                    .filter_map(|c| Some((c.cell.m?, mean_of(c)?)))
                    .collect();
                row.sort_by_key(|&(m, _)| m);
                if row.len() >= 2 {
                    let rise = row.windows(2).map(|w| w[1].1 - w[0].1).fold(f64::NEG_INFINITY, f64::max);
                    predicates.push(Predicate::new(format!("monotone_in_m[t={t}]"), rise, "<=", 0.0));
                }
            }
            let points: Vec<CensusPoint> = cells
                .iter()
                .filter_map(|c| {
                    let value_log = c
                        .stats("exact")
                        .map(|s| s.mean.ln())
                        .or_else(|| c.stats("est_log").map(|s| s.mean))?;
                    Some(CensusPoint { t: c.cell.t?, m: c.cell.m?, value_log })
                })
                .collect();
            if let Ok(fit) = fit_bound_constants(&points) {
                for p in &points {
                    let lead = f64::from(p.t - 1) * f64::from(p.t).ln();
                    let (upper, _) = bound_sums(p.t, p.m, fit.c1, 1.0).expect("validated point");
                    let (_, lower) = bound_sums(p.t, p.m, 1.0, fit.c2).expect("validated point");
                    bounds.push(BoundRow {
                        t: p.t,
                        m: p.m,
                        value_log: p.value_log,
                        upper_log: fit.envelope_upper.ln() + lead + upper.ln(),
                        lower_log: fit.envelope_lower.ln() + lead + lower.ln(),
                    });
                }
                fitted_constants = Some(fit);
            }
        }
        ExperimentKind::Gnp => {
            let mut norms = Vec::new();
            for (c, (_, metrics)) in cells.iter().zip(&grouped) {
                let values = |name: &str| metrics.iter().find(|(m, _)| m == name).map(|(_, v)| v.as_slice()).unwrap_or(&[]);
                let (lo, hi) = (values("total_lo"), values("total_hi"));
                let bad = lo.iter().zip(hi).filter(|(l, h)| l > h).count();
                predicates.push(Predicate::new(format!("lower_le_upper[{}]", label(&c.cell)), bad as f64, "<=", 0.0));
                let (Some(n), Some(eps)) = (c.cell.n, c.cell.eps) else { continue };
                if eps <= 0.0 {
                    continue;
                }
                let nf = f64::from(n);
                let frac = |vals: &[f64], ok: &dyn Fn(f64) -> bool| {
                    vals.iter().filter(|&&x| ok(x)).count() as f64 / vals.len().max(1) as f64
                };
                let giant = frac(values("giant"), &|g| g >= opts.giant_low * eps * nf && g <= opts.giant_high * eps * nf);
                let second = frac(values("second"), &|s| s <= opts.second_factor * nf.ln() / (eps * eps));
                let core = frac(values("two_core"), &|k| k <= opts.core_factor * eps * eps * nf);
                let l = label(&c.cell);
                predicates.push(Predicate::new(format!("giant_in_range[{l}]"), giant, ">=", opts.structure_fraction_min));
                predicates.push(Predicate::new(format!("second_small[{l}]"), second, ">=", opts.structure_fraction_min));
                predicates.push(Predicate::new(format!("core_small[{l}]"), core, ">=", opts.structure_fraction_min));
                if let Some(s) = c.stats("upper_norm") {
                    norms.push(s.mean);
                }
            }
            if norms.len() >= 2 {
                predicates.push(Predicate::new("upper_spread".into(), spread(&norms), "<=", opts.upper_spread_max));
            }
        }
        ExperimentKind::Adaptive => {
            let mut medians = Vec::new();
            for c in &cells {
                if let Some(s) = c.stats("success") {
                    predicates.push(Predicate::new(format!("success[{}]", label(&c.cell)), s.mean, ">=", opts.success_min));
                }
                if let Some(s) = c.stats("normalized") {
                    medians.push(s.q50);
                }
            }
            if medians.len() >= 2 {
                predicates.push(Predicate::new("normalized_median_spread".into(), spread(&medians), "<=", opts.norm_spread_max));
            }
        }
    }

    Summary {
        experiment: config.experiment.name().to_string(),
        seed: config.seed,
        trials: config.trials,
        grid: Grid {
            t: config.t.clone(),
            ell: config.ell.clone(),
            m: config.m.clone(),
            n: config.n.clone(),
            eps: config.eps.clone(),
            delta: config.delta.clone(),
        },
        options: opts.clone(),
        all_pass: predicates.iter().all(|p| p.pass),
        cells,
        fitted_constants,
        bounds,
        predicates,
    }
}
