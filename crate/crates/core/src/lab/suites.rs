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

//! The four experiments. Each returns its records in a fixed order: cells in
//! grid order, trials ascending within a cell, metrics in a fixed sequence.

use std::fs;
use std::io::BufWriter;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::{adaptive_ell, gnp_ell, ExperimentConfig};
use super::record::{Cell, TrialRecord};
use super::LabError;
use crate::census::{enumerate_many, estimate_many_seeded, ENUMERATION_MAX_T};
use crate::gnp::{cov_gnp_estimate, decompose, gw_surrogate_cover, sample_gnp};
use crate::oracle::{dfs_find_path, write_transcript, HiddenGraph};
use crate::packing::cov_value;
use crate::treekit::sample_uniform_tree;

fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of a cell, a pure function of the master seed and the cell index.
pub fn cell_seed(master: u64, cell: usize) -> u64 {
    mix(mix(master) ^ cell as u64)
}

/// The stream of one trial: ChaCha8 keyed by the cell seed, stream = trial.
pub fn trial_rng(master: u64, cell: usize, trial: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cell_seed(master, cell));
    rng.set_stream(u64::from(trial));
    rng
}

/// Runs `trial(cell_index, cell, trial_index)` for every cell and trial on
/// the current pool, returning records in index order.
fn run_trials<F>(cells: &[Cell], trials: u32, trial: F) -> Result<Vec<TrialRecord>, LabError>
where
    F: Fn(usize, &Cell, u32) -> Result<Vec<TrialRecord>, LabError> + Sync,
{
    let tasks = cells.len() * trials as usize;
    let per_task: Vec<Result<Vec<TrialRecord>, LabError>> = (0..tasks)
        .into_par_iter()
        .map(|i| {
            let c = i / trials as usize;
            trial(c, &cells[c], (i % trials as usize) as u32)
        })
        .collect();
    let mut out = Vec::new();
    for r in per_task {
        out.extend(r?);
    }
    Ok(out)
}

pub fn run_cov_scaling(config: &ExperimentConfig) -> Result<Vec<TrialRecord>, LabError> {
    let name = config.experiment.name();
    let cells: Vec<Cell> = config
        .t
        .iter()
        .flat_map(|&t| config.ell.iter().map(move |&l| Cell { t: Some(t), ell: Some(l), ..Cell::default() }))
        .collect();
    run_trials(&cells, config.trials, |c, cell, trial| {
        let (t, ell) = (cell.t.unwrap(), cell.ell.unwrap());
        let mut rng = trial_rng(config.seed, c, trial);
        let tree = sample_uniform_tree(t, &mut rng)?;
        let cov = f64::from(cov_value(&tree, ell)?);
        Ok(vec![
            TrialRecord::new(name, config.seed, trial, cell, "cov", cov),
            TrialRecord::new(name, config.seed, trial, cell, "ratio", cov * f64::from(ell) / f64::from(t)),
        ])
    })
}

pub fn run_census(config: &ExperimentConfig) -> Result<Vec<TrialRecord>, LabError> {
    let name = config.experiment.name();
    let mut out = Vec::new();
    for (ci, &t) in config.t.iter().enumerate() {
        let ms: Vec<u32> = config.m.iter().copied().filter(|&m| m < t).collect();
        if ms.is_empty() {
            continue;
        }
        let exact = if t <= ENUMERATION_MAX_T { Some(enumerate_many(t, &ms)?) } else { None };
        let estimate = if config.samples > 0 {
            Some(estimate_many_seeded(t, &ms, config.samples, cell_seed(config.seed, ci))?)
        } else {
            None
        };
        for (i, &m) in ms.iter().enumerate() {
            let cell = Cell { t: Some(t), m: Some(m), ..Cell::default() };
            let mut push = |metric: &str, value: f64| out.push(TrialRecord::new(name, config.seed, 0, &cell, metric, value));
            if let Some(exact) = &exact {
                push("exact", exact[i].exact.unwrap() as f64);
                push("exact_mean", exact[i].mean_per_tree);
            }
            if let Some(est) = &estimate {
                let e = &est[i];
                push("est_mean", e.mean_per_tree);
                push("est_mean_se", e.mean_std_error);
                push("est_log", e.log_estimate.unwrap());
                push("est_log_se", e.log_std_error.unwrap());
                push("samples", e.samples as f64);
            }
        }
    }
    Ok(out)
}

fn gnp_cells(config: &ExperimentConfig) -> Vec<Cell> {
    let mut cells = Vec::new();
    for &n in &config.n {
        for &eps in &config.eps {
            for &delta in &config.deltas() {
                let ells = if config.ell.is_empty() { vec![gnp_ell(eps, delta)] } else { config.ell.clone() };
                for ell in ells {
                    cells.push(Cell { n: Some(n), eps: Some(eps), delta: Some(delta), ell: Some(ell), ..Cell::default() });
                }
            }
        }
    }
    cells
}

pub fn run_gnp(config: &ExperimentConfig) -> Result<Vec<TrialRecord>, LabError> {
    let name = config.experiment.name();
    let cells = gnp_cells(config);
    run_trials(&cells, config.trials, |c, cell, trial| {
        let (n, eps, ell) = (cell.n.unwrap(), cell.eps.unwrap(), cell.ell.unwrap());
        let mut rng = trial_rng(config.seed, c, trial);
        let graph = sample_gnp(n, eps, &mut rng)?;
        let d = decompose(&graph);
        let e = cov_gnp_estimate(&d, ell)?;
        let mut rows = Vec::new();
        let mut push = |metric: &str, value: f64| rows.push(TrialRecord::new(name, config.seed, trial, cell, metric, value));
        push("edges", graph.edges.len() as f64);
        push("giant", d.giant().len() as f64);
        push("second", d.second_size() as f64);
        push("two_core", d.two_core.len() as f64);
        push("x_lo", e.x_lower as f64);
        push("x_hi", e.x_upper as f64);
        push("z", e.z as f64);
        push("y_upper", e.y_upper as f64);
        push("total_lo", e.total_lower as f64);
        push("total_hi", e.total_upper as f64);
        if eps > 0.0 {
            push("upper_norm", e.total_upper as f64 / (eps * eps * f64::from(n)));
            if config.surrogate {
                let s = gw_surrogate_cover(eps, n, ell, &mut rng)?;
                push("surrogate_edges", s.edges_covered as f64);
                push("surrogate_vertices", s.total_vertices as f64);
            }
        }
        Ok(rows)
    })
}

fn adaptive_cells(config: &ExperimentConfig) -> Vec<Cell> {
    let mut cells = Vec::new();
    for &n in &config.n {
        for &eps in &config.eps {
            let ells = if config.ell.is_empty() { vec![adaptive_ell(eps, n)] } else { config.ell.clone() };
            for ell in ells {
                cells.push(Cell { n: Some(n), eps: Some(eps), ell: Some(ell), ..Cell::default() });
            }
        }
    }
    cells
}

pub fn run_adaptive(config: &ExperimentConfig) -> Result<Vec<TrialRecord>, LabError> {
    let name = config.experiment.name();
    let cells = adaptive_cells(config);
    if config.transcripts {
        let dir = config.out.join("transcripts");
        fs::create_dir_all(&dir).map_err(|e| LabError::io(&dir, e))?;
    }
    run_trials(&cells, config.trials, |c, cell, trial| {
        let (n, eps, ell) = (cell.n.unwrap(), cell.eps.unwrap(), cell.ell.unwrap());
        let p = ((1.0 + eps) / f64::from(n)).min(1.0);
        let hidden_seed = trial_rng(config.seed, c, trial).next_u64();
        let mut hidden = HiddenGraph::new(n, p, hidden_seed)?;
        let outcome = dfs_find_path(&mut hidden, ell)?;
        if config.transcripts {
            let path = config.out.join("transcripts").join(format!("cell{c}_trial{trial}.csv"));
            let file = fs::File::create(&path).map_err(|e| LabError::io(&path, e))?;
            write_transcript(BufWriter::new(file), &outcome.ledger).map_err(|e| LabError::io(&path, e))?;
        }
        let q = outcome.queries as f64;
        let mut rows = vec![
            TrialRecord::new(name, config.seed, trial, cell, "success", f64::from(u8::from(outcome.success))),
            TrialRecord::new(name, config.seed, trial, cell, "queries", q),
            TrialRecord::new(name, config.seed, trial, cell, "positives", outcome.positive_answers as f64),
        ];
        if eps > 0.0 {
            rows.push(TrialRecord::new(name, config.seed, trial, cell, "normalized", q * p * eps / f64::from(ell)));
        }
        Ok(rows)
    })
}
