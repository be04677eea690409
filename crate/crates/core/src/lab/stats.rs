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

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tail {
    pub threshold: f64,
    /// Fraction of observations with `|x - mean| > threshold`.
    pub frequency: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub n_obs: usize,
    pub mean: f64,
    /// Sample variance (denominator `n - 1`); 0 for fewer than two values.
    pub variance: f64,
    pub std_error: f64,
    pub min: f64,
    pub max: f64,
    pub q05: f64,
    pub q50: f64,
    pub q95: f64,
    pub tails: Vec<Tail>,
}

/// Linear interpolation between order statistics (type 7).
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

impl SummaryStats {
    pub fn from_values(values: &[f64], tail_thresholds: &[f64]) -> Self {
        let n = values.len();
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mean = if n == 0 { f64::NAN } else { values.iter().sum::<f64>() / n as f64 };
        let variance = if n < 2 {
            0.0
        } else {
            values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64
        };
        let tails = tail_thresholds
            .iter()
            .map(|&threshold| Tail {
                threshold,
                frequency: values.iter().filter(|x| (*x - mean).abs() > threshold).count() as f64 / n.max(1) as f64,
            })
            .collect();
        SummaryStats {
            n_obs: n,
            mean,
            variance,
            std_error: if n == 0 { f64::NAN } else { (variance / n as f64).sqrt() },
            min: sorted.first().copied().unwrap_or(f64::NAN),
            max: sorted.last().copied().unwrap_or(f64::NAN),
            q05: quantile(&sorted, 0.05),
            q50: quantile(&sorted, 0.5),
            q95: quantile(&sorted, 0.95),
            tails,
        }
    }
}
