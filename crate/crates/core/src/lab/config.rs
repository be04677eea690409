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

//! Experiment configuration: `key = value` files with flag overrides.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use super::LabError;

pub const MAX_SAMPLE_T: u32 = 1_000_000;
pub const MAX_COVER_T: u32 = 100_000;
pub const MAX_GRAPH_N: u32 = 1_000_000;
pub const MAX_QUERY_N: u32 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    CovScaling,
    Census,
    Gnp,
    Adaptive,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::CovScaling => "cov_scaling",
            ExperimentKind::Census => "census",
            ExperimentKind::Gnp => "gnp",
            ExperimentKind::Adaptive => "adaptive",
        }
    }
}

impl FromStr for ExperimentKind {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cov_scaling" | "cov-scaling" => Ok(ExperimentKind::CovScaling),
            "census" => Ok(ExperimentKind::Census),
            "gnp" => Ok(ExperimentKind::Gnp),
            "adaptive" => Ok(ExperimentKind::Adaptive),
            _ => Err(LabError::Config(format!(
                "unknown experiment `{s}` (expected cov_scaling, census, gnp or adaptive)"
            ))),
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    /// Records as CSV.
    Delimited,
    /// Records as a JSON array.
    Structured,
}

impl FromStr for OutputFormat {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "delimited" | "csv" => Ok(OutputFormat::Delimited),
            "structured" | "json" => Ok(OutputFormat::Structured),
            _ => Err(LabError::Config(format!("unknown format `{s}` (expected delimited or structured)"))),
        }
    }
}

/// Thresholds of the acceptance predicates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PredicateOptions {
    /// Tail events `|cov - mean| > f * t / ell` for each factor `f`.
    pub tail_factors: Vec<f64>,
    /// Largest allowed tail frequency (first factor, largest `t`).
    pub tail_max: f64,
    /// Largest allowed max/min of the mean normalized cover.
    pub ratio_spread_max: f64,
    /// Standard errors allowed between estimate and enumeration.
    pub z_max: f64,
    /// Giant size must lie in `[giant_low, giant_high] * eps * n`.
    pub giant_low: f64,
    pub giant_high: f64,
    /// Second component at most `second_factor * ln(n) / eps^2`.
    pub second_factor: f64,
    /// Giant 2-core at most `core_factor * eps^2 * n`.
    pub core_factor: f64,
    /// Fraction of trials that must satisfy each giant-structure predicate.
    pub structure_fraction_min: f64,
    /// Largest allowed max/min of mean `total_upper / (eps^2 n)`.
    pub upper_spread_max: f64,
    pub success_min: f64,
    /// Largest allowed max/min of the median normalized query count.
    pub norm_spread_max: f64,
}

impl Default for PredicateOptions {
    fn default() -> Self {
        PredicateOptions {
            tail_factors: vec![0.1, 0.2],
            tail_max: 0.01,
            ratio_spread_max: 2.5,
            z_max: 3.0,
            giant_low: 1.0,
            giant_high: 3.0,
            second_factor: 20.0,
            core_factor: 3.0,
            structure_fraction_min: 0.9,
            upper_spread_max: 4.0,
            success_min: 0.8,
            norm_spread_max: 2.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub seed: u64,
    pub trials: u32,
    pub t: Vec<u32>,
    /// Minimum path length in edges. Empty means derived from `eps` and
    /// `delta` where the experiment supports it.
    pub ell: Vec<u32>,
    pub m: Vec<u32>,
    pub n: Vec<u32>,
    pub eps: Vec<f64>,
    pub delta: Vec<f64>,
    /// Uniform trees per census cell.
    pub samples: u64,
    /// Also draw the Galton–Watson surrogate in the gnp experiment.
    pub surrogate: bool,
    /// Write one query transcript per adaptive trial.
    pub transcripts: bool,
    #[serde(skip)]
    pub out: PathBuf,
    #[serde(skip)]
    pub format: OutputFormat,
    /// Worker threads; 0 uses every core. Never affects the output.
    #[serde(skip)]
    pub threads: usize,
    pub predicates: PredicateOptions,
}

impl ExperimentConfig {
    /// Defaults sized for runs of a few minutes.
    pub fn defaults(experiment: ExperimentKind) -> Self {
        let base = ExperimentConfig {
            experiment,
            seed: 1,
            trials: 20,
            t: Vec::new(),
            ell: Vec::new(),
            m: Vec::new(),
            n: Vec::new(),
            eps: Vec::new(),
            delta: Vec::new(),
            samples: 0,
            surrogate: false,
            transcripts: false,
            out: PathBuf::from("out"),
            format: OutputFormat::Delimited,
            threads: 0,
            predicates: PredicateOptions::default(),
        };
        match experiment {
            ExperimentKind::CovScaling => ExperimentConfig {
                trials: 200,
                t: vec![1_000, 10_000, 100_000],
                ell: vec![4, 8, 16],
                ..base
            },
            ExperimentKind::Census => ExperimentConfig {
                trials: 1,
                t: vec![3, 4, 5, 6, 7],
                m: vec![1, 2, 3, 4, 5, 6],
                samples: 100_000,
                ..base
            },
            ExperimentKind::Gnp => ExperimentConfig {
                trials: 30,
                n: vec![200_000],
                eps: vec![0.1],
                delta: vec![1.0],
                ..base
            },
            ExperimentKind::Adaptive => ExperimentConfig {
                trials: 20,
                n: vec![10_000],
                eps: vec![0.2, 0.3, 0.4],
                ..base
            },
        }
    }

    /// Parses a `key = value` file (`#` starts a comment) on top of the
    /// defaults of its `experiment` key.
    pub fn parse(text: &str) -> Result<Self, LabError> {
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| LabError::Config(format!("line {}: expected key = value", i + 1)))?;
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        let kind = pairs
            .iter()
            .find(|(k, _)| k == "experiment")
            .ok_or_else(|| LabError::Config("missing `experiment` key".into()))?
            .1
            .parse()?;
        let mut config = Self::defaults(kind);
        for (k, v) in &pairs {
            config.set(k, v)?;
        }
        Ok(config)
    }

    /// Sets one key; list values are comma separated.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), LabError> {
        fn one<T: FromStr>(key: &str, v: &str) -> Result<T, LabError> {
            v.trim().parse().map_err(|_| LabError::Config(format!("bad value `{v}` for `{key}`")))
        }
        fn list<T: FromStr>(key: &str, v: &str) -> Result<Vec<T>, LabError> {
            if v.trim().is_empty() {
                return Ok(Vec::new());
            }
            v.split(',').map(|x| one(key, x)).collect()
        }
        fn flag(key: &str, v: &str) -> Result<bool, LabError> {
            match v.trim() {
                "true" | "1" | "yes" => Ok(true),
                "false" | "0" | "no" => Ok(false),
                _ => Err(LabError::Config(format!("bad value `{v}` for `{key}`"))),
            }
        }
        let p = &mut self.predicates;
        match key {
            "experiment" => {
                let kind: ExperimentKind = value.trim().parse()?;
                if kind != self.experiment {
                    let keep = self.clone();
                    *self = Self::defaults(kind);
                    self.seed = keep.seed;
                    self.out = keep.out;
                    self.format = keep.format;
                    self.threads = keep.threads;
                }
            }
            "seed" => self.seed = one(key, value)?,
            "trials" => self.trials = one(key, value)?,
            "t" => self.t = list(key, value)?,
            "ell" | "min_edges" => self.ell = list(key, value)?,
            "m" => self.m = list(key, value)?,
            "n" => self.n = list(key, value)?,
            "eps" => self.eps = list(key, value)?,
            "delta" => self.delta = list(key, value)?,
            "samples" => self.samples = one(key, value)?,
            "surrogate" => self.surrogate = flag(key, value)?,
            "transcripts" => self.transcripts = flag(key, value)?,
            "out" => self.out = PathBuf::from(value.trim()),
            "format" => self.format = value.trim().parse()?,
            "threads" => self.threads = one(key, value)?,
            "tail_factors" => p.tail_factors = list(key, value)?,
            "tail_max" => p.tail_max = one(key, value)?,
            "ratio_spread_max" => p.ratio_spread_max = one(key, value)?,
            "z_max" => p.z_max = one(key, value)?,
            "giant_low" => p.giant_low = one(key, value)?,
            "giant_high" => p.giant_high = one(key, value)?,
            "second_factor" => p.second_factor = one(key, value)?,
            "core_factor" => p.core_factor = one(key, value)?,
            "structure_fraction_min" => p.structure_fraction_min = one(key, value)?,
            "upper_spread_max" => p.upper_spread_max = one(key, value)?,
            "success_min" => p.success_min = one(key, value)?,
            "norm_spread_max" => p.norm_spread_max = one(key, value)?,
            _ => return Err(LabError::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Grid and budget checks; run before any work starts.
    pub fn validate(&self) -> Result<(), LabError> {
        let cfg = |msg: String| Err(LabError::Config(msg));
        let budget = |msg: String| Err(LabError::Budget(msg));
        if self.trials == 0 {
            return cfg("trials must be positive".into());
        }
        if self.t.contains(&0) || self.ell.contains(&0) || self.m.contains(&0) || self.n.contains(&0) {
            return cfg("grid entries must be positive".into());
        }
        if let Some(d) = self.delta.iter().find(|&&d| !(d > 0.0 && d <= 1.0)) {
            return cfg(format!("delta must lie in (0, 1], got {d}"));
        }
        let need = |name: &str, empty: bool| {
            if empty {
                Err(LabError::Config(format!("`{name}` must not be empty for {}", self.experiment)))
            } else {
                Ok(())
            }
        };
        match self.experiment {
            ExperimentKind::CovScaling => {
                need("t", self.t.is_empty())?;
                need("ell", self.ell.is_empty())?;
                if let Some(&t) = self.t.iter().find(|&&t| t > MAX_COVER_T) {
                    return budget(format!("t = {t} exceeds the cover budget {MAX_COVER_T}"));
                }
            }
            ExperimentKind::Census => {
                need("t", self.t.is_empty())?;
                need("m", self.m.is_empty())?;
                if let Some(&t) = self.t.iter().find(|&&t| t > MAX_SAMPLE_T) {
                    return budget(format!("t = {t} exceeds the sampling budget {MAX_SAMPLE_T}"));
                }
                if let Some(&t) = self.t.iter().find(|&&t| t > crate::census::ENUMERATION_MAX_T) {
                    if self.samples == 0 {
                        return cfg(format!("t = {t} cannot be enumerated and samples = 0"));
                    }
                }
            }
            ExperimentKind::Gnp | ExperimentKind::Adaptive => {
                need("n", self.n.is_empty())?;
                need("eps", self.eps.is_empty())?;
                let max = if self.experiment == ExperimentKind::Gnp { MAX_GRAPH_N } else { MAX_QUERY_N };
                if let Some(&n) = self.n.iter().find(|&&n| n > max) {
                    return budget(format!("n = {n} exceeds the budget {max}"));
                }
                for &n in &self.n {
                    for &e in &self.eps {
                        let p = (1.0 + e) / f64::from(n);
                        if !(e >= -1.0) || p > 1.0 {
                            return cfg(format!("eps = {e} gives p = {p} outside [0, 1] at n = {n}"));
                        }
                        if e <= 0.0 && self.ell.is_empty() {
                            return cfg(format!("eps = {e} needs an explicit `ell`"));
                        }
                    }
                }
                if self.experiment == ExperimentKind::Gnp && self.ell.iter().any(|&l| l < 3) {
                    return cfg("gnp needs ell >= 3".into());
                }
            }
        }
        Ok(())
    }

    /// `delta` values, defaulting to 1.
    pub fn deltas(&self) -> Vec<f64> {
        if self.delta.is_empty() {
            vec![1.0]
        } else {
            self.delta.clone()
        }
    }
}

/// `ceil(delta / eps)`, at least 3, for the cover bounds.
pub fn gnp_ell(eps: f64, delta: f64) -> u32 {
    ((delta / eps - 1e-9).ceil() as u32).max(3)
}

/// `floor(eps^2 n / 5)`, at least 1, for the path-finding target.
pub fn adaptive_ell(eps: f64, n: u32) -> u32 {
    ((eps * eps * f64::from(n) / 5.0 + 1e-9).floor() as u32).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_and_overrides() {
        let text = "# scaling\nexperiment = cov_scaling\nseed = 7\nt = 100, 200 # two sizes\nell=4\n";
        let mut c = ExperimentConfig::parse(text).unwrap();
        assert_eq!(c.experiment, ExperimentKind::CovScaling);
        assert_eq!((c.seed, c.t.clone(), c.ell.clone(), c.trials), (7, vec![100, 200], vec![4], 200));
        c.set("trials", "5").unwrap();
        c.set("format", "json").unwrap();
        assert_eq!(c.format, OutputFormat::Structured);
        c.validate().unwrap();
        assert!(c.set("bogus", "1").is_err());
        assert!(ExperimentConfig::parse("seed = 1\n").is_err());
        assert!(ExperimentConfig::parse("experiment = nope\n").is_err());
    }

    #[test]
    fn budgets_refuse() {
        let mut c = ExperimentConfig::defaults(ExperimentKind::CovScaling);
        c.t = vec![200_000];
        assert!(matches!(c.validate(), Err(LabError::Budget(_))));
        let mut g = ExperimentConfig::defaults(ExperimentKind::Gnp);
        g.delta = vec![1.5];
        assert!(g.validate().is_err());
        g.delta = vec![1.0];
        g.eps = vec![-1.0];
        assert!(g.validate().is_err());
        g.ell = vec![5];
        g.validate().unwrap();
    }

    #[test]
    fn derived_lengths() {
        assert_eq!(adaptive_ell(0.3, 10_000), 180);
        assert_eq!(adaptive_ell(0.2, 10_000), 80);
        assert_eq!(gnp_ell(0.1, 1.0), 10);
        assert_eq!(gnp_ell(0.05, 1.0), 20);
        assert_eq!(gnp_ell(0.2, 1.0), 5);
        assert_eq!(gnp_ell(0.5, 1.0), 3);
    }
}
