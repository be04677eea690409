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

//! `pathlab run` executes an experiment suite; `pathlab replay` audits a
//! recorded query transcript.
//!
//! Exit codes: 0 when every configured predicate passes (or a replay checks
//! out), 1 when some predicate fails, 2 on any error.

use std::fs::{self, File};
use std::io::BufReader;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use pathlab::lab::{run_and_emit, ExperimentConfig, ExperimentKind};
use pathlab::oracle::{read_transcript, replay_dfs, validate_outcome};

#[derive(Parser)]
#[command(name = "pathlab", version, about = "Path-cover experiments on random trees and graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment suite and write records, summary and plot data.
    Run(Box<RunArgs>),
    /// Re-run the depth-first search against a recorded transcript.
    Replay(ReplayArgs),
}

/// Flags override values read from `--config`. Lists are comma separated.
#[derive(Args)]
struct RunArgs {
    /// `key = value` config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// cov_scaling, census, gnp or adaptive.
    #[arg(long)]
    experiment: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u32>,
    #[arg(long)]
    t: Option<String>,
    #[arg(long, alias = "min-edges")]
    ell: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
    #[arg(long)]
    delta: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv (delimited) or json (structured) records.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    threads: Option<usize>,
    /// Extra `key=value` settings, e.g. `--set surrogate=true`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    extra: Vec<String>,
}

#[derive(Args)]
struct ReplayArgs {
    /// Transcript written by an adaptive run.
    #[arg(long)]
    transcript: PathBuf,
    /// Number of vertices of the hidden graph.
    #[arg(long)]
    n: u32,
    /// Target path length in edges.
    #[arg(long, alias = "min-edges")]
    ell: u32,
    /// Claimed path, comma separated; checked against the transcript alone.
    #[arg(long)]
    path: Option<String>,
}

fn build_config(args: &RunArgs) -> Result<ExperimentConfig> {
    let mut config = match (&args.config, &args.experiment) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            ExperimentConfig::parse(&text)?
        }
        (None, Some(name)) => ExperimentConfig::defaults(name.parse::<ExperimentKind>()?),
        (None, None) => bail!("either --config or --experiment is required"),
    };
    let mut overrides: Vec<(&str, String)> = Vec::new();
    if let Some(v) = &args.experiment {
        overrides.push(("experiment", v.clone()));
    }
    let scalars = [("seed", args.seed.map(|v| v.to_string())), ("trials", args.trials.map(|v| v.to_string()))];
    overrides.extend(scalars.into_iter().filter_map(|(k, v)| Some((k, v?))));
    let lists = [
        ("t", &args.t),
        ("ell", &args.ell),
        ("m", &args.m),
        ("n", &args.n),
        ("eps", &args.eps),
        ("delta", &args.delta),
        ("format", &args.format),
    ];
    overrides.extend(lists.into_iter().filter_map(|(k, v)| Some((k, v.clone()?))));
    if let Some(out) = &args.out {
        overrides.push(("out", out.display().to_string()));
    }
    if let Some(threads) = args.threads {
        overrides.push(("threads", threads.to_string()));
    }
    for (k, v) in overrides {
        config.set(k, &v)?;
    }
    for kv in &args.extra {
        let (k, v) = kv.split_once('=').with_context(|| format!("`{kv}` is not key=value"))?;
        config.set(k.trim(), v)?;
    }
    Ok(config)
}

fn run(args: &RunArgs) -> Result<bool> {
    let config = build_config(args)?;
    let (result, files) = run_and_emit(&config)?;
    for p in &result.summary.predicates {
        println!(
            "{} {} {} {} {}",
            if p.pass { "PASS" } else { "FAIL" },
            p.name,
            p.value,
            p.comparison,
            p.threshold
        );
    }
    for f in &files {
        eprintln!("wrote {}", f.display());
    }
    Ok(result.summary.all_pass)
}

fn replay(args: &ReplayArgs) -> Result<bool> {
    let file = File::open(&args.transcript).with_context(|| format!("opening {}", args.transcript.display()))?;
    let transcript = read_transcript(BufReader::new(file))?;
    let outcome = replay_dfs(&transcript, args.n, args.ell)?;
    println!("replayed {} queries, {} positive", outcome.queries, outcome.positive_answers);
    match &outcome.path {
        Some(path) => {
            validate_outcome(&transcript, args.n, args.ell, path)?;
            println!("search path of {} edges is witnessed", path.len() - 1);
        }
        None => println!("search stopped without a path"),
    }
    if let Some(text) = &args.path {
        let claimed: Vec<u32> = text
            .split(',')
            .map(|x| x.trim().parse().with_context(|| format!("bad vertex `{x}`")))
            .collect::<Result<_>>()?;
        validate_outcome(&transcript, args.n, args.ell, &claimed)?;
        println!("claimed path is witnessed");
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => run(args),
        Command::Replay(args) => replay(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
