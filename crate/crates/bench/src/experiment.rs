//! Seeded, parallel learning experiments with CSV output.

use std::io::Write;
use std::path::{Path, PathBuf};

use ets_core::automata::{equivalence, MealyMachine};
use ets_core::learn::{learn_until, LearnConfig, QueryStats, RunRecord, SimulatedTeacher};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;

use crate::error::{BenchError, Result};
use crate::model::ModelSpec;
use crate::strategy::{parse_mu, parse_strategy};

/// Seeds as an explicit list or as a count `n` meaning `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Seeds {
    Count(u64),
    List(Vec<u64>),
}

impl Seeds {
    pub fn to_vec(&self) -> Vec<u64> {
        match self {
            Seeds::Count(n) => (1..=*n).collect(),
            Seeds::List(v) => v.clone(),
        }
    }
}

fn default_k() -> usize {
    2
}

fn default_gamma() -> f64 {
    0.2
}

fn default_mu() -> String {
    "default".into()
}

fn default_stop() -> bool {
    true
}

fn default_warmup() -> usize {
    5
}

/// Experiment description, read from TOML.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub models: Vec<String>,
    pub strategies: Vec<String>,
    pub seeds: Seeds,
    /// Symbol budget per run.
    pub budget: u64,
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    #[serde(default = "default_mu")]
    pub mu: String,
    #[serde(default)]
    pub master_seed: u64,
    /// Worker threads; zero uses every core.
    #[serde(default)]
    pub threads: usize,
    #[serde(default)]
    pub test_budget: Option<u64>,
    #[serde(default = "default_warmup")]
    pub warmup_states: usize,
    /// Stop each run as soon as its hypothesis is equivalent to the model,
    /// so the counters measure the cost of learning it.
    #[serde(default = "default_stop")]
    pub stop_when_learned: bool,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub summary: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| BenchError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(BenchError::Config(m.into()));
        if self.models.is_empty() {
            return fail("no models");
        }
        if self.strategies.is_empty() {
            return fail("no strategies");
        }
        if self.seeds.to_vec().is_empty() {
            return fail("no seeds");
        }
        if self.budget == 0 {
            return fail("budget must be positive");
        }
        let mu = parse_mu(&self.mu)?;
        for s in &self.strategies {
            parse_strategy(s, self.k, self.gamma, &mu)?;
        }
        for m in &self.models {
            m.parse::<ModelSpec>()?;
        }
        Ok(())
    }
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub model: String,
    pub strategy: String,
    pub seed: u64,
    pub learned: bool,
    pub states: usize,
    pub stats: QueryStats,
    /// Error text for a cell that could not run; not part of the CSV.
    pub note: String,
}

impl Row {
    fn failed(model: &str, strategy: &str, seed: u64, note: String) -> Self {
        Row {
            model: model.into(),
            strategy: strategy.into(),
            seed,
            learned: false,
            states: 0,
            stats: QueryStats::default(),
            note,
        }
    }

    pub fn from_record(r: &RunRecord) -> Self {
        Row {
            model: r.model.clone(),
            strategy: r.strategy.clone(),
            seed: r.seed,
            learned: r.learned,
            states: r.states,
            stats: r.stats,
            note: String::new(),
        }
    }
}

/// Stable 64-bit cell seed: FNV-1a over the fields, then a splitmix64
/// finalizer.
pub fn cell_seed(master: u64, model: &str, strategy: &str, seed: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |bytes: &[u8]| {
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    feed(&master.to_le_bytes());
    feed(model.as_bytes());
    feed(&[0xff]);
    feed(strategy.as_bytes());
    feed(&[0xff]);
    feed(&seed.to_le_bytes());
    let mut z = h.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Learns one (model, strategy, seed) cell and returns the record with the
/// final hypothesis.
pub fn learn_cell(
    cfg: &ExperimentConfig,
    model: &str,
    strategy: &str,
    seed: u64,
) -> Result<(RunRecord, Option<MealyMachine>)> {
    let sul = model.parse::<ModelSpec>()?.load()?;
    let mu = parse_mu(&cfg.mu)?;
    let strat = parse_strategy(strategy, cfg.k, cfg.gamma, &mu)?;
    let mut teacher = SimulatedTeacher::new(sul.clone(), Some(cfg.budget));
    let mut rng = ChaCha8Rng::seed_from_u64(cell_seed(cfg.master_seed, model, strategy, seed));
    let lc = LearnConfig { test_budget: cfg.test_budget, warmup_states: cfg.warmup_states };
    let stop = cfg.stop_when_learned;
    let run = learn_until(&mut teacher, &strat, &mut rng, &lc, |h| stop && matches!(equivalence(h, &sul), Ok(None)))?;
    Ok((RunRecord::new(model, strategy, seed, &sul, &run), run.hypothesis))
}

/// Runs one cell; failures become an unlearned row with a note.
pub fn run_cell(cfg: &ExperimentConfig, model: &str, strategy: &str, seed: u64) -> Row {
    match learn_cell(cfg, model, strategy, seed) {
        Ok((record, _)) => Row::from_record(&record),
        Err(e) => Row::failed(model, strategy, seed, e.to_string()),
    }
}

/// Runs every cell, in parallel, and returns the rows in config order
/// (model, then strategy, then seed).
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    cfg.validate()?;
    let seeds = cfg.seeds.to_vec();
    let mut cells = Vec::new();
    for m in &cfg.models {
        for s in &cfg.strategies {
            for &seed in &seeds {
                cells.push((m.as_str(), s.as_str(), seed));
            }
        }
    }
    let work = || cells.par_iter().map(|&(m, s, seed)| run_cell(cfg, m, s, seed)).collect::<Vec<_>>();
    let rows = if cfg.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| BenchError::Config(e.to_string()))?
            .install(work)
    } else {
        work()
    };
    Ok(rows)
}

pub const HEADER: [&str; 10] = [
    "model",
    "strategy",
    "seed",
    "learned",
    "states",
    "learn_inputs",
    "learn_resets",
    "test_inputs",
    "test_resets",
    "total",
];

pub fn write_rows<W: Write>(rows: &[Row], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        let s = r.stats;
        w.write_record([
            r.model.clone(),
            r.strategy.clone(),
            r.seed.to_string(),
            u8::from(r.learned).to_string(),
            r.states.to_string(),
            s.learn_symbols.to_string(),
            s.learn_resets.to_string(),
            s.test_symbols.to_string(),
            s.test_resets.to_string(),
            s.total().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Aggregate over the seeds of one (model, strategy) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub model: String,
    pub strategy: String,
    pub runs: usize,
    pub learned_count: usize,
    pub mean_states: f64,
    pub mean_learn_inputs: f64,
    pub mean_learn_resets: f64,
    pub mean_test_inputs: f64,
    pub mean_test_resets: f64,
    pub mean_total: f64,
}

/// One summary per (model, strategy) pair, in order of first appearance.
pub fn summarize(rows: &[Row]) -> Vec<Summary> {
    let mut keys: Vec<(&str, &str)> = Vec::new();
    for r in rows {
        let k = (r.model.as_str(), r.strategy.as_str());
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    keys.into_iter()
        .map(|(m, s)| {
            let group: Vec<&Row> = rows.iter().filter(|r| r.model == m && r.strategy == s).collect();
            let n = group.len() as f64;
            let mean = |f: &dyn Fn(&Row) -> u64| group.iter().map(|r| f(r) as f64).sum::<f64>() / n;
            Summary {
                model: m.into(),
                strategy: s.into(),
                runs: group.len(),
                learned_count: group.iter().filter(|r| r.learned).count(),
                mean_states: mean(&|r| r.states as u64),
                mean_learn_inputs: mean(&|r| r.stats.learn_symbols),
                mean_learn_resets: mean(&|r| r.stats.learn_resets),
                mean_test_inputs: mean(&|r| r.stats.test_symbols),
                mean_test_resets: mean(&|r| r.stats.test_resets),
                mean_total: mean(&|r| r.stats.total()),
            }
        })
        .collect()
}

pub fn write_summary<W: Write>(summaries: &[Summary], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "model",
        "strategy",
        "runs",
        "learned_count",
        "mean_states",
        "mean_learn_inputs",
        "mean_learn_resets",
        "mean_test_inputs",
        "mean_test_resets",
        "mean_total",
    ])?;
    for s in summaries {
        w.write_record([
            s.model.clone(),
            s.strategy.clone(),
            s.runs.to_string(),
            s.learned_count.to_string(),
            format!("{:.2}", s.mean_states),
            format!("{:.2}", s.mean_learn_inputs),
            format!("{:.2}", s.mean_learn_resets),
            format!("{:.2}", s.mean_test_inputs),
            format!("{:.2}", s.mean_test_resets),
            format!("{:.2}", s.mean_total),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(extra: &str) -> ExperimentConfig {
        ExperimentConfig::from_toml(&format!(
            "models = [\"m1\"]\nstrategies = [\"baseline\"]\nseeds = 3\nbudget = 100000\n{extra}"
        ))
        .unwrap()
    }

    #[test]
    fn m1_rows() {
        let rows = run_experiment(&config("")).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.learned && r.states == 2 && r.note.is_empty()));
        assert_eq!(rows.iter().map(|r| r.seed).collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn starved_rows_are_unlearned() {
        let mut cfg = config("");
        cfg.budget = 1;
        assert!(run_experiment(&cfg).unwrap().iter().all(|r| !r.learned));
    }

    #[test]
    fn bad_configs() {
        let base = "models = [\"m1\"]\nstrategies = [\"baseline\"]\n";
        assert!(ExperimentConfig::from_toml(&format!("{base}seeds = []\nbudget = 5")).is_err());
        assert!(ExperimentConfig::from_toml(&format!("{base}seeds = 2\nbudget = 0")).is_err());
        assert!(ExperimentConfig::from_toml(&format!("{base}seeds = 2\nbudget = 5\ncolour = 1")).is_err());
        assert!(ExperimentConfig::from_toml("models = [\"m1\"]\nstrategies = [\"x\"]\nseeds = 1\nbudget = 5").is_err());
    }

    #[test]
    fn cell_seeds_are_stable_and_distinct() {
        let a = cell_seed(0, "m1", "baseline", 1);
        assert_eq!(a, cell_seed(0, "m1", "baseline", 1));
        assert_ne!(a, cell_seed(0, "m1", "baseline", 2));
        assert_ne!(a, cell_seed(1, "m1", "baseline", 1));
        assert_ne!(cell_seed(0, "m1", "moe", 1), cell_seed(0, "m1m", "oe", 1));
    }

    #[test]
    fn summary_means() {
        let rows = run_experiment(&config("")).unwrap();
        let s = summarize(&rows);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].learned_count, 3);
        assert_eq!(s[0].mean_states, 2.0);
    }
}
