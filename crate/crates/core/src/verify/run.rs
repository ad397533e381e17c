//! Split-parallel execution with per-split checkpoints.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamilton::DEFAULT_NODE_BUDGET;

/// Enumeration strategy requested by the caller.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyChoice {
    /// Complement enumeration when the estimated class count is below the
    /// feasibility limit, else closure-reduced when sound, else an error.
    Auto,
    Full,
    Complement,
    ClosureReduced,
}

impl std::str::FromStr for StrategyChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(StrategyChoice::Auto),
            "full" => Ok(StrategyChoice::Full),
            "complement" => Ok(StrategyChoice::Complement),
            "closure-reduced" | "closure" => Ok(StrategyChoice::ClosureReduced),
            _ => Err(Error::Invalid(format!("unknown strategy {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Worker threads; 0 uses the global rayon pool.
    pub jobs: usize,
    pub node_budget: u64,
    /// Allow parameters outside the statement's range.
    pub exploratory: bool,
    pub strategy: StrategyChoice,
    /// Directory for per-split checkpoint files.
    pub checkpoint_dir: Option<PathBuf>,
    /// Largest estimated class count that `Auto` enumerates directly.
    pub feasibility_limit: f64,
    /// Augmentation depth at which the enumeration is split.
    pub split_depth: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            jobs: 0,
            node_budget: DEFAULT_NODE_BUDGET,
            exploratory: false,
            strategy: StrategyChoice::Auto,
            checkpoint_dir: None,
            feasibility_limit: 1e8,
            split_depth: 6,
        }
    }
}

impl RunOptions {
    pub fn exploratory(mut self) -> Self {
        self.exploratory = true;
        self
    }

    pub fn strategy(mut self, s: StrategyChoice) -> Self {
        self.strategy = s;
        self
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }
}

pub(crate) enum Verdict {
    OutOfScope,
    Holds,
    Exceptional(String),
    Violation(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct Tally {
    pub examined: u64,
    pub hits: u64,
    pub holds: u64,
    pub exceptional: BTreeSet<String>,
    pub violations: BTreeSet<String>,
}

impl Tally {
    fn add(&mut self, v: Verdict) {
        self.examined += 1;
        match v {
            Verdict::OutOfScope => return,
            Verdict::Holds => self.holds += 1,
            Verdict::Exceptional(c) => {
                self.exceptional.insert(c);
            }
            Verdict::Violation(c) => {
                self.violations.insert(c);
            }
        }
        self.hits += 1;
    }

    pub fn merge(&mut self, other: Tally) {
        self.examined += other.examined;
        self.hits += other.hits;
        self.holds += other.holds;
        self.exceptional.extend(other.exceptional);
        self.violations.extend(other.violations);
    }
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    key: String,
    tally: Tally,
}

pub(crate) fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Classifies every item of every piece, in parallel over pieces, and
/// merges the tallies in piece order.
pub(crate) fn run_pieces<S, F>(pieces: Vec<S>, key: &str, opts: &RunOptions, classify: F) -> Result<Tally>
where
    S: Iterator + Send,
    F: Fn(S::Item) -> Result<Verdict> + Sync,
{
    if let Some(dir) = &opts.checkpoint_dir {
        fs::create_dir_all(dir)?;
    }
    let run = || {
        pieces
            .into_par_iter()
            .enumerate()
            .map(|(i, piece)| {
                let path = opts.checkpoint_dir.as_ref().map(|d| d.join(format!("{key}.split{i}.json")));
                if let Some(p) = &path {
                    if let Ok(text) = fs::read_to_string(p) {
                        if let Ok(c) = serde_json::from_str::<Checkpoint>(&text) {
                            if c.key == key {
                                return Ok(c.tally);
                            }
                        }
                    }
                }
                let mut t = Tally::default();
                for item in piece {
                    t.add(classify(item)?);
                }
                if let Some(p) = &path {
                    let c = Checkpoint { key: key.to_string(), tally: t.clone() };
                    fs::write(p, serde_json::to_string(&c)?)?;
                }
                Ok(t)
            })
            .collect::<Result<Vec<Tally>>>()
    };
    let tallies = with_pool(opts.jobs, run)??;
    let mut total = Tally::default();
    for t in tallies {
        total.merge(t);
    }
    Ok(total)
}
