//! Exhaustive extremal values of `W` and `H` over non-Hamiltonian,
//! non-traceable and bipartite non-Hamiltonian graphs with a minimum
//! degree condition.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::run::{with_pool, RunOptions};
use super::Claim;
use crate::error::{Error, Result};
use crate::families::{build, build_bipartite, FamilySpec, FamilyTag};
use crate::graph::Graph;
use crate::hamilton::{Mode, Solver};
use crate::iso::{canonical_form, enumerate_bipartite_pruned, enumerate_graphs, EnumFilter};
use crate::metrics::DistanceProfile;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    MinWiener,
    MaxHarary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Class {
    NonHamiltonian,
    NonTraceable,
    /// Balanced bipartite of order `2n`.
    BipartiteNonHamiltonian,
}

/// An objective over a class, written `min-wiener/non-hamiltonian`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Problem {
    pub objective: Objective,
    pub class: Class,
}

impl Objective {
    fn slug(self) -> &'static str {
        match self {
            Objective::MinWiener => "min-wiener",
            Objective::MaxHarary => "max-harary",
        }
    }
}

impl Class {
    fn slug(self) -> &'static str {
        match self {
            Class::NonHamiltonian => "non-hamiltonian",
            Class::NonTraceable => "non-traceable",
            Class::BipartiteNonHamiltonian => "bipartite-non-hamiltonian",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.objective.slug(), self.class.slug())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Invalid(format!(
                "unknown problem {s:?}; expected min-wiener|max-harary / non-hamiltonian|non-traceable|bipartite-non-hamiltonian"
            ))
        };
        let (o, c) = s.split_once('/').ok_or_else(bad)?;
        let objective = [Objective::MinWiener, Objective::MaxHarary].into_iter().find(|x| x.slug() == o).ok_or_else(bad)?;
        let class = [Class::NonHamiltonian, Class::NonTraceable, Class::BipartiteNonHamiltonian]
            .into_iter()
            .find(|x| x.slug() == c)
            .ok_or_else(bad)?;
        Ok(Problem { objective, class })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexValue {
    Integer(u64),
    Rational(Rational),
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexValue::Integer(v) => write!(f, "{v}"),
            IndexValue::Rational(r) => write!(f, "{r}"),
        }
    }
}

impl IndexValue {
    fn as_rational(&self) -> Rational {
        match self {
            IndexValue::Integer(v) => Rational::from_integer(*v as i128),
            IndexValue::Rational(r) => r.clone(),
        }
    }
}

/// The family graph the extremal value is compared against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reference {
    pub family: String,
    pub value: IndexValue,
    /// Whether `(n, k)` lies in the range where the family is claimed to be
    /// the unique extremal graph.
    pub in_stated_range: bool,
    /// `found` compared with `value`: `less`, `equal` or `greater`.
    pub found_vs_reference: String,
    pub reference_attains: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalResult {
    pub schema_version: u32,
    pub problem: Problem,
    /// Order, or half-order for the bipartite class.
    pub n: usize,
    pub k: usize,
    pub graphs_examined: u64,
    pub class_size: u64,
    /// `None` when the class is empty.
    pub value: Option<IndexValue>,
    /// Canonical graph6 of every class attaining the value.
    pub argext: Vec<String>,
    pub reference: Option<Reference>,
}

#[derive(Default)]
struct Best {
    examined: u64,
    members: u64,
    value: Option<IndexValue>,
    argext: BTreeSet<String>,
}

impl Best {
    /// `Less` when `a` is a better value than `b`.
    fn rank(objective: Objective, a: &IndexValue, b: &IndexValue) -> Ordering {
        match objective {
            Objective::MinWiener => a.as_rational().cmp(&b.as_rational()),
            Objective::MaxHarary => b.as_rational().cmp(&a.as_rational()),
        }
    }

    fn offer(&mut self, objective: Objective, v: IndexValue, code: impl FnOnce() -> String) {
        let ord = self.value.as_ref().map_or(Ordering::Less, |cur| Best::rank(objective, &v, cur));
        match ord {
            Ordering::Less => {
                self.value = Some(v);
                self.argext.clear();
                self.argext.insert(code());
            }
            Ordering::Equal => {
                self.argext.insert(code());
            }
            Ordering::Greater => {}
        }
    }

    fn merge(&mut self, objective: Objective, other: Best) {
        self.examined += other.examined;
        self.members += other.members;
        if let Some(v) = other.value {
            let ord = self.value.as_ref().map_or(Ordering::Less, |cur| Best::rank(objective, &v, cur));
            match ord {
                Ordering::Less => {
                    self.value = Some(v);
                    self.argext = other.argext;
                }
                Ordering::Equal => self.argext.extend(other.argext),
                Ordering::Greater => {}
            }
        }
    }
}

fn value_of(objective: Objective, g: &Graph) -> Result<IndexValue> {
    let p = DistanceProfile::of(g);
    Ok(match objective {
        Objective::MinWiener => IndexValue::Integer(p.wiener()?),
        Objective::MaxHarary => IndexValue::Rational(p.harary()?),
    })
}

/// Exact `min W` or `max H` over connected members of the class with
/// minimum degree at least `k`, with every extremal class listed.
pub fn extremal_search(problem: Problem, n: usize, k: usize, opts: &RunOptions) -> Result<ExtremalResult> {
    let Problem { objective, class } = problem;
    let solver = Solver::with_budget(opts.node_budget);
    let consider = |g: &Graph, mode: Mode, best: &mut Best| -> Result<()> {
        best.examined += 1;
        if !g.is_connected() || g.min_degree() < k || solver.decide(g, mode)? {
            return Ok(());
        }
        best.members += 1;
        best.offer(objective, value_of(objective, g)?, || canonical_form(g).to_graph6());
        Ok(())
    };
    let parts: Vec<Best> = match class {
        Class::NonHamiltonian | Class::NonTraceable => {
            let mode = if class == Class::NonHamiltonian { Mode::Cycle } else { Mode::Path };
            let pieces = enumerate_graphs(n, EnumFilter::connected().min_degree(k))?.splits(opts.split_depth);
            with_pool(opts.jobs, || {
                pieces
                    .into_par_iter()
                    .map(|piece| {
                        let mut b = Best::default();
                        for g in piece {
                            consider(&g, mode, &mut b)?;
                        }
                        Ok(b)
                    })
                    .collect::<Result<Vec<Best>>>()
            })??
        }
        Class::BipartiteNonHamiltonian => {
            let pieces = enumerate_bipartite_pruned(n, n * n, k, None)?.splits(opts.split_depth);
            with_pool(opts.jobs, || {
                pieces
                    .into_par_iter()
                    .map(|piece| {
                        let mut b = Best::default();
                        for (g, _) in piece {
                            consider(&g, Mode::Cycle, &mut b)?;
                        }
                        Ok(b)
                    })
                    .collect::<Result<Vec<Best>>>()
            })??
        }
    };
    let mut best = Best::default();
    for p in parts {
        best.merge(objective, p);
    }
    let reference = match &best.value {
        Some(found) => reference(problem, n, k, found)?,
        None => None,
    };
    Ok(ExtremalResult {
        schema_version: super::REPORT_SCHEMA_VERSION,
        problem,
        n,
        k,
        graphs_examined: best.examined,
        class_size: best.members,
        value: best.value,
        argext: best.argext.into_iter().collect(),
        reference,
    })
}

fn reference(problem: Problem, n: usize, k: usize, found: &IndexValue) -> Result<Option<Reference>> {
    let ok = |c: Claim, n, k| c.check_range(n, k).is_ok();
    let (g, family, in_range) = match problem.class {
        Class::NonHamiltonian => {
            let spec = FamilySpec::new(FamilyTag::N, n, k);
            if spec.validate().is_err() {
                return Ok(None);
            }
            let r = ok(Claim::IndexHamiltonianMinDegree, n, k);
            (build(&spec)?, spec.display_name(), r)
        }
        Class::NonTraceable => {
            let spec = FamilySpec::new(FamilyTag::Nbar, n, k);
            if k == 0 || spec.validate().is_err() {
                return Ok(None);
            }
            let r = ok(Claim::IndexTraceableMinDegree, n, k);
            (build(&spec)?, spec.display_name(), r)
        }
        Class::BipartiteNonHamiltonian => {
            let spec = FamilySpec::new(FamilyTag::B, n, k);
            if spec.validate().is_err() {
                return Ok(None);
            }
            (build_bipartite(n, k)?.0, spec.display_name(), ok(Claim::BipartiteIndexHamiltonian, n, k))
        }
    };
    let value = value_of(problem.objective, &g)?;
    let ord = found.as_rational().cmp(&value.as_rational());
    Ok(Some(Reference {
        family,
        reference_attains: ord == Ordering::Equal,
        value,
        in_stated_range: in_range,
        found_vs_reference: match ord {
            Ordering::Less => "less",
            Ordering::Equal => "equal",
            Ordering::Greater => "greater",
        }
        .into(),
    }))
}
