//! Exact Hamiltonicity and traceability with certificates.
//!
//! The search extends a path from a lowest-degree start vertex, trying
//! neighbours with the fewest remaining options first, and prunes when the
//! unvisited vertices are no longer reachable from the path end, when some
//! unvisited vertex has too few usable neighbours left, or (at the root)
//! when a bipartite graph has unbalanced sides. Traceability is decided as
//! Hamiltonicity of the graph with one extra universal vertex.
//!
//! Negative answers carry a cut witness `S` when one is found: more than
//! `|S|` components in `G − S` (cycle; `S = ∅` needs two components) or
//! more than `|S| + 1` (path).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, full_set, members, Graph, VertexSet, MAX_ORDER};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;
pub const DEFAULT_CUT_LIMIT: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Cycle,
    Path,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HamCertificate {
    Cycle { sequence: Vec<usize> },
    Path { sequence: Vec<usize> },
    CutWitness { cut_set: Vec<usize>, component_count: usize },
    Exhausted,
}

impl HamCertificate {
    fn cut(g: &Graph, set: VertexSet) -> HamCertificate {
        HamCertificate::CutWitness {
            cut_set: members(set).collect(),
            component_count: g.component_count(g.vertex_set() & !set),
        }
    }

    /// Re-checks the certificate against `g`. `Exhausted` carries nothing
    /// to check and is accepted.
    pub fn validate(&self, g: &Graph, mode: Mode) -> bool {
        match self {
            HamCertificate::Cycle { sequence } => {
                mode == Mode::Cycle
                    && g.order() >= 3
                    && is_vertex_permutation(g, sequence)
                    && sequence.windows(2).all(|w| g.has_edge(w[0], w[1]))
                    && g.has_edge(sequence[0], sequence[sequence.len() - 1])
            }
            HamCertificate::Path { sequence } => {
                mode == Mode::Path
                    && g.order() >= 1
                    && is_vertex_permutation(g, sequence)
                    && sequence.windows(2).all(|w| g.has_edge(w[0], w[1]))
            }
            HamCertificate::CutWitness { cut_set, component_count } => {
                if cut_set.iter().any(|&v| v >= g.order()) {
                    return false;
                }
                let set = cut_set.iter().fold(0, |acc, &v| acc | bit(v));
                let comps = g.component_count(g.vertex_set() & !set);
                comps == *component_count && violates_bound(comps, set.count_ones() as usize, mode)
            }
            HamCertificate::Exhausted => true,
        }
    }
}

fn is_vertex_permutation(g: &Graph, seq: &[usize]) -> bool {
    seq.len() == g.order()
        && seq.iter().all(|&v| v < g.order())
        && seq.iter().fold(0u128, |acc, &v| acc | bit(v)) == g.vertex_set()
}

fn violates_bound(components: usize, cut_size: usize, mode: Mode) -> bool {
    match mode {
        Mode::Cycle => components > cut_size.max(1),
        Mode::Path => components > cut_size + 1,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamOutcome {
    pub answer: bool,
    pub cert: HamCertificate,
}

#[derive(Clone, Copy, Debug)]
pub struct Solver {
    pub node_budget: u64,
    pub cut_limit: usize,
}

impl Default for Solver {
    fn default() -> Self {
        Solver { node_budget: DEFAULT_NODE_BUDGET, cut_limit: DEFAULT_CUT_LIMIT }
    }
}

impl Solver {
    pub fn with_budget(node_budget: u64) -> Solver {
        Solver { node_budget, ..Solver::default() }
    }

    pub fn is_hamiltonian(&self, g: &Graph) -> Result<HamOutcome> {
        self.decide_with_certificate(g, Mode::Cycle)
    }

    pub fn is_traceable(&self, g: &Graph) -> Result<HamOutcome> {
        self.decide_with_certificate(g, Mode::Path)
    }

    pub fn decide_with_certificate(&self, g: &Graph, mode: Mode) -> Result<HamOutcome> {
        let outcome = match self.find(g, mode)? {
            Some(sequence) => HamOutcome {
                answer: true,
                cert: match mode {
                    Mode::Cycle => HamCertificate::Cycle { sequence },
                    Mode::Path => HamCertificate::Path { sequence },
                },
            },
            None => HamOutcome {
                answer: false,
                cert: find_cut_witness(g, mode, self.cut_limit)
                    .map_or(HamCertificate::Exhausted, |set| HamCertificate::cut(g, set)),
            },
        };
        debug_assert!(outcome.cert.validate(g, mode), "unsound certificate {:?}", outcome.cert);
        Ok(outcome)
    }

    /// Decides without looking for a negative certificate.
    pub fn decide(&self, g: &Graph, mode: Mode) -> Result<bool> {
        Ok(self.find(g, mode)?.is_some())
    }

    /// A Hamilton cycle (or path) as a vertex sequence, or `None` once the
    /// search space is exhausted.
    pub fn find(&self, g: &Graph, mode: Mode) -> Result<Option<Vec<usize>>> {
        let n = g.order();
        match mode {
            Mode::Cycle => {
                if n < 3 || !g.is_connected() || g.min_degree() < 2 || unbalanced(g, 0) {
                    return Ok(None);
                }
                self.cycle_search(g.rows())
            }
            Mode::Path => {
                if n == 0 || !g.is_connected() {
                    return Ok(None);
                }
                if n == 1 {
                    return Ok(Some(vec![0]));
                }
                if g.degrees().iter().filter(|&&d| d == 1).count() > 2 || unbalanced(g, 1) {
                    return Ok(None);
                }
                if n < MAX_ORDER {
                    let mut rows = g.rows().to_vec();
                    for row in rows.iter_mut() {
                        *row |= bit(n);
                    }
                    rows.push(full_set(n));
                    Ok(self.cycle_search(&rows)?.map(|cycle| {
                        let at = cycle.iter().position(|&v| v == n).expect("hub on cycle");
                        cycle[at + 1..].iter().chain(&cycle[..at]).copied().collect()
                    }))
                } else {
                    self.path_search_all_starts(g)
                }
            }
        }
    }

    fn cycle_search(&self, rows: &[VertexSet]) -> Result<Option<Vec<usize>>> {
        let n = rows.len();
        let start = (0..n).min_by_key(|&v| rows[v].count_ones()).expect("n >= 3");
        let mut s = Search {
            rows,
            start,
            cycle: true,
            path: vec![start],
            earlier_twins: earlier_twins(rows, start),
            nodes: 0,
            budget: self.node_budget,
        };
        Ok(s.extend(start, full_set(n) & !bit(start))?.then_some(s.path))
    }

    fn path_search_all_starts(&self, g: &Graph) -> Result<Option<Vec<usize>>> {
        let mut starts: Vec<usize> = (0..g.order()).collect();
        starts.sort_by_key(|&v| g.degree(v));
        if g.degree(starts[0]) == 1 {
            starts.truncate(1);
        }
        let mut spent = 0;
        for start in starts {
            let mut s = Search {
                rows: g.rows(),
                start,
                cycle: false,
                path: vec![start],
                earlier_twins: earlier_twins(g.rows(), start),
                nodes: 0,
                budget: self.node_budget - spent,
            };
            let found = s.extend(start, g.vertex_set() & !bit(start))?;
            spent += s.nodes;
            if found {
                return Ok(Some(s.path));
            }
        }
        Ok(None)
    }
}

/// Bipartite sides differing by more than `slack` rule out the cycle
/// (`slack = 0`) or path (`slack = 1`).
fn unbalanced(g: &Graph, slack: usize) -> bool {
    g.is_connected()
        && g.bipartition().is_some_and(|p| p.left_size().abs_diff(p.right_size()) > slack)
}

/// For each vertex, its twins (same neighbourhood apart from each other)
/// with smaller index, leaving out `start`. Swapping twins is an
/// automorphism fixing `start`, so some Hamilton cycle or path visits every
/// twin class in increasing index order.
fn earlier_twins(rows: &[VertexSet], start: usize) -> Vec<VertexSet> {
    let n = rows.len();
    let mut out = vec![0; n];
    for u in 0..n {
        for v in 0..u {
            if u != start && v != start && rows[u] & !bit(v) == rows[v] & !bit(u) {
                out[u] |= bit(v);
            }
        }
    }
    out
}

struct Search<'a> {
    rows: &'a [VertexSet],
    start: usize,
    cycle: bool,
    path: Vec<usize>,
    earlier_twins: Vec<VertexSet>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn extend(&mut self, end: usize, rest: VertexSet) -> Result<bool> {
        let rows = self.rows;
        if rest == 0 {
            return Ok(!self.cycle || rows[end] & bit(self.start) != 0);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted(self.budget));
        }
        let pool = rest | bit(end) | if self.cycle { bit(self.start) } else { 0 };
        let mut forced_ends = 0;
        for u in members(rest) {
            let usable = (rows[u] & pool).count_ones();
            if self.cycle {
                if usable < 2 {
                    return Ok(false);
                }
            } else if usable == 0 {
                return Ok(false);
            } else if usable == 1 {
                forced_ends += 1;
                if forced_ends > 1 {
                    return Ok(false);
                }
            }
        }
        if self.cycle && rows[self.start] & rest == 0 {
            return Ok(false);
        }
        if reach(rows, end, rest | bit(end)) & rest != rest {
            return Ok(false);
        }
        let mut candidates: Vec<(u32, usize)> =
            members(rows[end] & rest)
                .filter(|&u| self.earlier_twins[u] & rest == 0)
                .map(|u| ((rows[u] & pool).count_ones(), u))
                .collect();
        candidates.sort_unstable();
        for (_, u) in candidates {
            self.path.push(u);
            if self.extend(u, rest & !bit(u))? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }
}

fn reach(rows: &[VertexSet], start: usize, within: VertexSet) -> VertexSet {
    let mut seen = bit(start);
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in members(frontier) {
            next |= rows[v];
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// Searches for a vertex set `S` whose removal leaves too many components
/// for a Hamilton cycle (or path). Structured candidates come first: the
/// empty set, neighbourhoods of low-degree vertices, and the set of
/// dominating vertices; then every `S` with `|S| <= max_size` by size.
/// `None` proves nothing.
pub fn find_cut_witness(g: &Graph, mode: Mode, max_size: usize) -> Option<VertexSet> {
    let n = g.order();
    let all = g.vertex_set();
    let hit = |set: VertexSet| violates_bound(g.component_count(all & !set), set.count_ones() as usize, mode);
    if n == 0 {
        return None;
    }
    if hit(0) {
        return Some(0);
    }
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| g.degree(v));
    for &v in &by_degree {
        let s = g.neighbors(v);
        if s != 0 && hit(s) {
            return Some(s);
        }
    }
    let dominating = (0..n).filter(|&v| g.degree(v) == n - 1).fold(0, |acc, v| acc | bit(v));
    if dominating != 0 && hit(dominating) {
        return Some(dominating);
    }
    for size in 1..=max_size.min(n) {
        let mut s: u128 = full_set(size);
        while s & !all == 0 {
            if hit(s) {
                return Some(s);
            }
            // next subset of the same size (Gosper)
            let c = s & s.wrapping_neg();
            let r = s.wrapping_add(c);
            if r == 0 {
                break;
            }
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    None
}

pub fn is_hamiltonian(g: &Graph) -> Result<HamOutcome> {
    Solver::default().is_hamiltonian(g)
}

pub fn is_traceable(g: &Graph) -> Result<HamOutcome> {
    Solver::default().is_traceable(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build;
    use crate::FamilySpec;

    fn spec(s: &str) -> FamilySpec {
        s.parse().unwrap()
    }

    fn cut_of(outcome: &HamOutcome) -> (Vec<usize>, usize) {
        match &outcome.cert {
            HamCertificate::CutWitness { cut_set, component_count } => (cut_set.clone(), *component_count),
            other => panic!("expected cut witness, got {other:?}"),
        }
    }

    #[test]
    fn cycles() {
        let c5 = Graph::cycle(5).unwrap();
        let out = is_hamiltonian(&c5).unwrap();
        assert!(out.answer);
        assert!(matches!(out.cert, HamCertificate::Cycle { .. }));
        assert!(out.cert.validate(&c5, Mode::Cycle));
        assert!(!is_hamiltonian(&Graph::complete(2).unwrap()).unwrap().answer);
        assert!(is_hamiltonian(&Graph::complete(3).unwrap()).unwrap().answer);
    }

    #[test]
    fn n29_has_core_witness() {
        let g = build(&spec("N:n=9,k=2")).unwrap();
        let out = is_hamiltonian(&g).unwrap();
        assert!(!out.answer);
        // K_2 core is vertices 0 and 1
        assert_eq!(cut_of(&out), (vec![0, 1], 3));
    }

    #[test]
    fn petersen() {
        let p = Graph::petersen();
        let ham = is_hamiltonian(&p).unwrap();
        assert!(!ham.answer);
        let tr = is_traceable(&p).unwrap();
        assert!(tr.answer);
        assert!(tr.cert.validate(&p, Mode::Path));
    }

    #[test]
    fn nbar_is_not_traceable() {
        let g = build(&spec("Nbar:n=10,k=1")).unwrap();
        let out = is_traceable(&g).unwrap();
        assert!(!out.answer);
        assert_eq!(cut_of(&out), (vec![0], 3));
        let p4 = Graph::path(4).unwrap();
        let out = is_traceable(&p4).unwrap();
        assert!(out.answer);
        assert!(out.cert.validate(&p4, Mode::Path));
    }

    #[test]
    fn trivial_orders() {
        assert!(is_traceable(&Graph::complete(1).unwrap()).unwrap().answer);
        assert!(!is_traceable(&Graph::empty(0).unwrap()).unwrap().answer);
        assert!(!is_traceable(&Graph::empty(2).unwrap()).unwrap().answer);
        assert!(is_traceable(&Graph::complete(2).unwrap()).unwrap().answer);
        assert_eq!(is_hamiltonian(&Graph::complete(1).unwrap()).unwrap().cert, HamCertificate::Exhausted);
    }

    #[test]
    fn cut_witness_search() {
        let (b14, _) = crate::families::build_bipartite(4, 1).unwrap();
        let s = find_cut_witness(&b14, Mode::Cycle, 6).unwrap();
        assert!(b14.component_count(b14.vertex_set() & !s) > s.count_ones() as usize);
        assert_eq!(find_cut_witness(&Graph::complete(7).unwrap(), Mode::Cycle, 6), None);
        let g = build(&spec("N:n=13,k=3")).unwrap();
        let s = find_cut_witness(&g, Mode::Cycle, 6).unwrap();
        assert_eq!(s, 0b111);
        assert_eq!(g.component_count(g.vertex_set() & !s), 4);
        let two = Graph::complete(3).unwrap().disjoint_union(&Graph::complete(3).unwrap()).unwrap();
        assert_eq!(find_cut_witness(&two, Mode::Path, 6), Some(0));
    }

    #[test]
    fn families_are_not_hamiltonian() {
        for n in 3..=16 {
            for k in 0..=n / 2 {
                let s = FamilySpec::new(crate::FamilyTag::N, n, k);
                if s.validate().is_ok() {
                    let g = build(&s).unwrap();
                    let out = is_hamiltonian(&g).unwrap();
                    assert!(!out.answer, "{s}");
                    assert!(!matches!(out.cert, HamCertificate::Exhausted), "{s}");
                    assert!(is_traceable(&g).unwrap().answer, "{s}");
                }
                for tag in [crate::FamilyTag::Nbar, crate::FamilyTag::Lbar] {
                    let s = FamilySpec::new(tag, n, k);
                    if s.validate().is_ok() {
                        let g = build(&s).unwrap();
                        assert!(!is_traceable(&g).unwrap().answer, "{s}");
                    }
                }
            }
        }
        for half in 2..=8 {
            for k in 1..=half / 2 {
                let (g, _) = crate::families::build_bipartite(half, k).unwrap();
                assert!(!is_hamiltonian(&g).unwrap().answer, "B^{k}_{half}");
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let solver = Solver::with_budget(3);
        assert_eq!(solver.is_hamiltonian(&Graph::petersen()), Err(Error::BudgetExhausted(3)));
    }

    #[test]
    fn certificates_reject_forgeries() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(!HamCertificate::Cycle { sequence: vec![0, 2, 1, 3, 4] }.validate(&c5, Mode::Cycle));
        assert!(!HamCertificate::Path { sequence: vec![0, 1, 2, 3] }.validate(&c5, Mode::Path));
        assert!(!HamCertificate::CutWitness { cut_set: vec![0], component_count: 1 }.validate(&c5, Mode::Cycle));
        let json = serde_json::to_string(&HamCertificate::Cycle { sequence: vec![0, 1, 2] }).unwrap();
        assert_eq!(json, r#"{"kind":"cycle","sequence":[0,1,2]}"#);
    }
}
