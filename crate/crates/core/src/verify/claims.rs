//! Scoping and classification for each claim.

use std::sync::Arc;

use num_traits::ToPrimitive;

use super::run::{run_pieces, RunOptions, StrategyChoice, Tally, Verdict};
use super::{
    edge_threshold, estimate_classes, Branch, Claim, ClaimKind, Property, Scope, VerificationReport,
    REPORT_SCHEMA_VERSION,
};
use crate::error::{Error, Result};
use crate::families::{build, build_bipartite, g1_members, g2_members, original_traceability_exceptions, FamilySpec, FamilyTag};
use crate::graph::{choose2, Graph};
use crate::hamilton::Solver;
use crate::iso::{
    canonical_form, enumerate_bipartite_pruned, enumerate_graphs, is_spanning_subgraph_of, CanonicalForm, DenseScope,
    EnumFilter, Keep, FULL_ENUMERATION_LIMIT,
};
use crate::metrics::{check_bipartite_distance_bounds, check_distance_bounds, DistanceProfile};
use crate::rational::Rational;

const SPANNING_NOTE: &str = "\"G ⊆ F\" is read as: G is isomorphic to a spanning subgraph of F.";
const PART_SWAP_NOTE: &str =
    "Bipartite graphs have order 2n with parts of size n; swapping the parts counts as an isomorphism.";

/// Runs every sub-check of `claim` at `(n, k)`: one report for distance
/// and edge claims, one per hypothesis branch for index claims.
pub fn verify(claim: Claim, n: usize, k: usize, opts: &RunOptions) -> Result<Vec<VerificationReport>> {
    match claim.kind() {
        ClaimKind::DistanceBound => Ok(vec![if claim.is_bipartite() {
            verify_bipartite_distance_bounds(n, opts)?
        } else {
            verify_distance_bounds(n, opts)?
        }]),
        ClaimKind::EdgeCondition => Ok(vec![verify_edge_lemma(claim, n, k, opts)?]),
        ClaimKind::IndexCondition => branches(claim)
            .iter()
            .map(|&b| verify_index_theorem(claim, n, k, b, opts))
            .collect(),
    }
}

fn branches(claim: Claim) -> &'static [Branch] {
    match claim {
        Claim::HararyTraceable => &[Branch::Harary],
        Claim::WienerTraceable => &[Branch::Wiener],
        _ => &[Branch::Wiener, Branch::Harary],
    }
}

fn report(claim: Claim, branch: Option<Branch>, scope: Scope, exploratory: bool, tally: Tally) -> VerificationReport {
    VerificationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        theorem: claim,
        branch,
        exploratory,
        scope: Scope { graphs_examined: tally.examined, ..scope },
        hypothesis_hits: tally.hits,
        conclusion_holds: tally.holds,
        exceptional_matches: tally.exceptional.into_iter().collect(),
        violations: tally.violations.into_iter().collect(),
        interpretation_notes: Vec::new(),
        findings: Vec::new(),
    }
}

fn g6(g: &Graph) -> String {
    canonical_form(g).to_graph6()
}

/// `W + e >= n(n-1)` and `e >= 2H - C(n,2)` over every connected class of
/// order `n`, each with equality exactly at diameter <= 2.
pub fn verify_distance_bounds(n: usize, opts: &RunOptions) -> Result<VerificationReport> {
    let stream = enumerate_graphs(n, EnumFilter::connected())?;
    let pieces = stream.splits(opts.split_depth);
    let key = format!("distance-bounds-n{n}-d{}", opts.split_depth);
    let tally = run_pieces(pieces, &key, opts, |g| {
        let c = check_distance_bounds(&g)?;
        let tight = c.diameter <= 2;
        let ok = (c.slack_w == 0) == tight && !c.slack_h.is_negative() && c.slack_h.is_zero() == tight;
        Ok(if ok { Verdict::Holds } else { Verdict::Violation(g6(&g)) })
    })?;
    let scope = Scope { n, k: 0, strategy: "full".into(), budget: None, graphs_examined: 0 };
    let mut r = report(Claim::DistanceBounds, None, scope, false, tally);
    r.interpretation_notes.push("Every connected class is in scope; the conclusion is both inequalities with equality exactly at diameter <= 2.".into());
    Ok(r)
}

/// The bipartite distance bounds over every connected balanced bipartite
/// class with parts of size `half`, with equality exactly when same-part
/// pairs are at distance 2 and cross pairs within distance 3.
pub fn verify_bipartite_distance_bounds(half: usize, opts: &RunOptions) -> Result<VerificationReport> {
    let stream = enumerate_bipartite_pruned(half, half * half, 0, None)?;
    let pieces = stream.splits(opts.split_depth);
    let key = format!("bipartite-distance-bounds-n{half}-d{}", opts.split_depth);
    let tally = run_pieces(pieces, &key, opts, |(g, bp)| {
        if !g.is_connected() {
            return Ok(Verdict::OutOfScope);
        }
        let c = check_bipartite_distance_bounds(&g, &bp)?;
        let cond = c.equality_condition;
        let ok = c.slack_w >= 0 && !c.slack_h.is_negative() && (c.slack_w == 0) == cond && c.slack_h.is_zero() == cond;
        Ok(if ok { Verdict::Holds } else { Verdict::Violation(g6(&g)) })
    })?;
    let scope = Scope { n: half, k: 0, strategy: "bipartite".into(), budget: Some(half * half), graphs_examined: 0 };
    let mut r = report(Claim::BipartiteDistanceBounds, None, scope, false, tally);
    r.interpretation_notes.push(PART_SWAP_NOTE.into());
    Ok(r)
}

#[derive(Clone)]
enum Bound {
    MinEdges(usize),
    Wiener(u64),
    Harary(Rational),
}

#[derive(Clone)]
enum Exception {
    None,
    /// Isomorphic to a member of a list.
    OneOf(Vec<CanonicalForm>),
    /// Isomorphic to the single extremal graph.
    Target(Graph),
    /// A spanning subgraph of some listed graph.
    SpanningOf(Vec<Graph>),
}

/// The hypothesis, conclusion and exception of one (sub-)claim.
#[derive(Clone)]
struct Plan {
    claim: Claim,
    branch: Option<Branch>,
    n: usize,
    k: usize,
    mode: crate::hamilton::Mode,
    property: Property,
    min_degree: usize,
    connected: bool,
    bound: Bound,
    exception: Exception,
    /// Missing-edge budget that provably covers the hypothesis.
    budget: usize,
    notes: Vec<String>,
}

impl Plan {
    /// `n` is the order of the graph (twice the half-order for bipartite
    /// claims).
    fn hypothesis(&self, g: &Graph) -> bool {
        if g.order() != self.n || g.min_degree() < self.min_degree {
            return false;
        }
        if self.connected && !g.is_connected() {
            return false;
        }
        match &self.bound {
            Bound::MinEdges(m) => g.edge_count() >= *m,
            Bound::Wiener(t) => DistanceProfile::of(g).wiener().is_ok_and(|w| w <= *t),
            Bound::Harary(t) => DistanceProfile::of(g).harary().is_ok_and(|h| &h >= t),
        }
    }

    fn keep(&self) -> Option<Keep> {
        match &self.bound {
            Bound::MinEdges(_) => None,
            Bound::Wiener(t) => {
                let t = *t;
                Some(Arc::new(move |g: &Graph| DistanceProfile::of(g).wiener().is_ok_and(|w| w <= t)))
            }
            Bound::Harary(t) => {
                let t = t.clone();
                Some(Arc::new(move |g: &Graph| DistanceProfile::of(g).harary().is_ok_and(|h| h >= t)))
            }
        }
    }

    fn is_exception(&self, g: &Graph) -> Result<bool> {
        Ok(match &self.exception {
            Exception::None => false,
            Exception::OneOf(forms) => {
                let f = canonical_form(g);
                forms.contains(&f)
            }
            Exception::Target(t) => crate::iso::is_isomorphic(g, t),
            Exception::SpanningOf(hosts) => {
                for h in hosts {
                    if is_spanning_subgraph_of(g, h)? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }

    fn classify(&self, g: &Graph, solver: &Solver) -> Result<Verdict> {
        if !self.hypothesis(g) {
            return Ok(Verdict::OutOfScope);
        }
        if solver.decide(g, self.mode)? {
            return Ok(Verdict::Holds);
        }
        let code = g6(g);
        Ok(if self.is_exception(g)? { Verdict::Exceptional(code) } else { Verdict::Violation(code) })
    }

    /// Closure keeps the hypothesis and the failure of the property, and a
    /// closed graph containing a violation is itself a violation unless the
    /// exception is a list of graphs with unrelated edge counts.
    fn closure_sound(&self) -> Result<()> {
        match &self.exception {
            Exception::OneOf(_) => Err(Error::InfeasibleScope(format!(
                "{}: closure reduction is unsound for a list of exceptional graphs",
                self.claim
            ))),
            Exception::Target(t) => {
                // A proper spanning subgraph of the target would close up to
                // it; it must fall outside the hypothesis.
                for (u, v) in t.edges().collect::<Vec<_>>() {
                    let mut h = t.clone();
                    h.remove_edge(u, v)?;
                    if self.hypothesis(&h) {
                        return Err(Error::InfeasibleScope(format!(
                            "{}: deleting edge {u}{v} of the exceptional graph keeps the hypothesis",
                            self.claim
                        )));
                    }
                }
                Ok(())
            }
            Exception::None | Exception::SpanningOf(_) => Ok(()),
        }
    }
}

fn family(tag: FamilyTag, n: usize, k: usize) -> Result<Graph> {
    build(&FamilySpec::new(tag, n, k))
}

fn floor_nonneg(r: &Rational) -> usize {
    if r.is_negative() {
        return 0;
    }
    (r.numer() / r.denom()).to_usize().unwrap_or(usize::MAX)
}

fn in_range(claim: Claim, n: usize, k: usize, opts: &RunOptions) -> Result<bool> {
    match claim.check_range(n, k) {
        Ok(()) => Ok(true),
        Err(e) if !opts.exploratory => Err(e),
        Err(_) => Ok(false),
    }
}

fn edge_plan(claim: Claim, n: usize, k: usize) -> Result<Plan> {
    let t = edge_threshold(claim, n, k, true)?;
    let property = claim.property().expect("edge claims have a property");
    let bip = claim.is_bipartite();
    let order = if bip { 2 * n } else { n };
    let full = if bip { n * n } else { choose2(n) };
    let mut notes = Vec::new();
    let exception = match claim {
        Claim::DenseHamiltonian => Exception::OneOf(g1_members(n).iter().map(canonical_form).collect()),
        Claim::DenseTraceable => Exception::OneOf(g2_members(n).iter().map(canonical_form).collect()),
        Claim::EdgeHamiltonianMinDegree => {
            notes.push(SPANNING_NOTE.into());
            Exception::SpanningOf(vec![family(FamilyTag::L, n, k)?, family(FamilyTag::N, n, k)?])
        }
        Claim::EdgeTraceableMinDegree => {
            notes.push(SPANNING_NOTE.into());
            Exception::SpanningOf(vec![family(FamilyTag::Lbar, n, k)?, family(FamilyTag::Nbar, n, k)?])
        }
        Claim::BipartiteEdgeHamiltonian => {
            notes.push(SPANNING_NOTE.into());
            notes.push(PART_SWAP_NOTE.into());
            Exception::SpanningOf(vec![build_bipartite(n, k)?.0])
        }
        _ => Exception::None,
    };
    let relation = if t.strict { ">" } else { ">=" };
    notes.push(format!(
        "Hypothesis: min degree >= {}, e {relation} {}; scope is every graph missing at most {} of the {full} possible edges.",
        claim.min_degree(k),
        t.bound,
        full.saturating_sub(t.bound.max(0) as usize)
    ));
    Ok(Plan {
        claim,
        branch: None,
        n: order,
        k,
        mode: property.mode(),
        property,
        min_degree: claim.min_degree(k),
        connected: false,
        bound: Bound::MinEdges(t.min_edges()),
        exception,
        budget: full.saturating_sub(t.bound.max(0) as usize),
        notes,
    })
}

fn index_plan(claim: Claim, n: usize, k: usize, branch: Branch) -> Result<Plan> {
    if !branches(claim).contains(&branch) {
        return Err(Error::Invalid(format!("{claim} has no {branch:?} branch")));
    }
    let property = claim.property().expect("index claims have a property");
    let mut notes = Vec::new();
    let (target, exception) = match claim {
        Claim::IndexHamiltonian => {
            let t = family(FamilyTag::N, n, 2)?;
            (Some(t), Exception::OneOf(g1_members(n).iter().map(canonical_form).collect()))
        }
        Claim::IndexTraceable => {
            let t = family(FamilyTag::Nbar, n, 1)?;
            (Some(t), Exception::OneOf(g2_members(n).iter().map(canonical_form).collect()))
        }
        Claim::HararyTraceable | Claim::WienerTraceable => {
            (None, Exception::OneOf(original_traceability_exceptions(n).iter().map(canonical_form).collect()))
        }
        Claim::IndexHamiltonianMinDegree => {
            let t = family(FamilyTag::N, n, k)?;
            (Some(t.clone()), Exception::Target(t))
        }
        Claim::IndexTraceableMinDegree => {
            let t = family(FamilyTag::Nbar, n, k)?;
            notes.push(format!(
                "The exceptional graph is Nbar^{k}_{n} = K_{k} v (K_{} + {}K_1), the non-traceable form; N^{k}_{n} is not accepted in its place.",
                n - 2 * k - 1,
                k + 1
            ));
            (Some(t.clone()), Exception::Target(t))
        }
        Claim::BipartiteIndexHamiltonian => {
            let t = build_bipartite(n, k)?.0;
            notes.push(PART_SWAP_NOTE.into());
            (Some(t.clone()), Exception::Target(t))
        }
        other => return Err(Error::Invalid(format!("{other} is not an index condition"))),
    };
    let bound = match (branch, &target) {
        (Branch::Wiener, Some(t)) => Bound::Wiener(crate::metrics::wiener_index(t)?),
        (Branch::Harary, Some(t)) => Bound::Harary(crate::metrics::harary_index(t)?),
        (Branch::Wiener, None) => Bound::Wiener(((n + 5) * n.saturating_sub(2) / 2) as u64),
        (Branch::Harary, None) => Bound::Harary(Rational::new((n * n) as i128 - 3 * n as i128 + 5, 2)),
    };
    let budget = if claim.is_bipartite() {
        let h = n;
        let base = h * h + 4 * choose2(h);
        match &bound {
            // W >= h² + 2m + 4C(h,2)
            Bound::Wiener(t) => (*t as usize).saturating_sub(base) / 2,
            // H <= h² - 2m/3 + C(h,2)
            Bound::Harary(t) => {
                floor_nonneg(&((Rational::from(h * h + choose2(h)) - t.clone()) * Rational::new(3, 2)))
            }
            Bound::MinEdges(_) => unreachable!(),
        }
    } else {
        let pairs = choose2(n);
        match &bound {
            // W >= n(n-1) - e
            Bound::Wiener(t) => (*t as usize).saturating_sub(pairs),
            // H <= (e + C(n,2))/2
            Bound::Harary(t) => floor_nonneg(&((Rational::from(pairs) - t.clone()) * Rational::from(2usize))),
            Bound::MinEdges(_) => unreachable!(),
        }
    }
    .min(if claim.is_bipartite() { n * n } else { choose2(n) });
    notes.push(match &bound {
        Bound::Wiener(t) => format!("Hypothesis branch: connected, W <= {t}; this forces at most {budget} missing edges."),
        Bound::Harary(t) => format!("Hypothesis branch: connected, H >= {t}; this forces at most {budget} missing edges."),
        Bound::MinEdges(_) => unreachable!(),
    });
    let order = if claim.is_bipartite() { 2 * n } else { n };
    Ok(Plan {
        claim,
        branch: Some(branch),
        n: order,
        k,
        mode: property.mode(),
        property,
        min_degree: claim.min_degree(k),
        connected: true,
        bound,
        exception,
        budget,
        notes,
    })
}

/// Edge-count claims: every class meeting the minimum degree and edge
/// hypotheses is checked against the conclusion and the exception.
pub fn verify_edge_lemma(claim: Claim, n: usize, k: usize, opts: &RunOptions) -> Result<VerificationReport> {
    if claim.kind() != ClaimKind::EdgeCondition {
        return Err(Error::Invalid(format!("{claim} is not an edge condition")));
    }
    let k = claim.fixed_k().unwrap_or(k);
    let exploratory = !in_range(claim, n, k, opts)?;
    execute(edge_plan(claim, n, k)?, exploratory, opts)
}

/// One branch (`W` or `H`) of an index claim.
pub fn verify_index_theorem(
    claim: Claim,
    n: usize,
    k: usize,
    branch: Branch,
    opts: &RunOptions,
) -> Result<VerificationReport> {
    if claim.kind() != ClaimKind::IndexCondition {
        return Err(Error::Invalid(format!("{claim} is not an index condition")));
    }
    let k = claim.fixed_k().unwrap_or(k);
    let exploratory = !in_range(claim, n, k, opts)?;
    let mut r = execute(index_plan(claim, n, k, branch)?, exploratory, opts)?;
    if matches!(claim, Claim::HararyTraceable | Claim::WienerTraceable) {
        let nine: Vec<CanonicalForm> = g2_members(n).iter().map(canonical_form).collect();
        let mut covered = 0;
        for v in &r.violations {
            let g = crate::format::from_graph6(v)?;
            if nine.contains(&canonical_form(&g)) {
                covered += 1;
                r.findings.push(format!("{v} is outside the three-graph list but in the nine-graph traceability list"));
            }
        }
        r.findings.push(format!(
            "three-graph exceptional list {} at n={n}{}",
            if r.violations.is_empty() { "suffices" } else { "does not suffice" },
            if r.violations.is_empty() {
                String::new()
            } else {
                format!("; {covered} of {} violations are covered by the nine-graph list", r.violations.len())
            }
        ));
    }
    Ok(r)
}

enum Strategy {
    Full,
    Complement,
    Closure,
    Bipartite,
}

fn choose(plan: &Plan, opts: &RunOptions) -> Result<Strategy> {
    if plan.claim.is_bipartite() {
        return Ok(Strategy::Bipartite);
    }
    let n = plan.n;
    Ok(match opts.strategy {
        StrategyChoice::Full => Strategy::Full,
        StrategyChoice::Complement => Strategy::Complement,
        StrategyChoice::ClosureReduced => Strategy::Closure,
        StrategyChoice::Auto => {
            let est = estimate_classes(n, plan.budget);
            if est <= opts.feasibility_limit {
                Strategy::Complement
            } else if plan.closure_sound().is_ok() {
                Strategy::Closure
            } else {
                return Err(Error::InfeasibleScope(format!(
                    "{} at n={n}: about {est:.2e} classes with {} missing edges and no sound reduction",
                    plan.claim, plan.budget
                )));
            }
        }
    })
}

fn execute(plan: Plan, exploratory: bool, opts: &RunOptions) -> Result<VerificationReport> {
    let strategy = choose(&plan, opts)?;
    let solver = Solver::with_budget(opts.node_budget);
    let n = plan.n;
    let mut notes = plan.notes.clone();
    if exploratory {
        notes.push("Parameters are outside the stated range; violations are findings about the statement's range, not failures.".into());
    }
    let filter = EnumFilter {
        min_degree: plan.min_degree,
        min_edges: 0,
        max_edges: None,
        require_connected: plan.connected,
        bipartite_balanced: None,
    };
    let branch = plan.branch.map_or(String::new(), |b| format!("-{b:?}").to_lowercase());
    let key = |s: &str| format!("{}{branch}-n{n}-k{}-{s}-b{}-d{}", plan.claim, plan.k, plan.budget, opts.split_depth);
    let (name, tally) = match strategy {
        Strategy::Full => {
            if n > FULL_ENUMERATION_LIMIT {
                return Err(Error::OrderTooLarge { n, limit: FULL_ENUMERATION_LIMIT, what: "full enumeration" });
            }
            let f = EnumFilter { min_edges: choose2(n).saturating_sub(plan.budget), ..filter };
            let pieces = enumerate_graphs(n, f)?.splits(opts.split_depth);
            ("full", run_pieces(pieces, &key("full"), opts, |g| plan.classify(&g, &solver))?)
        }
        Strategy::Complement | Strategy::Closure => {
            let closed_under = match strategy {
                Strategy::Closure => {
                    plan.closure_sound()?;
                    let t = plan.property.closure_threshold(n);
                    notes.push(format!(
                        "Only classes closed under adding non-edges uv with d(u)+d(v) >= {t} are classified: the closure keeps the hypothesis and non-{}, and every violation closes up to a closed violation.",
                        match plan.property {
                            Property::Hamiltonian => "Hamiltonicity",
                            Property::Traceable => "traceability",
                        }
                    ));
                    Some(t)
                }
                _ => None,
            };
            let scope = DenseScope { n, budget: plan.budget, filter, keep: plan.keep(), closed_under };
            let pieces = scope.stream()?.splits(opts.split_depth);
            let name = if closed_under.is_some() { "closure-reduced" } else { "complement" };
            (name, run_pieces(pieces, &key(name), opts, |g| plan.classify(&g, &solver))?)
        }
        Strategy::Bipartite => {
            let half = n / 2;
            let pieces =
                enumerate_bipartite_pruned(half, plan.budget, plan.min_degree, plan.keep())?.splits(opts.split_depth);
            ("bipartite", run_pieces(pieces, &key("bipartite"), opts, |(g, _)| plan.classify(&g, &solver))?)
        }
    };
    let n_report = if plan.claim.is_bipartite() { n / 2 } else { n };
    let scope = Scope { n: n_report, k: plan.k, strategy: name.into(), budget: Some(plan.budget), graphs_examined: 0 };
    let mut r = report(plan.claim, plan.branch, scope, exploratory, tally);
    r.interpretation_notes = notes;
    if let Exception::Target(t) = &plan.exception {
        debug_assert!(r.exceptional_matches.iter().all(|c| c == &g6(t)));
        if r.exceptional_matches.is_empty() {
            r.findings.push("the exceptional graph itself is not in scope".into());
        }
    }
    Ok(r)
}

#[cfg(test)]
pub(super) fn plan_budget(claim: Claim, n: usize, k: usize, branch: Option<Branch>) -> Result<usize> {
    Ok(match branch {
        None => edge_plan(claim, n, k)?.budget,
        Some(b) => index_plan(claim, n, k, b)?.budget,
    })
}
