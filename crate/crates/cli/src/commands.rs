use std::path::{Path, PathBuf};

use serde::Serialize;

use hamindex::format::{parse_graphs, to_graph6};
use hamindex::hamilton::{HamCertificate, HamOutcome, Solver, DEFAULT_NODE_BUDGET};
use hamindex::metrics::DistanceProfile;
use hamindex::verify::{
    audit_exceptional_sets, extremal_search, verify, Claim, Problem, RunOptions, StrategyChoice,
    VerificationReport,
};
use hamindex::{build, Error, FamilySpec, Graph, Rational};

use crate::output::Output;
use crate::Command;

type Run = Result<(Output, u8), String>;

pub fn run(cmd: Command, jobs: usize) -> Run {
    match cmd {
        Command::Index { files } => index(&files),
        Command::Gen { spec } => gen(&spec),
        Command::Check { files, budget } => check(&files, budget),
        Command::Verify { claim, n, k, exploratory, strategy, checkpoint, budget } => {
            let claim: Claim = claim.parse().map_err(show)?;
            let mut opts = options(jobs, budget)?;
            opts.exploratory = exploratory;
            opts.strategy = strategy.parse::<StrategyChoice>().map_err(show)?;
            opts.checkpoint_dir = checkpoint;
            let ks = match (k, claim.fixed_k()) {
                (Some(k), _) => range(&k)?,
                (None, Some(f)) => vec![f],
                (None, None) => vec![1],
            };
            verify_cmd(claim, &range(&n)?, &ks, &opts)
        }
        Command::Search { problem, n, k, budget } => {
            let problem: Problem = problem.parse().map_err(show)?;
            let r = extremal_search(problem, n, k, &options(jobs, budget)?).map_err(show)?;
            let mut out = Output::new(
                &r,
                vec!["problem", "n", "k", "examined", "class_size", "value", "argext", "reference", "reference_value", "in_stated_range", "found_vs_reference"],
            )?;
            let rf = r.reference.as_ref();
            out.rows.push(vec![
                r.problem.to_string(),
                r.n.to_string(),
                r.k.to_string(),
                r.graphs_examined.to_string(),
                r.class_size.to_string(),
                r.value.as_ref().map_or("none".into(), |v| v.to_string()),
                r.argext.join(" "),
                rf.map_or(String::new(), |x| x.family.clone()),
                rf.map_or(String::new(), |x| x.value.to_string()),
                rf.map_or(String::new(), |x| x.in_stated_range.to_string()),
                rf.map_or(String::new(), |x| x.found_vs_reference.clone()),
            ]);
            Ok((out, 0))
        }
        Command::Audit { budget } => audit(&options(jobs, budget)?),
    }
}

fn show(e: Error) -> String {
    e.to_string()
}

fn options(jobs: usize, budget: Option<u64>) -> Result<RunOptions, String> {
    let budget = budget.unwrap_or(DEFAULT_NODE_BUDGET);
    if budget == 0 {
        return Err("budget must be positive".into());
    }
    Ok(RunOptions { jobs, node_budget: budget, ..RunOptions::default() })
}

/// `A`, `A..B` or `A..=B`, inclusive.
fn range(s: &str) -> Result<Vec<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad range {s:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => (num(s)?, num(s)?),
    };
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a..=b).collect())
}

fn read(files: &[PathBuf]) -> Result<Vec<(String, usize, Graph)>, String> {
    if files.is_empty() {
        return Err("no input files".into());
    }
    let mut out = Vec::new();
    for f in files {
        let text = std::fs::read_to_string(f).map_err(|e| format!("{}: {e}", f.display()))?;
        let graphs = parse_graphs(&text).map_err(|e| located(f, e))?;
        out.extend(graphs.into_iter().enumerate().map(|(i, g)| (f.display().to_string(), i, g)));
    }
    Ok(out)
}

fn located(f: &Path, e: Error) -> String {
    match e {
        Error::Parse { line, message } => format!("{}:{line}: {message}", f.display()),
        other => format!("{}: {other}", f.display()),
    }
}

#[derive(Serialize)]
struct Stats {
    n: usize,
    e: usize,
    min_degree: usize,
    diameter: Option<usize>,
    wiener: Option<u64>,
    harary: Option<Rational>,
    note: Option<&'static str>,
}

fn stats(g: &Graph) -> Stats {
    let p = DistanceProfile::of(g);
    let connected = p.is_connected();
    Stats {
        n: g.order(),
        e: g.edge_count(),
        min_degree: if g.order() == 0 { 0 } else { g.min_degree() },
        diameter: connected.then(|| p.diameter()),
        wiener: p.wiener().ok(),
        harary: p.harary().ok(),
        note: (!connected).then_some("disconnected"),
    }
}

fn stat_cells(s: &Stats) -> Vec<String> {
    let undefined = || "undefined".to_string();
    vec![
        s.n.to_string(),
        s.e.to_string(),
        s.min_degree.to_string(),
        s.diameter.map_or_else(undefined, |d| d.to_string()),
        s.wiener.map_or_else(undefined, |w| w.to_string()),
        s.harary.as_ref().map_or_else(undefined, |h| h.to_string()),
        s.note.unwrap_or("").to_string(),
    ]
}

#[derive(Serialize)]
struct IndexRow {
    file: String,
    index: usize,
    #[serde(flatten)]
    stats: Stats,
}

fn index(files: &[PathBuf]) -> Run {
    let rows: Vec<IndexRow> =
        read(files)?.into_iter().map(|(file, index, g)| IndexRow { file, index, stats: stats(&g) }).collect();
    let mut out = Output::new(&rows, vec!["file", "index", "n", "e", "min_degree", "diameter", "W", "H", "reason"])?;
    for r in &rows {
        let mut cells = vec![r.file.clone(), r.index.to_string()];
        cells.extend(stat_cells(&r.stats));
        out.rows.push(cells);
    }
    Ok((out, 0))
}

#[derive(Serialize)]
struct GenRow {
    spec: String,
    name: String,
    graph6: String,
    #[serde(flatten)]
    stats: Stats,
}

fn gen(spec: &str) -> Run {
    let spec: FamilySpec = spec.parse().map_err(show)?;
    let g = build(&spec).map_err(show)?;
    let row = GenRow { spec: spec.to_string(), name: spec.display_name(), graph6: to_graph6(&g), stats: stats(&g) };
    let mut out =
        Output::new(&row, vec!["spec", "name", "graph6", "n", "e", "min_degree", "diameter", "W", "H", "reason"])?;
    let mut cells = vec![row.spec.clone(), row.name.clone(), row.graph6.clone()];
    cells.extend(stat_cells(&row.stats));
    out.rows.push(cells);
    out.preamble.push(row.graph6.clone());
    Ok((out, 0))
}

#[derive(Serialize)]
struct CheckRow {
    file: String,
    index: usize,
    n: usize,
    hamiltonian: HamOutcome,
    traceable: HamOutcome,
}

fn summary(c: &HamCertificate) -> String {
    match c {
        HamCertificate::Cycle { sequence } | HamCertificate::Path { sequence } => {
            let s: Vec<String> = sequence.iter().map(|v| v.to_string()).collect();
            format!("{} [{}]", if matches!(c, HamCertificate::Cycle { .. }) { "cycle" } else { "path" }, s.join(" "))
        }
        HamCertificate::CutWitness { cut_set, component_count } => {
            let s: Vec<String> = cut_set.iter().map(|v| v.to_string()).collect();
            format!("cut {{{}}} -> {component_count} components", s.join(","))
        }
        HamCertificate::Exhausted => "exhausted".into(),
    }
}

fn check(files: &[PathBuf], budget: Option<u64>) -> Run {
    let solver = Solver::with_budget(options(0, budget)?.node_budget);
    let mut rows = Vec::new();
    for (file, index, g) in read(files)? {
        let hamiltonian = solver.is_hamiltonian(&g).map_err(|e| format!("{file} graph {index}: {e}"))?;
        let traceable = solver.is_traceable(&g).map_err(|e| format!("{file} graph {index}: {e}"))?;
        rows.push(CheckRow { file, index, n: g.order(), hamiltonian, traceable });
    }
    let mut out = Output::new(
        &rows,
        vec!["file", "index", "n", "hamiltonian", "certificate", "traceable", "certificate"],
    )?;
    for r in &rows {
        out.rows.push(vec![
            r.file.clone(),
            r.index.to_string(),
            r.n.to_string(),
            r.hamiltonian.answer.to_string(),
            summary(&r.hamiltonian.cert),
            r.traceable.answer.to_string(),
            summary(&r.traceable.cert),
        ]);
    }
    Ok((out, 0))
}

fn verify_cmd(claim: Claim, ns: &[usize], ks: &[usize], opts: &RunOptions) -> Run {
    let mut reports: Vec<VerificationReport> = Vec::new();
    for &n in ns {
        for &k in ks {
            reports.extend(verify(claim, n, k, opts).map_err(|e| format!("{claim} n={n} k={k}: {e}"))?);
        }
    }
    let failing = reports.iter().any(|r| !r.exploratory && !r.violations.is_empty());
    let mut out = Output::new(
        &reports,
        vec![
            "claim", "branch", "n", "k", "strategy", "budget", "examined", "hypothesis", "holds", "exceptional",
            "violations", "exploratory",
        ],
    )?;
    for r in &reports {
        out.rows.push(vec![
            r.theorem.to_string(),
            r.branch.map_or("-".into(), |b| format!("{b:?}").to_lowercase()),
            r.scope.n.to_string(),
            r.scope.k.to_string(),
            r.scope.strategy.clone(),
            r.scope.budget.map_or("-".into(), |b| b.to_string()),
            r.scope.graphs_examined.to_string(),
            r.hypothesis_hits.to_string(),
            r.conclusion_holds.to_string(),
            r.exceptional_matches.len().to_string(),
            r.violations.len().to_string(),
            r.exploratory.to_string(),
        ]);
    }
    for r in &reports {
        for v in &r.violations {
            out.notes.push(format!("violation {} n={} k={}: {v}", r.theorem, r.scope.n, r.scope.k));
        }
        for f in &r.findings {
            out.notes.push(format!("finding {} n={}: {f}", r.theorem, r.scope.n));
        }
    }
    Ok((out, if failing { 2 } else { 0 }))
}

fn audit(opts: &RunOptions) -> Run {
    let a = audit_exceptional_sets(opts).map_err(show)?;
    let mut out = Output::new(
        &a,
        vec![
            "set", "item", "name", "n", "e", "W", "H", "min_degree", "diameter", "has_property", "certificate",
            "target", "W_hyp", "H_hyp", "e_equal",
        ],
    )?;
    for r in &a.members {
        out.rows.push(vec![
            r.set.name().into(),
            r.item.to_string(),
            r.name.clone(),
            r.n.to_string(),
            r.e.to_string(),
            r.wiener.map_or("undefined".into(), |w| w.to_string()),
            r.harary.as_ref().map_or("undefined".into(), |h| h.to_string()),
            r.min_degree.to_string(),
            r.diameter.map_or("undefined".into(), |d| d.to_string()),
            r.has_property.to_string(),
            summary(&r.certificate),
            r.target.clone(),
            r.wiener_hypothesis.to_string(),
            r.harary_hypothesis.to_string(),
            r.edge_equality.to_string(),
        ]);
    }
    out.notes.extend(a.findings.iter().map(|f| format!("finding: {f}")));
    Ok((out, 0))
}
