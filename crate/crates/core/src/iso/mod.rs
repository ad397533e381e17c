//! Isomorphism, canonical forms, spanning-subgraph embedding, and
//! isomorph-free enumeration.

mod augment;
mod canon;
mod embed;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::pack_upper_triangle;
use crate::graph::{bit, choose2, full_set, Bipartition, Graph, VertexSet};
use augment::{Space, Subtree, Walk};

pub use embed::is_spanning_subgraph_of;

/// Largest order accepted by [`enumerate_graphs`].
pub const FULL_ENUMERATION_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub n: usize,
    /// graph6 body of the canonically relabelled graph.
    pub code: Vec<u8>,
}

impl CanonicalForm {
    /// The canonical representative as a graph6 string.
    pub fn to_graph6(&self) -> String {
        let mut s = crate::format::to_graph6(&Graph::empty(self.n).expect("order fits"));
        s.truncate(s.len() - (choose2(self.n).div_ceil(6)));
        s.push_str(std::str::from_utf8(&self.code).expect("graph6 bytes"));
        s
    }

    pub fn to_graph(&self) -> Graph {
        crate::format::from_graph6(&self.to_graph6()).expect("canonical code decodes")
    }
}

/// Canonical form: equal iff the graphs are isomorphic.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let l = canon::canonical_labeling(g.rows(), &[g.vertex_set()]);
    let h = Graph::from_rows_unchecked(l.code);
    CanonicalForm { n: g.order(), code: pack_upper_triangle(&h) }
}

/// The graph relabelled into canonical order.
pub fn canonical_graph(g: &Graph) -> Graph {
    let l = canon::canonical_labeling(g.rows(), &[g.vertex_set()]);
    Graph::from_rows_unchecked(l.code)
}

/// Generators of the automorphism group, each a vertex map `v -> p[v]`.
pub fn automorphism_generators(g: &Graph) -> Vec<Vec<usize>> {
    canon::canonical_labeling(g.rows(), &[g.vertex_set()]).generators
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return false;
    }
    let (mut a, mut b) = (g.degrees(), h.degrees());
    a.sort_unstable();
    b.sort_unstable();
    a == b && canonical_form(g) == canonical_form(h)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[derive(Default)]
pub struct EnumFilter {
    pub min_degree: usize,
    pub min_edges: usize,
    /// `None` means no upper bound.
    pub max_edges: Option<usize>,
    pub require_connected: bool,
    /// Keep only bipartite graphs of order `2·half` with a balanced
    /// bipartition.
    pub bipartite_balanced: Option<usize>,
}


impl EnumFilter {
    pub fn connected() -> Self {
        EnumFilter { require_connected: true, ..Self::default() }
    }

    pub fn min_degree(mut self, d: usize) -> Self {
        self.min_degree = d;
        self
    }

    pub fn min_edges(mut self, m: usize) -> Self {
        self.min_edges = m;
        self
    }

    pub fn max_edges(mut self, m: usize) -> Self {
        self.max_edges = Some(m);
        self
    }

    fn upper(&self, n: usize) -> usize {
        self.max_edges.unwrap_or(usize::MAX).min(choose2(n))
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.min_edges > self.upper(n) && self.max_edges.is_some() {
            return Err(Error::Invalid(format!(
                "min_edges {} exceeds max_edges {}",
                self.min_edges,
                self.upper(n)
            )));
        }
        Ok(())
    }

    pub fn accepts(&self, g: &Graph) -> bool {
        let e = g.edge_count();
        (g.order() == 0 || g.min_degree() >= self.min_degree)
            && e >= self.min_edges
            && e <= self.upper(g.order())
            && (!self.require_connected || g.is_connected())
            && self.bipartite_balanced.is_none_or(|half| has_balanced_bipartition(g, half))
    }
}

/// Whether `g` has order `2·half` and a bipartition with equal sides.
pub fn has_balanced_bipartition(g: &Graph, half: usize) -> bool {
    if g.order() != 2 * half {
        return false;
    }
    let Some(bp) = g.bipartition() else { return false };
    // Each component may be flipped independently; subset-sum over the
    // per-component side differences.
    let mut reachable = vec![false; 2 * half + 1];
    reachable[0] = true;
    let mut seen: VertexSet = 0;
    for v in 0..g.order() {
        if seen & bit(v) != 0 {
            continue;
        }
        let comp = g.reach(v, g.vertex_set());
        seen |= comp;
        let a = (comp & bp.left).count_ones() as usize;
        let b = (comp & bp.right).count_ones() as usize;
        let mut next = vec![false; 2 * half + 1];
        for (s, _) in reachable.iter().enumerate().filter(|(_, &r)| r) {
            if s + a <= 2 * half {
                next[s + a] = true;
            }
            if s + b <= 2 * half {
                next[s + b] = true;
            }
        }
        reachable = next;
    }
    reachable[half]
}

#[derive(Clone, Copy, Debug)]
enum Output {
    Plain,
    Complement,
    Bipartite { half: usize },
}

/// Deterministic stream of graphs, one per isomorphism class in scope.
pub struct GraphStream {
    tree: Subtree,
    walk: Walk,
    output: Output,
    filter: EnumFilter,
    closed_under: Option<usize>,
}

impl GraphStream {
    fn new(tree: Subtree, output: Output, filter: EnumFilter) -> GraphStream {
        let walk = tree.walk();
        GraphStream { tree, walk, output, filter, closed_under: None }
    }

    /// Splits the (unstarted) stream into independent pieces whose union is
    /// the whole stream. Pieces are the subtrees rooted at the graphs
    /// reached after `depth` augmentation steps, plus one piece for the
    /// shallower graphs.
    pub fn splits(&self, depth: usize) -> Vec<GraphStream> {
        self.tree
            .split(depth)
            .into_iter()
            .map(|t| {
                let mut s = GraphStream::new(t, self.output, self.filter.clone());
                s.closed_under = self.closed_under;
                s
            })
            .collect()
    }

    fn convert(&self, rows: Vec<VertexSet>) -> Graph {
        match self.output {
            Output::Plain => Graph::from_rows_unchecked(rows),
            Output::Complement => Graph::from_rows_unchecked(rows).complement(),
            Output::Bipartite { half } => {
                let n = 2 * half;
                let left = full_set(half);
                let right = full_set(n) & !left;
                let rows = rows[..n]
                    .iter()
                    .enumerate()
                    .map(|(v, &missing)| if v < half { right & !missing } else { left & !missing })
                    .collect();
                Graph::from_rows_unchecked(rows)
            }
        }
    }
}

impl Iterator for GraphStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        loop {
            let (rows, _) = self.walk.next()?;
            let g = self.convert(rows);
            if self.filter.accepts(&g) && self.closed_under.is_none_or(|t| is_closed_under(&g, t)) {
                return Some(g);
            }
        }
    }
}

fn no_prune() -> Arc<augment::Prune> {
    Arc::new(|_: &[VertexSet]| true)
}

/// Every graph of order `n` passing `filter`, one per isomorphism class.
pub fn enumerate_graphs(n: usize, filter: EnumFilter) -> Result<GraphStream> {
    if n > FULL_ENUMERATION_LIMIT {
        return Err(Error::OrderTooLarge { n, limit: FULL_ENUMERATION_LIMIT, what: "full enumeration" });
    }
    filter.validate(n)?;
    let space = Space {
        base: vec![0; n],
        cells: vec![full_set(n)],
        allowed: (0..n).map(|v| full_set(n) & !bit(v)).collect(),
        max_edges: filter.upper(n),
        max_degree: n,
    };
    Ok(GraphStream::new(Subtree::whole(Arc::new(space), no_prune()), Output::Plain, filter))
}

/// Graphs of order `n` whose complement has at most `budget` edges,
/// produced by enumerating the complements. `filter` applies to the
/// graphs themselves.
pub fn enumerate_dense_via_complement(n: usize, budget: usize, filter: EnumFilter) -> Result<GraphStream> {
    enumerate_dense_pruned(n, budget, filter, None)
}

pub type Keep = Arc<dyn Fn(&Graph) -> bool + Send + Sync>;

/// Like [`enumerate_dense_via_complement`], with an extra cut: `keep` must
/// be monotone under adding edges to the (dense) graph, so that it is
/// hereditary on complements, and subtrees where it fails are skipped.
pub fn enumerate_dense_pruned(n: usize, budget: usize, filter: EnumFilter, keep: Option<Keep>) -> Result<GraphStream> {
    DenseScope { n, budget, filter, keep, closed_under: None }.stream()
}

/// Dense graphs described through their complements.
#[derive(Clone)]
pub struct DenseScope {
    pub n: usize,
    /// Maximum number of missing edges.
    pub budget: usize,
    pub filter: EnumFilter,
    /// Cut that must be monotone under adding edges.
    pub keep: Option<Keep>,
    /// Keep only graphs that are stable under the degree-sum closure with
    /// this threshold: no non-adjacent pair `u, v` has `d(u) + d(v) >= t`.
    pub closed_under: Option<usize>,
}

impl DenseScope {
    pub fn stream(self) -> Result<GraphStream> {
        let DenseScope { n, budget, filter, keep, closed_under } = self;
        filter.validate(n)?;
        if n == 0 {
            return Err(Error::Invalid("complement enumeration needs n >= 1".into()));
        }
        let total = choose2(n);
        let max_edges = budget.min(total.saturating_sub(filter.min_edges));
        let max_degree = (n - 1).saturating_sub(filter.min_degree);
        let empty = filter.min_degree > n - 1 || filter.min_edges > total;
        let space = Space {
            base: vec![0; n],
            cells: vec![full_set(n)],
            allowed: (0..n).map(|v| full_set(n) & !bit(v)).collect(),
            max_edges,
            max_degree,
        };
        let prune: Arc<augment::Prune> = if empty {
            Arc::new(|_: &[VertexSet]| false)
        } else {
            Arc::new(move |rows: &[VertexSet]| {
                closed_under.is_none_or(|t| closure_reachable(rows, n, t, max_edges))
                    && keep.as_ref().is_none_or(|k| k(&Graph::from_rows_unchecked(rows.to_vec()).complement()))
            })
        };
        let mut stream = GraphStream::new(Subtree::whole(Arc::new(space), prune), Output::Complement, filter);
        stream.closed_under = closed_under;
        Ok(stream)
    }
}

/// Whether `g` is stable under the degree-sum closure with threshold `t`.
pub fn is_closed_under(g: &Graph, t: usize) -> bool {
    let n = g.order();
    (0..n).all(|u| {
        crate::graph::members(g.vertex_set() & !g.neighbors(u) & !full_set(u + 1))
            .all(|v| g.degree(u) + g.degree(v) < t)
    })
}

/// Necessary condition, on a complement `c` with at most `budget` edges
/// in total, for `c` to grow into the complement of a closed graph: every
/// complement edge `uv` needs `c(u) + c(v) >= 2(n-1) - t + 1`, and the
/// missing degree along any matching must be coverable by the edges still
/// allowed (each new edge serves at most two matched endpoints).
fn closure_reachable(c: &[VertexSet], n: usize, t: usize, budget: usize) -> bool {
    let need = (2 * (n - 1) + 1).saturating_sub(t);
    let deg: Vec<usize> = c.iter().map(|r| r.count_ones() as usize).collect();
    let edges = deg.iter().sum::<usize>() / 2;
    let left = budget.saturating_sub(edges);
    let mut deficits: Vec<(usize, usize, usize)> = Vec::new();
    for u in 0..n {
        for v in crate::graph::members(c[u] & !full_set(u + 1)) {
            let d = need.saturating_sub(deg[u] + deg[v]);
            if d > left {
                return false;
            }
            if d > 0 {
                deficits.push((d, u, v));
            }
        }
    }
    deficits.sort_unstable_by(|a, b| b.cmp(a));
    let mut used: VertexSet = 0;
    let mut total = 0;
    for (d, u, v) in deficits {
        if used & (bit(u) | bit(v)) == 0 {
            used |= bit(u) | bit(v);
            total += d;
            if total > 2 * left {
                return false;
            }
        }
    }
    true
}

/// Balanced bipartite graphs: subgraphs of `K_{half,half}` missing at most
/// `budget` edges with minimum degree at least `min_degree`, one per
/// isomorphism class (swapping the parts counts as an isomorphism). The
/// parts are always `0..half` and `half..2·half`.
pub fn enumerate_balanced_bipartite(half: usize, budget: usize, min_degree: usize) -> Result<BipartiteStream> {
    enumerate_bipartite_pruned(half, budget, min_degree, None)
}

/// Like [`enumerate_balanced_bipartite`] with a cut that must be monotone
/// under adding edges.
pub fn enumerate_bipartite_pruned(
    half: usize,
    budget: usize,
    min_degree: usize,
    keep: Option<Arc<dyn Fn(&Graph) -> bool + Send + Sync>>,
) -> Result<BipartiteStream> {
    let n = 2 * half;
    if n + 2 > crate::graph::MAX_ORDER {
        return Err(Error::Capacity { requested: n + 2, capacity: crate::graph::MAX_ORDER });
    }
    // Two marker vertices a = n, b = n+1 tie the parts together: a sees the
    // left part, b the right, and ab is an edge. Automorphisms preserving
    // the markers' colour either fix or swap the parts.
    let (a, b) = (n, n + 1);
    let left = full_set(half);
    let right = full_set(n) & !left;
    let mut base = vec![0; n + 2];
    for v in 0..n {
        let m = if v < half { a } else { b };
        base[v] |= bit(m);
        base[m] |= bit(v);
    }
    base[a] |= bit(b);
    base[b] |= bit(a);
    let allowed = (0..n + 2).map(|v| if v < half { right } else if v < n { left } else { 0 }).collect();
    let space = Space {
        base,
        cells: vec![bit(a) | bit(b), full_set(n)],
        allowed,
        max_edges: budget.min(half * half),
        max_degree: half.saturating_sub(min_degree),
    };
    let prune: Arc<augment::Prune> = if min_degree > half && half > 0 {
        Arc::new(|_: &[VertexSet]| false)
    } else {
        match keep {
            None => no_prune(),
            Some(keep) => Arc::new(move |rows: &[VertexSet]| {
                let g: Vec<VertexSet> = (0..n)
                    .map(|v| if v < half { right & !rows[v] } else { left & !rows[v] })
                    .collect();
                keep(&Graph::from_rows_unchecked(g))
            }),
        }
    };
    let filter = EnumFilter { min_degree, ..EnumFilter::default() };
    let inner = GraphStream::new(Subtree::whole(Arc::new(space), prune), Output::Bipartite { half }, filter);
    Ok(BipartiteStream { inner, half })
}

pub struct BipartiteStream {
    inner: GraphStream,
    half: usize,
}

impl BipartiteStream {
    pub fn bipartition(&self) -> Bipartition {
        let left = full_set(self.half);
        Bipartition { left, right: full_set(2 * self.half) & !left }
    }

    pub fn splits(&self, depth: usize) -> Vec<BipartiteStream> {
        self.inner.splits(depth).into_iter().map(|inner| BipartiteStream { inner, half: self.half }).collect()
    }
}

impl Iterator for BipartiteStream {
    type Item = (Graph, Bipartition);

    fn next(&mut self) -> Option<Self::Item> {
        let bp = self.bipartition();
        self.inner.next().map(|g| (g, bp))
    }
}

/// Canonical form of a balanced bipartite graph where swapping the parts
/// counts as an isomorphism but the parts themselves are fixed.
pub fn bipartite_canonical_form(g: &Graph, bp: &Bipartition) -> CanonicalForm {
    let n = g.order();
    let (a, b) = (n, n + 1);
    let mut rows = g.rows().to_vec();
    rows.extend([0, 0]);
    for v in 0..n {
        let m = if bp.left & bit(v) != 0 { a } else { b };
        rows[v] |= bit(m);
        rows[m] |= bit(v);
    }
    rows[a] |= bit(b);
    rows[b] |= bit(a);
    let l = canon::canonical_labeling(&rows, &[bit(a) | bit(b), full_set(n)]);
    let h = Graph::from_rows_unchecked(l.code);
    CanonicalForm { n: n + 2, code: pack_upper_triangle(&h) }
}
