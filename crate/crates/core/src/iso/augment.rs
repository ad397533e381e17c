//! Edge-by-edge canonical augmentation.
//!
//! A node is a set of "added" edges on a fixed vertex set with a fixed base
//! graph and vertex colouring. Children are formed by adding one edge from
//! each orbit of the node's automorphism group on the allowed non-edges, and
//! a child is kept iff the added edge lies in the orbit of its canonical last
//! edge: the edge with the largest cheap invariant, ties broken by the
//! canonical labelling. Every isomorphism class reachable under hereditary
//! constraints is produced exactly once.

use std::sync::Arc;

use super::canon::{canonical_labeling, Labeling};
use crate::graph::{bit, full_set, members, VertexSet};

/// Hereditary predicate on the added-edge rows: once false, false for every
/// supergraph, so the subtree is cut.
pub(crate) type Prune = dyn Fn(&[VertexSet]) -> bool + Send + Sync;

pub(crate) struct Space {
    pub base: Vec<VertexSet>,
    pub cells: Vec<VertexSet>,
    /// Pairs that may be added; must be invariant under the automorphisms of
    /// the base graph that preserve `cells`.
    pub allowed: Vec<VertexSet>,
    pub max_edges: usize,
    /// Cap on each vertex's degree in the added edges.
    pub max_degree: usize,
}

impl Space {
    pub fn n(&self) -> usize {
        self.base.len()
    }

    fn label(&self, added: &[VertexSet]) -> Labeling {
        let full: Vec<VertexSet> = self.base.iter().zip(added).map(|(b, a)| b | a).collect();
        canonical_labeling(&full, &self.cells)
    }

    fn children(&self, added: &[VertexSet], gens: &[Vec<usize>]) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut cand = Vec::new();
        for u in 0..n {
            if added[u].count_ones() as usize >= self.max_degree {
                continue;
            }
            for v in members(self.allowed[u] & !added[u] & !full_set(u + 1)) {
                if (added[v].count_ones() as usize) < self.max_degree {
                    cand.push((u, v));
                }
            }
        }
        if gens.is_empty() {
            return cand;
        }
        let index = |u: usize, v: usize| u * n + v;
        let mut parent: Vec<usize> = (0..n * n).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for g in gens {
            for &(u, v) in &cand {
                let (a, b) = (g[u].min(g[v]), g[u].max(g[v]));
                let (ra, rb) = (root(&mut parent, index(u, v)), root(&mut parent, index(a, b)));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        cand.into_iter().filter(|&(u, v)| seen.insert(root(&mut parent, index(u, v)))).collect()
    }

    /// Accepts `added` (which contains the new edge `uv`) iff `uv` is in the
    /// orbit of the canonical last edge. Returns the labelling if one was
    /// computed.
    fn accept(&self, added: &[VertexSet], u: usize, v: usize) -> (bool, Option<Labeling>) {
        let deg = |x: usize| (self.base[x] | added[x]).count_ones();
        let key = |x: usize, y: usize| {
            let (dx, dy) = (deg(x), deg(y));
            ((dx + dy) << 16) | (dx.max(dy) << 8) | ((self.base[x] | added[x]) & (self.base[y] | added[y])).count_ones()
        };
        let k_new = key(u, v);
        let mut ties = 0;
        for x in 0..added.len() {
            for y in members(added[x] & !full_set(x + 1)) {
                let k = key(x, y);
                if k > k_new {
                    return (false, None);
                }
                ties += (k == k_new) as usize;
            }
        }
        if ties == 1 {
            return (true, None);
        }
        let l = self.label(added);
        let pos = l.positions();
        let mut last = (0, 0);
        let mut last_rank = None;
        for x in 0..added.len() {
            for y in members(added[x] & !full_set(x + 1)) {
                if key(x, y) == k_new {
                    let rank = (pos[x].max(pos[y]), pos[x].min(pos[y]));
                    if last_rank.is_none_or(|r| rank > r) {
                        last_rank = Some(rank);
                        last = (x, y);
                    }
                }
            }
        }
        let ok = same_edge_orbit((u, v), last, &l.generators);
        (ok, Some(l))
    }
}

fn same_edge_orbit(e: (usize, usize), target: (usize, usize), gens: &[Vec<usize>]) -> bool {
    let norm = |(a, b): (usize, usize)| (a.min(b), a.max(b));
    let (e, target) = (norm(e), norm(target));
    if e == target {
        return true;
    }
    let mut seen = vec![e];
    let mut stack = vec![e];
    while let Some((a, b)) = stack.pop() {
        for g in gens {
            let f = norm((g[a], g[b]));
            if f == target {
                return true;
            }
            if !seen.contains(&f) {
                seen.push(f);
                stack.push(f);
            }
        }
    }
    false
}

/// A subtree of the augmentation tree: `root` and everything below it with
/// at most `max_edges` added edges.
#[derive(Clone)]
pub(crate) struct Subtree {
    pub space: Arc<Space>,
    pub prune: Arc<Prune>,
    pub root: Vec<VertexSet>,
    pub root_edges: usize,
    pub max_edges: usize,
}

impl Subtree {
    pub fn whole(space: Arc<Space>, prune: Arc<Prune>) -> Subtree {
        let n = space.n();
        let max_edges = space.max_edges;
        Subtree { space, prune, root: vec![0; n], root_edges: 0, max_edges }
    }

    pub fn walk(&self) -> Walk {
        Walk { tree: self.clone(), stack: Vec::new(), started: false }
    }

    /// Partitions the subtree into pieces: one holding every node with fewer
    /// than `depth` edges, and one per node at exactly `depth` edges.
    pub fn split(&self, depth: usize) -> Vec<Subtree> {
        if depth <= self.root_edges || depth > self.max_edges {
            return vec![self.clone()];
        }
        let shallow = Subtree { max_edges: depth - 1, ..self.clone() };
        let probe = Subtree { max_edges: depth, ..self.clone() };
        let mut out = vec![shallow];
        for (rows, m) in probe.walk() {
            if m == depth {
                out.push(Subtree { root: rows, root_edges: m, ..self.clone() });
            }
        }
        out
    }
}

struct Frame {
    rows: Vec<VertexSet>,
    edges: usize,
    children: Vec<(usize, usize)>,
    next: usize,
}

pub(crate) struct Walk {
    tree: Subtree,
    stack: Vec<Frame>,
    started: bool,
}

impl Walk {
    fn frame(&self, rows: Vec<VertexSet>, edges: usize, labeling: Option<Labeling>) -> Frame {
        let space = &self.tree.space;
        let children = if edges < self.tree.max_edges {
            let l = labeling.unwrap_or_else(|| space.label(&rows));
            space.children(&rows, &l.generators)
        } else {
            Vec::new()
        };
        Frame { rows, edges, children, next: 0 }
    }
}

impl Iterator for Walk {
    type Item = (Vec<VertexSet>, usize);

    fn next(&mut self) -> Option<Self::Item> {
        if !self.started {
            self.started = true;
            let root = self.tree.root.clone();
            if !(self.tree.prune)(&root) {
                return None;
            }
            let f = self.frame(root.clone(), self.tree.root_edges, None);
            self.stack.push(f);
            return Some((root, self.tree.root_edges));
        }
        loop {
            let top = self.stack.last_mut()?;
            if top.next == top.children.len() {
                self.stack.pop();
                continue;
            }
            let (u, v) = top.children[top.next];
            top.next += 1;
            let mut rows = top.rows.clone();
            rows[u] |= bit(v);
            rows[v] |= bit(u);
            let m = top.edges + 1;
            if !(self.tree.prune)(&rows) {
                continue;
            }
            let (ok, labeling) = self.tree.space.accept(&rows, u, v);
            if !ok {
                continue;
            }
            let f = self.frame(rows.clone(), m, labeling);
            self.stack.push(f);
            return Some((rows, m));
        }
    }
}
