//! Canonical labelling by individualisation and equitable refinement.
//!
//! The search tree is the usual one: refine the ordered partition to an
//! equitable one, individualise each vertex of the first smallest
//! non-singleton cell in turn, recurse. Leaves are discrete partitions and
//! the canonical leaf is the one whose relabelled adjacency rows are
//! lexicographically largest. Leaves that reproduce the first or the best
//! code give automorphisms, which prune siblings and let the search jump
//! back to the common ancestor. Nothing here depends on the order being
//! small; the cost does.

use crate::graph::{bit, members, VertexSet};

pub(crate) struct Labeling {
    /// Canonical position to vertex.
    pub lab: Vec<usize>,
    /// Adjacency rows of the canonically relabelled graph.
    pub code: Vec<VertexSet>,
    /// Generators of the colour-preserving automorphism group, as vertex maps.
    pub generators: Vec<Vec<usize>>,
}

impl Labeling {
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.lab.len()];
        for (i, &v) in self.lab.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

/// Labels the graph given by `rows` with the vertex colouring `cells`
/// (an ordered partition; empty cells are ignored).
pub(crate) fn canonical_labeling(rows: &[VertexSet], cells: &[VertexSet]) -> Labeling {
    let n = rows.len();
    let mut lab = Vec::with_capacity(n);
    let mut starts: u128 = 0;
    for &c in cells.iter().filter(|&&c| c != 0) {
        starts |= bit(lab.len());
        lab.extend(members(c));
    }
    assert_eq!(lab.len(), n, "colouring must cover every vertex exactly once");
    if n == 0 {
        return Labeling { lab, code: Vec::new(), generators: Vec::new() };
    }
    let queue = starts;
    refine(rows, &mut lab, &mut starts, queue);
    let mut s = Searcher { rows, n, path: Vec::new(), first: None, best: None, generators: Vec::new() };
    s.descend(lab, starts, 0);
    let best = s.best.expect("search reaches a leaf");
    Labeling { lab: best.lab, code: best.code, generators: s.generators }
}

/// Exclusive end of the cell starting at `s`.
#[inline]
fn cell_end(starts: u128, s: usize, n: usize) -> usize {
    let above = if s + 1 >= 128 { 0 } else { starts & (u128::MAX << (s + 1)) };
    if above == 0 {
        n
    } else {
        above.trailing_zeros() as usize
    }
}

/// Refines to the coarsest equitable partition finer than the current one,
/// using the cells whose start positions are in `queue` as initial splitters.
fn refine(rows: &[VertexSet], lab: &mut [usize], starts: &mut u128, mut queue: u128) {
    let n = lab.len();
    let mut keys = vec![0u32; n];
    while queue != 0 {
        let s = queue.trailing_zeros() as usize;
        queue &= queue - 1;
        let w = lab[s..cell_end(*starts, s, n)].iter().fold(0u128, |acc, &v| acc | bit(v));
        let mut cells = *starts;
        while cells != 0 {
            let c = cells.trailing_zeros() as usize;
            cells &= cells - 1;
            let e = cell_end(*starts, c, n);
            if e - c == 1 {
                continue;
            }
            for &v in &lab[c..e] {
                keys[v] = (rows[v] & w).count_ones();
            }
            let k0 = keys[lab[c]];
            if lab[c + 1..e].iter().all(|&v| keys[v] == k0) {
                continue;
            }
            lab[c..e].sort_by_key(|&v| keys[v]);
            let requeue_all = queue & bit(c) != 0;
            let mut frags = Vec::new();
            let mut f = c;
            for i in c + 1..=e {
                if i == e || keys[lab[i]] != keys[lab[i - 1]] {
                    frags.push((f, i - f));
                    f = i;
                }
            }
            let largest = frags.iter().max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0))).expect("split").0;
            for &(f, _) in &frags {
                *starts |= bit(f);
                if requeue_all || f != largest {
                    queue |= bit(f);
                }
            }
        }
    }
}

struct Leaf {
    lab: Vec<usize>,
    code: Vec<VertexSet>,
    path: Vec<usize>,
}

struct Searcher<'a> {
    rows: &'a [VertexSet],
    n: usize,
    path: Vec<usize>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

impl Searcher<'_> {
    /// Returns `Some(level)` to unwind to the ancestor at `level`.
    fn descend(&mut self, lab: Vec<usize>, starts: u128, level: usize) -> Option<usize> {
        let n = self.n;
        if starts.count_ones() as usize == n {
            return self.leaf(lab);
        }
        let (c, e) = {
            let mut best: Option<(usize, usize)> = None;
            let mut cells = starts;
            while cells != 0 {
                let c = cells.trailing_zeros() as usize;
                cells &= cells - 1;
                let e = cell_end(starts, c, n);
                if e - c > 1 && best.is_none_or(|(bc, be)| e - c < be - bc) {
                    best = Some((c, e));
                }
            }
            best.expect("non-discrete partition has a non-singleton cell")
        };
        let mut candidates = lab[c..e].to_vec();
        candidates.sort_unstable();
        let mut tried: Vec<usize> = Vec::new();
        for v in candidates {
            if !tried.is_empty() && self.equivalent(v, &tried) {
                continue;
            }
            let mut child = lab.clone();
            let p = c + child[c..e].iter().position(|&x| x == v).expect("candidate in cell");
            child.swap(c, p);
            let mut st = starts | bit(c + 1);
            refine(self.rows, &mut child, &mut st, bit(c));
            self.path.push(v);
            let r = self.descend(child, st, level + 1);
            self.path.pop();
            tried.push(v);
            if let Some(t) = r {
                if t < level {
                    return Some(t);
                }
            }
        }
        None
    }

    /// Whether some stored automorphism fixing the current path pointwise
    /// maps `v` onto a vertex already tried at this node.
    fn equivalent(&self, v: usize, tried: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for g in &self.generators {
            if self.path.iter().all(|&x| g[x] == x) {
                for (x, &y) in g.iter().enumerate() {
                    let (a, b) = (root(&mut parent, x), root(&mut parent, y));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let rv = root(&mut parent, v);
        tried.iter().any(|&t| root(&mut parent, t) == rv)
    }

    fn leaf(&mut self, lab: Vec<usize>) -> Option<usize> {
        let code = relabel(self.rows, &lab);
        let Some(first) = &self.first else {
            let leaf = Leaf { lab, code, path: self.path.clone() };
            self.best = Some(Leaf { lab: leaf.lab.clone(), code: leaf.code.clone(), path: leaf.path.clone() });
            self.first = Some(leaf);
            return None;
        };
        if code == first.code {
            let g = map_between(&first.lab, &lab);
            let t = common_prefix(&first.path, &self.path);
            self.push_generator(g);
            return Some(t);
        }
        let best = self.best.as_ref().expect("best set with first");
        match code.cmp(&best.code) {
            std::cmp::Ordering::Greater => {
                self.best = Some(Leaf { lab, code, path: self.path.clone() });
                None
            }
            std::cmp::Ordering::Equal => {
                let g = map_between(&best.lab, &lab);
                let t = common_prefix(&best.path, &self.path);
                self.push_generator(g);
                Some(t)
            }
            std::cmp::Ordering::Less => None,
        }
    }

    fn push_generator(&mut self, g: Vec<usize>) {
        if g.iter().enumerate().any(|(i, &x)| i != x) {
            self.generators.push(g);
        }
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// The vertex map sending `from[i]` to `to[i]`.
fn map_between(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut g = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        g[a] = b;
    }
    g
}

/// Rows of the graph relabelled so that vertex `lab[i]` becomes `i`.
pub(crate) fn relabel(rows: &[VertexSet], lab: &[usize]) -> Vec<VertexSet> {
    let mut pos = vec![0; lab.len()];
    for (i, &v) in lab.iter().enumerate() {
        pos[v] = i;
    }
    lab.iter().map(|&v| members(rows[v]).fold(0u128, |acc, u| acc | bit(pos[u]))).collect()
}
