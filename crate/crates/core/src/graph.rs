//! Simple undirected graphs on at most [`MAX_ORDER`] vertices with one
//! `u128` adjacency row per vertex, plus the union/join algebra that every
//! family construction is written in.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 128;

/// Vertex subset of a graph, bit `v` set iff `v` is a member.
pub type VertexSet = u128;

#[inline]
pub const fn bit(v: usize) -> VertexSet {
    1u128 << v
}

/// Mask with the lowest `n` bits set.
#[inline]
pub const fn full_set(n: usize) -> VertexSet {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Iterates the members of a vertex set in ascending order.
#[inline]
pub fn members(mut set: VertexSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(v)
        }
    })
}

pub fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    label: Option<String>,
}

/// Two-coloring of a bipartite graph. `left` and `right` partition the
/// vertex set and no edge lies inside either side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bipartition {
    pub left: VertexSet,
    pub right: VertexSet,
}

impl Bipartition {
    pub fn left_size(&self) -> usize {
        self.left.count_ones() as usize
    }

    pub fn right_size(&self) -> usize {
        self.right.count_ones() as usize
    }

    pub fn is_balanced(&self) -> bool {
        self.left_size() == self.right_size()
    }

    pub fn swapped(&self) -> Bipartition {
        Bipartition { left: self.right, right: self.left }
    }

    /// Checks that the parts cover `g` exactly and carry no internal edge.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        if self.left & self.right != 0 || self.left | self.right != full_set(g.order()) {
            return false;
        }
        members(self.left).all(|v| g.neighbors(v) & self.left == 0)
            && members(self.right).all(|v| g.neighbors(v) & self.right == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicStats {
    pub n: usize,
    pub e: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub connected: bool,
    pub bipartition: Option<Bipartition>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Graph> {
        check_capacity(n)?;
        Ok(Graph { n, adj: vec![0; n], label: None })
    }

    pub fn complete(n: usize) -> Result<Graph> {
        check_capacity(n)?;
        let all = full_set(n);
        let adj = (0..n).map(|v| all & !bit(v)).collect();
        Ok(Graph { n, adj, label: None })
    }

    /// `K_{a,b}` with the first `a` vertices on the left.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<(Graph, Bipartition)> {
        check_capacity(a + b)?;
        let left = full_set(a);
        let right = full_set(a + b) & !left;
        let adj = (0..a + b).map(|v| if v < a { right } else { left }).collect();
        Ok((Graph { n: a + b, adj, label: None }, Bipartition { left, right }))
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        if n >= 3 {
            for v in 0..n {
                g.add_edge(v, (v + 1) % n)?;
            }
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            g.add_edge(v - 1, v)?;
        }
        Ok(g)
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).expect("petersen edges are valid")
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw rows, checking symmetry and loops.
    pub fn from_rows(rows: Vec<VertexSet>) -> Result<Graph> {
        let n = rows.len();
        check_capacity(n)?;
        let all = full_set(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !all != 0 {
                return Err(Error::VertexOutOfRange { vertex: 127 - row.leading_zeros() as usize, n });
            }
            if row & bit(v) != 0 {
                return Err(Error::SelfLoop(v));
            }
            for u in members(row) {
                if rows[u] & bit(v) == 0 {
                    return Err(Error::Invalid(format!("asymmetric adjacency at ({v},{u})")));
                }
            }
        }
        Ok(Graph { n, adj: rows, label: None })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<VertexSet>) -> Graph {
        debug_assert!(Graph::from_rows(rows.clone()).is_ok());
        Graph { n: rows.len(), adj: rows, label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Graph {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn set_label(&mut self, label: Option<String>) {
        self.label = label;
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[VertexSet] {
        &self.adj
    }

    #[inline]
    pub fn vertex_set(&self) -> VertexSet {
        full_set(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
        Ok(())
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|r| r.count_ones() as usize).collect()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| members(self.adj[u] & !full_set(u + 1)).map(move |v| (u, v)))
    }

    /// `G + H`: vertices of `h` are shifted past those of `self`.
    pub fn disjoint_union(&self, h: &Graph) -> Result<Graph> {
        let n = self.n + h.n;
        check_capacity(n)?;
        let shift = self.n;
        let mut adj = self.adj.clone();
        adj.extend(h.adj.iter().map(|&r| r << shift));
        Ok(Graph { n, adj, label: None })
    }

    /// `G ∨ H`: the disjoint union plus every edge between the two sides.
    pub fn join(&self, h: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(h)?;
        let left = full_set(self.n);
        let right = full_set(g.n) & !left;
        for v in 0..g.n {
            g.adj[v] |= if v < self.n { right } else { left };
        }
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let all = full_set(self.n);
        let adj = self.adj.iter().enumerate().map(|(v, &r)| !r & all & !bit(v)).collect();
        Graph { n: self.n, adj, label: None }
    }

    /// Removes `v`; the remaining vertices keep their relative order.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let low = full_set(v);
        let squeeze = |r: VertexSet| (r & low) | ((r >> 1) & !low);
        let adj = self
            .adj
            .iter()
            .enumerate()
            .filter(|&(u, _)| u != v)
            .map(|(_, &r)| squeeze(r & !bit(v)))
            .collect();
        Ok(Graph { n: self.n - 1, adj, label: None })
    }

    /// Induced subgraph on `set`, vertices renumbered in ascending order.
    pub fn induced(&self, set: VertexSet) -> Graph {
        let kept: Vec<usize> = members(set & self.vertex_set()).collect();
        let mut pos = [0usize; MAX_ORDER];
        for (i, &v) in kept.iter().enumerate() {
            pos[v] = i;
        }
        let adj = kept
            .iter()
            .map(|&v| members(self.adj[v] & set).fold(0, |acc, u| acc | bit(pos[u])))
            .collect();
        Graph { n: kept.len(), adj, label: None }
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal order");
        let mut adj = vec![0; self.n];
        for v in 0..self.n {
            adj[perm[v]] = members(self.adj[v]).fold(0, |acc, u| acc | bit(perm[u]));
        }
        Graph { n: self.n, adj, label: self.label.clone() }
    }

    /// Is every edge of `self` also an edge of `other` (same labels)?
    pub fn is_subgraph_of_labeled(&self, other: &Graph) -> bool {
        self.n == other.n && self.adj.iter().zip(&other.adj).all(|(a, b)| a & !b == 0)
    }

    /// Vertices reachable from `start` without leaving `within`.
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = bit(start);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in members(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Number of connected components of the subgraph induced on `within`.
    pub fn component_count(&self, within: VertexSet) -> usize {
        let mut rest = within & self.vertex_set();
        let mut count = 0;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= !self.reach(v, rest);
            count += 1;
        }
        count
    }

    /// The null graph counts as disconnected.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.reach(0, self.vertex_set()) == self.vertex_set()
    }

    /// A proper 2-coloring if one exists. Each component's lowest vertex
    /// goes on the left.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let mut left = 0u128;
        let mut right = 0u128;
        let mut unseen = self.vertex_set();
        while unseen != 0 {
            let root = unseen.trailing_zeros() as usize;
            let mut frontier = bit(root);
            let mut side_left = true;
            left |= frontier;
            unseen &= !frontier;
            while frontier != 0 {
                let mut next = 0;
                for v in members(frontier) {
                    next |= self.adj[v];
                }
                let own = if side_left { left } else { right };
                if next & own != 0 {
                    return None;
                }
                next &= unseen;
                side_left = !side_left;
                if side_left {
                    left |= next;
                } else {
                    right |= next;
                }
                unseen &= !next;
                frontier = next;
            }
        }
        Some(Bipartition { left, right })
    }

    pub fn basic_stats(&self) -> BasicStats {
        BasicStats {
            n: self.n,
            e: self.edge_count(),
            min_degree: self.min_degree(),
            max_degree: self.max_degree(),
            connected: self.is_connected(),
            bipartition: self.bipartition(),
        }
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(Error::Capacity { requested: n, capacity: MAX_ORDER })
    } else {
        Ok(())
    }
}

// Labels are annotations; equality is on the labeled graph only.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.adj.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().collect();
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("label", &self.label)
            .field("edges", &edges)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        Graph::complete(n).unwrap()
    }

    fn e(n: usize) -> Graph {
        Graph::empty(n).unwrap()
    }

    #[test]
    fn complete_graphs() {
        assert_eq!(k(1).edge_count(), 0);
        let k5 = k(5);
        assert_eq!(k5.edge_count(), 10);
        assert_eq!(k5.min_degree(), 4);
        assert_eq!(k(0).order(), 0);
        assert_eq!(k(0).edge_count(), 0);
    }

    #[test]
    fn empty_graphs() {
        assert_eq!(e(4).edge_count(), 0);
        assert_eq!(e(4).min_degree(), 0);
        assert_eq!(e(1).order(), 1);
        assert_eq!(e(0).order(), 0);
    }

    #[test]
    fn capacity_is_enforced() {
        assert!(Graph::complete(128).is_ok());
        assert!(matches!(Graph::complete(129), Err(Error::Capacity { .. })));
        assert!(matches!(Graph::empty(200), Err(Error::Capacity { .. })));
        assert!(k(100).disjoint_union(&k(29)).is_err());
    }

    #[test]
    fn complete_bipartite_graphs() {
        let (g, parts) = Graph::complete_bipartite(2, 4).unwrap();
        assert_eq!(g.edge_count(), 8);
        assert_eq!((parts.left_size(), parts.right_size()), (2, 4));
        assert!(parts.is_valid_for(&g));
        assert_eq!(Graph::complete_bipartite(1, 3).unwrap().0.edge_count(), 3);
        let (g, _) = Graph::complete_bipartite(0, 3).unwrap();
        assert_eq!((g.order(), g.edge_count()), (3, 0));
    }

    #[test]
    fn unions() {
        let g = k(3).disjoint_union(&e(2)).unwrap();
        assert_eq!((g.order(), g.edge_count()), (5, 3));
        let g = k(2).disjoint_union(&k(2)).unwrap();
        assert_eq!((g.order(), g.edge_count()), (4, 2));
        assert_eq!(g.component_count(g.vertex_set()), 2);
        let p = Graph::petersen();
        assert_eq!(p.disjoint_union(&e(0)).unwrap(), p);
    }

    #[test]
    fn joins() {
        let g = k(1).join(&k(2).disjoint_union(&e(2)).unwrap()).unwrap();
        assert_eq!((g.order(), g.edge_count()), (5, 5));
        let g = k(3).join(&e(4)).unwrap();
        assert_eq!((g.order(), g.edge_count()), (7, 15));
        let p = Graph::petersen();
        assert_eq!(e(0).join(&p).unwrap(), p);
    }

    #[test]
    fn complements() {
        assert_eq!(k(6).complement(), e(6));
        let c5 = Graph::cycle(5).unwrap();
        let cc = c5.complement();
        assert_eq!(cc.edge_count(), 5);
        assert!(cc.degrees().iter().all(|&d| d == 2));
        assert!(cc.is_connected());
        let (k24, _) = Graph::complete_bipartite(2, 4).unwrap();
        assert_eq!(k24.complement(), k(2).disjoint_union(&k(4)).unwrap());
    }

    #[test]
    fn vertex_deletion_keeps_order() {
        assert_eq!(k(3).delete_vertex(1).unwrap(), k(2));
        assert_eq!(k(1).delete_vertex(0).unwrap().order(), 0);
        let p4 = Graph::path(4).unwrap();
        let g = p4.delete_vertex(1).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2)]);
        assert!(k(3).delete_vertex(3).is_err());
    }

    #[test]
    fn stats_of_small_graphs() {
        let p4 = Graph::path(4).unwrap();
        let s = p4.basic_stats();
        assert_eq!((s.n, s.e, s.min_degree, s.connected), (4, 3, 1, true));
        let parts = s.bipartition.unwrap();
        assert_eq!((parts.left_size(), parts.right_size()), (2, 2));
        assert!(!k(3).disjoint_union(&k(2)).unwrap().is_connected());
        assert!(k(3).bipartition().is_none());
        assert!(!e(0).is_connected());
        assert!(e(1).is_connected());
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = e(3);
        assert_eq!(g.add_edge(1, 1), Err(Error::SelfLoop(1)));
        assert!(g.add_edge(0, 3).is_err());
        assert!(Graph::from_rows(vec![0b10, 0]).is_err());
    }

    #[test]
    fn permute_and_induced() {
        let p4 = Graph::path(4).unwrap();
        let q = p4.permute(&[3, 2, 1, 0]);
        assert_eq!(q, p4);
        let star = Graph::complete_bipartite(1, 3).unwrap().0;
        assert_eq!(star.induced(0b1110), e(3));
        assert_eq!(Graph::petersen().edge_count(), 15);
    }
}
