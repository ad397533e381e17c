//! Same-order spanning embedding: a bijection mapping every edge of `G` onto
//! an edge of `H`.

use crate::error::{Error, Result};
use crate::graph::{bit, members, Graph, VertexSet};

pub fn is_spanning_subgraph_of(g: &Graph, h: &Graph) -> Result<bool> {
    let n = g.order();
    if n != h.order() {
        return Err(Error::OrderMismatch(n, h.order()));
    }
    if g.edge_count() > h.edge_count() {
        return Ok(false);
    }
    let (mut dg, mut dh) = (g.degrees(), h.degrees());
    dg.sort_unstable_by(|a, b| b.cmp(a));
    dh.sort_unstable_by(|a, b| b.cmp(a));
    if dg.iter().zip(&dh).any(|(a, b)| a > b) {
        return Ok(false);
    }
    // Place high-degree vertices first, then those with the most placed
    // neighbours, so adjacency constraints bite early.
    let mut order = Vec::with_capacity(n);
    let mut placed: VertexSet = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| placed & bit(v) == 0)
            .max_by_key(|&v| ((g.neighbors(v) & placed).count_ones(), g.degree(v), std::cmp::Reverse(v)))
            .expect("unplaced vertex");
        order.push(v);
        placed |= bit(v);
    }
    // at_least[d]: vertices of H with degree >= d.
    let at_least: Vec<VertexSet> =
        (0..=n).map(|d| (0..n).filter(|&w| h.degree(w) >= d).fold(0, |acc, w| acc | bit(w))).collect();
    let mut image = vec![usize::MAX; n];
    Ok(extend(g, h, &order, 0, &mut image, 0, &at_least))
}

fn extend(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    i: usize,
    image: &mut [usize],
    used: VertexSet,
    at_least: &[VertexSet],
) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    let mut cand = at_least[g.degree(v)] & !used;
    for u in members(g.neighbors(v)) {
        if image[u] != usize::MAX {
            cand &= h.neighbors(image[u]);
        }
    }
    for w in members(cand) {
        image[v] = w;
        if extend(g, h, order, i + 1, image, used | bit(w), at_least) {
            return true;
        }
    }
    image[v] = usize::MAX;
    false
}
