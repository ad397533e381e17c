//! Named extremal families and the two nine-member exceptional sets.
//!
//! | tag    | graph                              | range            |
//! |--------|------------------------------------|------------------|
//! | `L`    | `K_1 ∨ (K_k + K_{n-k-1})`          | `1 ≤ k ≤ (n-1)/2`|
//! | `N`    | `K_k ∨ (K_{n-2k} + kK_1)`          | `1 ≤ k ≤ (n-1)/2`|
//! | `Lbar` | `K_{k+1} + K_{n-k-1}`              | `0 ≤ k ≤ n/2-1`  |
//! | `Nbar` | `K_k ∨ (K_{n-2k-1} + (k+1)K_1)`    | `0 ≤ k ≤ n/2-1`  |
//! | `B`    | `K_{n,n}` minus a `K_{n-k,k}`      | `1 ≤ k ≤ n/2`    |
//!
//! `B` takes the half-order as `n`; the graph has `2n` vertices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{choose2, Bipartition, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyTag {
    L,
    N,
    Lbar,
    Nbar,
    B,
    G1,
    G2,
}

impl FamilyTag {
    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::L => "L",
            FamilyTag::N => "N",
            FamilyTag::Lbar => "Lbar",
            FamilyTag::Nbar => "Nbar",
            FamilyTag::B => "B",
            FamilyTag::G1 => "G1",
            FamilyTag::G2 => "G2",
        }
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "L" => FamilyTag::L,
            "N" => FamilyTag::N,
            "Lbar" => FamilyTag::Lbar,
            "Nbar" => FamilyTag::Nbar,
            "B" => FamilyTag::B,
            "G1" => FamilyTag::G1,
            "G2" => FamilyTag::G2,
            _ => return Err(Error::Invalid(format!("unknown family tag {s:?}"))),
        })
    }
}

/// Identifies one family member. For `G1`/`G2`, `item` indexes the
/// nine-member list (0 is the parametric member) and `k` is unused.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub tag: FamilyTag,
    pub n: usize,
    pub k: usize,
    pub item: Option<usize>,
}

impl FamilySpec {
    pub fn new(tag: FamilyTag, n: usize, k: usize) -> FamilySpec {
        FamilySpec { tag, n, k, item: None }
    }

    pub fn exceptional(tag: FamilyTag, n: usize, item: usize) -> FamilySpec {
        FamilySpec { tag, n, k: 0, item: Some(item) }
    }

    /// Number of vertices of the built graph.
    pub fn order(&self) -> usize {
        if self.tag == FamilyTag::B {
            2 * self.n
        } else {
            self.n
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (n, k) = (self.n, self.k);
        let fail = |why: &str| Err(Error::ParameterOutOfRange(format!("{self}: {why}")));
        match self.tag {
            FamilyTag::L | FamilyTag::N => {
                if k < 1 || 2 * k + 1 > n {
                    return fail("requires 1 <= k <= (n-1)/2");
                }
            }
            FamilyTag::Lbar | FamilyTag::Nbar => {
                if 2 * k + 2 > n {
                    return fail("requires 0 <= k <= n/2 - 1");
                }
            }
            FamilyTag::B => {
                if k < 1 || 2 * k > n {
                    return fail("requires 1 <= k <= n/2");
                }
            }
            FamilyTag::G1 | FamilyTag::G2 => {
                let table = exceptional_table(self.tag);
                let Some(i) = self.item else {
                    return fail("missing item index");
                };
                let Some(item) = table.get(i) else {
                    return fail("item index must be 0..=8");
                };
                match item.order {
                    Some(order) if order != n => {
                        return fail(&format!("item {i} has order {order}"));
                    }
                    None if n < item.min_order => {
                        return fail(&format!("parametric member needs n >= {}", item.min_order));
                    }
                    _ => {}
                }
            }
        }
        if self.order() > crate::graph::MAX_ORDER {
            return fail("order exceeds capacity");
        }
        Ok(())
    }

    /// Closed-form edge count for the five parametric families.
    pub fn edge_count(&self) -> Result<u64> {
        self.validate()?;
        let (n, k) = (self.n, self.k);
        let e = match self.tag {
            FamilyTag::L => choose2(n - k) + (k + 1) * k / 2,
            FamilyTag::N => choose2(n - k) + k * k,
            FamilyTag::Lbar => choose2(k + 1) + choose2(n - k - 1),
            FamilyTag::Nbar => choose2(n - k - 1) + k * (k + 1),
            FamilyTag::B => n * (n - k) + k * k,
            FamilyTag::G1 | FamilyTag::G2 => {
                return Err(Error::UnsupportedFamily(format!("{self}: no closed-form edge count")));
            }
        };
        Ok(e as u64)
    }

    pub fn display_name(&self) -> String {
        match self.tag {
            FamilyTag::G1 | FamilyTag::G2 => {
                let i = self.item.unwrap_or(0);
                let table = exceptional_table(self.tag);
                let name = table.get(i).map_or("?", |t| t.name);
                format!("{}[{}] {} (n={})", self.tag.name(), i, name, self.n)
            }
            _ => format!("{}^{}_{}", self.tag.name(), self.k, self.n),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.item {
            Some(i) => write!(f, "{}:n={},i={}", self.tag.name(), self.n, i),
            None => write!(f, "{}:n={},k={}", self.tag.name(), self.n, self.k),
        }
    }
}

/// Parses `N:n=9,k=2`, `B:n=3,k=1`, `G1:n=7,i=1`.
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Invalid(format!("bad family spec {s:?}: {why}"));
        let (tag, params) = s.trim().split_once(':').ok_or_else(|| bad("expected TAG:params"))?;
        let tag: FamilyTag = tag.trim().parse()?;
        let (mut n, mut k, mut item) = (None, None, None);
        for part in params.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let value: usize = value.trim().parse().map_err(|_| bad("value is not a count"))?;
            match key.trim() {
                "n" => n = Some(value),
                "k" => k = Some(value),
                "i" => item = Some(value),
                other => return Err(bad(&format!("unknown key {other:?}"))),
            }
        }
        let n = n.ok_or_else(|| bad("missing n"))?;
        match tag {
            FamilyTag::G1 | FamilyTag::G2 => {
                if k.is_some() {
                    return Err(bad("exceptional members take i, not k"));
                }
                Ok(FamilySpec::exceptional(tag, n, item.ok_or_else(|| bad("missing i"))?))
            }
            _ => {
                if item.is_some() {
                    return Err(bad("only G1/G2 take i"));
                }
                Ok(FamilySpec::new(tag, n, k.ok_or_else(|| bad("missing k"))?))
            }
        }
    }
}

fn k(n: usize) -> Graph {
    Graph::complete(n).expect("family orders are within capacity")
}

fn e(n: usize) -> Graph {
    Graph::empty(n).expect("family orders are within capacity")
}

fn kab(a: usize, b: usize) -> Graph {
    Graph::complete_bipartite(a, b).expect("family orders are within capacity").0
}

fn join(a: &Graph, b: &Graph) -> Graph {
    a.join(b).expect("family orders are within capacity")
}

fn union(a: &Graph, b: &Graph) -> Graph {
    a.disjoint_union(b).expect("family orders are within capacity")
}

/// One entry of an exceptional list: fixed order, or parametric in `n`.
pub struct ExceptionalItem {
    pub name: &'static str,
    pub order: Option<usize>,
    pub min_order: usize,
    build: fn(usize) -> Graph,
}

static G1_TABLE: [ExceptionalItem; 9] = [
    ExceptionalItem { name: "K2 v (K_{n-4} + 2K1)", order: None, min_order: 5, build: |n| join(&k(2), &union(&k(n - 4), &e(2))) },
    ExceptionalItem { name: "K3 v 4K1", order: Some(7), min_order: 7, build: |_| join(&k(3), &e(4)) },
    ExceptionalItem { name: "K2 v (K_{1,3} + K1)", order: Some(7), min_order: 7, build: |_| join(&k(2), &union(&kab(1, 3), &e(1))) },
    ExceptionalItem { name: "K1 v K_{2,4}", order: Some(7), min_order: 7, build: |_| join(&k(1), &kab(2, 4)) },
    ExceptionalItem { name: "K3 v (K2 + 3K1)", order: Some(8), min_order: 8, build: |_| join(&k(3), &union(&k(2), &e(3))) },
    ExceptionalItem { name: "K4 v 5K1", order: Some(9), min_order: 9, build: |_| join(&k(4), &e(5)) },
    ExceptionalItem { name: "K3 v (K_{1,4} + K1)", order: Some(9), min_order: 9, build: |_| join(&k(3), &union(&kab(1, 4), &e(1))) },
    ExceptionalItem { name: "K2 v K_{2,5}", order: Some(9), min_order: 9, build: |_| join(&k(2), &kab(2, 5)) },
    ExceptionalItem { name: "K5 v 6K1", order: Some(11), min_order: 11, build: |_| join(&k(5), &e(6)) },
];

static G2_TABLE: [ExceptionalItem; 9] = [
    ExceptionalItem { name: "K1 v (K_{n-3} + 2K1)", order: None, min_order: 4, build: |n| join(&k(1), &union(&k(n - 3), &e(2))) },
    ExceptionalItem { name: "K2 v 4K1", order: Some(6), min_order: 6, build: |_| join(&k(2), &e(4)) },
    ExceptionalItem { name: "K1 v (K_{1,3} + K1)", order: Some(6), min_order: 6, build: |_| join(&k(1), &union(&kab(1, 3), &e(1))) },
    ExceptionalItem { name: "K_{2,4}", order: Some(6), min_order: 6, build: |_| kab(2, 4) },
    ExceptionalItem { name: "K2 v (3K1 + K2)", order: Some(7), min_order: 7, build: |_| join(&k(2), &union(&e(3), &k(2))) },
    ExceptionalItem { name: "K3 v 5K1", order: Some(8), min_order: 8, build: |_| join(&k(3), &e(5)) },
    ExceptionalItem { name: "K2 v (K_{1,4} + K1)", order: Some(8), min_order: 8, build: |_| join(&k(2), &union(&kab(1, 4), &e(1))) },
    ExceptionalItem { name: "K1 v K_{2,5}", order: Some(8), min_order: 8, build: |_| join(&k(1), &kab(2, 5)) },
    ExceptionalItem { name: "K4 v 6K1", order: Some(10), min_order: 10, build: |_| join(&k(4), &e(6)) },
];

pub fn exceptional_table(tag: FamilyTag) -> &'static [ExceptionalItem] {
    match tag {
        FamilyTag::G1 => &G1_TABLE,
        FamilyTag::G2 => &G2_TABLE,
        _ => &[],
    }
}

pub fn build(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let (n, kk) = (spec.n, spec.k);
    let g = match spec.tag {
        FamilyTag::L => join(&k(1), &union(&k(kk), &k(n - kk - 1))),
        FamilyTag::N => join(&k(kk), &union(&k(n - 2 * kk), &e(kk))),
        FamilyTag::Lbar => union(&k(kk + 1), &k(n - kk - 1)),
        FamilyTag::Nbar => join(&k(kk), &union(&k(n - 2 * kk - 1), &e(kk + 1))),
        FamilyTag::B => build_b(n, kk).0,
        FamilyTag::G1 | FamilyTag::G2 => {
            let item = &exceptional_table(spec.tag)[spec.item.expect("validated")];
            (item.build)(n)
        }
    };
    Ok(g.with_label(spec.display_name()))
}

/// `B^k_n` with left part `0..n` and right part `n..2n`; the removed
/// `K_{n-k,k}` joins left `0..n-k` to right `n..n+k`.
pub fn build_bipartite(n: usize, k: usize) -> Result<(Graph, Bipartition)> {
    FamilySpec::new(FamilyTag::B, n, k).validate()?;
    let (g, parts) = build_b(n, k);
    Ok((g.with_label(format!("B^{k}_{n}")), parts))
}

fn build_b(n: usize, k: usize) -> (Graph, Bipartition) {
    let (mut g, parts) = Graph::complete_bipartite(n, n).expect("validated order");
    for x in 0..n - k {
        for y in n..n + k {
            g.remove_edge(x, y).expect("vertices in range");
        }
    }
    (g, parts)
}

fn members_of(tag: FamilyTag, n: usize) -> Vec<Graph> {
    exceptional_table(tag)
        .iter()
        .enumerate()
        .filter(|(_, item)| item.order.map_or(n >= item.min_order, |o| o == n))
        .map(|(i, _)| build(&FamilySpec::exceptional(tag, n, i)).expect("order checked"))
        .collect()
}

/// Members of the Hamiltonicity exceptional set of order `n` (`n >= 5`).
pub fn g1_members(n: usize) -> Vec<Graph> {
    members_of(FamilyTag::G1, n)
}

/// Members of the traceability exceptional set of order `n` (`n >= 4`).
pub fn g2_members(n: usize) -> Vec<Graph> {
    members_of(FamilyTag::G2, n)
}

/// The three graphs of the original (uncorrected) traceability lists.
pub fn original_traceability_exceptions(n: usize) -> Vec<Graph> {
    [0usize, 4, 8]
        .into_iter()
        .filter(|&i| G2_TABLE[i].order.map_or(n >= G2_TABLE[i].min_order, |o| o == n))
        .map(|i| build(&FamilySpec::exceptional(FamilyTag::G2, n, i)).expect("order checked"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bit;

    fn spec(s: &str) -> FamilySpec {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(spec("N:n=9,k=2"), FamilySpec::new(FamilyTag::N, 9, 2));
        assert_eq!(spec("G1:n=7,i=1"), FamilySpec::exceptional(FamilyTag::G1, 7, 1));
        assert_eq!(spec("B:n=3,k=1").to_string(), "B:n=3,k=1");
        assert!("X:n=3,k=1".parse::<FamilySpec>().is_err());
        assert!("N:n=9".parse::<FamilySpec>().is_err());
        assert!("N:n=9,k=2,i=1".parse::<FamilySpec>().is_err());
        assert!("G1:n=7,k=1".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn ranges() {
        assert!(build(&spec("N:n=9,k=4")).is_ok());
        assert!(matches!(build(&spec("N:n=9,k=5")), Err(Error::ParameterOutOfRange(_))));
        assert!(build(&spec("L:n=9,k=0")).is_err());
        assert!(build(&spec("Nbar:n=10,k=4")).is_ok());
        assert!(build(&spec("Nbar:n=10,k=5")).is_err());
        assert!(build(&spec("B:n=4,k=2")).is_ok());
        assert!(build(&spec("B:n=4,k=3")).is_err());
        assert!(build(&spec("G1:n=8,i=1")).is_err());
        assert!(build(&spec("G1:n=4,i=0")).is_err());
        assert!(build(&spec("G2:n=6,i=9")).is_err());
    }

    #[test]
    fn family_examples() {
        let n29 = build(&spec("N:n=9,k=2")).unwrap();
        assert_eq!(n29.edge_count(), 25);
        assert_eq!(spec("N:n=9,k=2").edge_count().unwrap(), 25);
        let b = build(&spec("B:n=3,k=1")).unwrap();
        assert_eq!((b.order(), b.edge_count(), b.min_degree()), (6, 7, 1));
        assert_eq!(spec("Nbar:n=10,k=1").edge_count().unwrap(), 30);
        assert_eq!(spec("Lbar:n=10,k=1").edge_count().unwrap(), 29);
        assert_eq!(build(&spec("Lbar:n=10,k=1")).unwrap().edge_count(), 29);
    }

    #[test]
    fn closed_form_edge_counts_match_constructions() {
        for n in 1..=30 {
            for kk in 0..=6 {
                for tag in [FamilyTag::L, FamilyTag::N, FamilyTag::Lbar, FamilyTag::Nbar, FamilyTag::B] {
                    let s = FamilySpec::new(tag, n, kk);
                    if s.validate().is_err() {
                        continue;
                    }
                    let g = build(&s).unwrap();
                    assert_eq!(g.edge_count() as u64, s.edge_count().unwrap(), "{s}");
                    if matches!(tag, FamilyTag::N | FamilyTag::B) {
                        assert_eq!(g.min_degree(), kk, "{s}");
                    }
                }
            }
        }
    }

    #[test]
    fn bar_families_are_vertex_deleted() {
        // deleting a dominating vertex of the order-(n+1), parameter-(k+1) member
        for n in 4..=12 {
            for kk in 0..=(n / 2 - 1) {
                let big = build(&FamilySpec::new(FamilyTag::N, n + 1, kk + 1)).unwrap();
                let v = (0..=n).find(|&v| big.degree(v) == n).unwrap();
                let small = big.delete_vertex(v).unwrap();
                let direct = build(&FamilySpec::new(FamilyTag::Nbar, n, kk)).unwrap();
                assert_eq!(small.degrees().iter().sum::<usize>(), direct.degrees().iter().sum::<usize>());
                let mut a = small.degrees();
                let mut b = direct.degrees();
                a.sort_unstable();
                b.sort_unstable();
                assert_eq!(a, b);

                let big = build(&FamilySpec::new(FamilyTag::L, n + 1, kk + 1)).unwrap();
                // vertex 0 is the K_1 hub
                assert_eq!(big.degree(0), n);
                let small = big.delete_vertex(0).unwrap();
                let direct = build(&FamilySpec::new(FamilyTag::Lbar, n, kk)).unwrap();
                assert_eq!(small, direct);
            }
        }
    }

    #[test]
    fn b_removes_lexicographically_first_block() {
        let (g, parts) = build_bipartite(4, 1).unwrap();
        assert!(parts.is_valid_for(&g));
        assert_eq!(g.neighbors(4), bit(3));
        assert_eq!(g.edge_count(), 4 * 3 + 1);
    }

    #[test]
    fn exceptional_member_counts() {
        assert_eq!(g1_members(5).len(), 1);
        assert_eq!(g1_members(7).len(), 4);
        assert_eq!(g1_members(8).len(), 2);
        assert_eq!(g1_members(9).len(), 4);
        assert_eq!(g1_members(11).len(), 2);
        assert_eq!(g1_members(20).len(), 1);
        assert_eq!(g2_members(4).len(), 1);
        assert_eq!(g2_members(6).len(), 4);
        assert_eq!(g2_members(10).len(), 2);
        assert_eq!(g2_members(12).len(), 1);
        let seven: Vec<usize> = g1_members(7).iter().map(Graph::edge_count).collect();
        assert_eq!(seven, vec![14, 15, 14, 14]);
        assert_eq!(original_traceability_exceptions(10).len(), 2);
        assert_eq!(original_traceability_exceptions(7).len(), 2);
    }

    #[test]
    fn exceptional_degrees_and_connectivity() {
        for n in 5..=12 {
            for g in g1_members(n) {
                assert!(g.min_degree() >= 2, "{:?}", g.label());
                assert!(g.is_connected());
                assert_eq!(g.order(), n);
            }
        }
        for n in 4..=12 {
            for g in g2_members(n) {
                assert!(g.min_degree() >= 1, "{:?}", g.label());
                assert!(g.is_connected());
                assert_eq!(g.order(), n);
            }
        }
    }

    #[test]
    fn parametric_g1_member_is_n2() {
        for n in 5..=15 {
            let a = build(&FamilySpec::exceptional(FamilyTag::G1, n, 0)).unwrap();
            let b = build(&FamilySpec::new(FamilyTag::N, n, 2)).unwrap();
            assert_eq!(a, b.with_label("x"));
        }
    }
}
