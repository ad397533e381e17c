//! Distance-based invariants: all-pairs hop distances, diameter, the Wiener
//! index `W(G) = Σ d(u,v)` and the Harary index `H(G) = Σ 1/d(u,v)` over
//! unordered pairs, and the slack forms of the two identities that tie
//! them to the edge count.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{FamilySpec, FamilyTag};
use crate::graph::{bit, choose2, full_set, members, Bipartition, Graph};
use crate::rational::Rational;

pub const UNREACHABLE: u8 = u8::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u8>,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    /// `None` when `v` is unreachable from `u`.
    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        match self.d[u * self.n + v] {
            UNREACHABLE => None,
            d => Some(d as usize),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && !self.d.contains(&UNREACHABLE)
    }

    /// Largest finite distance.
    pub fn diameter(&self) -> usize {
        self.d.iter().filter(|&&d| d != UNREACHABLE).max().copied().unwrap_or(0) as usize
    }
}

pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.order();
    let mut d = vec![UNREACHABLE; n * n];
    for s in 0..n {
        let row = &mut d[s * n..(s + 1) * n];
        let mut seen = bit(s);
        let mut frontier = seen;
        let mut dist = 0u8;
        while frontier != 0 {
            for v in members(frontier) {
                row[v] = dist;
            }
            let mut next = 0;
            for v in members(frontier) {
                next |= g.neighbors(v);
            }
            next &= !seen;
            seen |= next;
            frontier = next;
            dist += 1;
        }
    }
    DistanceMatrix { n, d }
}

/// Number of unordered pairs at each distance; index 0 is unused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceProfile {
    pub n: usize,
    pub counts: Vec<u64>,
    pub unreachable_pairs: u64,
}

impl DistanceProfile {
    pub fn of(g: &Graph) -> DistanceProfile {
        let n = g.order();
        let all = full_set(n);
        let mut counts = vec![0u64; 2];
        let mut reached_total = 0u64;
        for s in 0..n {
            let mut seen = bit(s);
            let mut frontier = seen;
            let mut dist = 0;
            loop {
                let mut next = 0;
                for v in members(frontier) {
                    next |= g.neighbors(v);
                }
                next &= !seen;
                if next == 0 {
                    break;
                }
                dist += 1;
                seen |= next;
                frontier = next;
                // Count only pairs (s, v) with v > s.
                let c = (next & !full_set(s + 1)).count_ones() as u64;
                if counts.len() <= dist {
                    counts.resize(dist + 1, 0);
                }
                counts[dist] += c;
            }
            reached_total += (seen & all & !full_set(s + 1)).count_ones() as u64;
        }
        let unreachable_pairs = choose2(n) as u64 - reached_total;
        while counts.len() > 2 && counts[counts.len() - 1] == 0 {
            counts.pop();
        }
        DistanceProfile { n, counts, unreachable_pairs }
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.unreachable_pairs == 0
    }

    pub fn diameter(&self) -> usize {
        self.counts.iter().rposition(|&c| c > 0).unwrap_or(0)
    }

    pub fn edges(&self) -> u64 {
        self.counts[1]
    }

    pub fn wiener(&self) -> Result<u64> {
        if !self.is_connected() {
            return Err(Error::DisconnectedGraph);
        }
        Ok(self.counts.iter().enumerate().map(|(d, &c)| d as u64 * c).sum())
    }

    pub fn harary(&self) -> Result<Rational> {
        if !self.is_connected() {
            return Err(Error::DisconnectedGraph);
        }
        let diam = self.diameter().max(1);
        // lcm(1..=diam) fits in i128 for every diameter reachable at order <= 88;
        // beyond that fall back to summing rationals.
        if diam <= 80 {
            let l = (1..=diam as i128).fold(1i128, |acc, d| acc.lcm(&d));
            let num: i128 = self
                .counts
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, &c)| c as i128 * (l / d as i128))
                .sum();
            Ok(Rational::new(num, l))
        } else {
            Ok(self
                .counts
                .iter()
                .enumerate()
                .skip(1)
                .fold(Rational::zero(), |acc, (d, &c)| acc + Rational::new(c as i128, d as i128)))
        }
    }
}

pub fn wiener_index(g: &Graph) -> Result<u64> {
    DistanceProfile::of(g).wiener()
}

pub fn harary_index(g: &Graph) -> Result<Rational> {
    DistanceProfile::of(g).harary()
}

/// `slack_w = W + e − n(n−1)` and `slack_h = e − (2H − C(n,2))`; both are
/// zero exactly when the diameter is at most 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceBoundCheck {
    pub slack_w: u64,
    pub slack_h: Rational,
    pub diameter: usize,
}

pub fn check_distance_bounds(g: &Graph) -> Result<DistanceBoundCheck> {
    let profile = DistanceProfile::of(g);
    let w = profile.wiener()?;
    let h = profile.harary()?;
    let n = g.order() as u64;
    let e = profile.edges();
    let slack_w = (w + e)
        .checked_sub(n * (n - 1))
        .ok_or_else(|| Error::Invalid("W(G) + e(G) < n(n-1)".into()))?;
    let slack_h = Rational::from_integer((e + n * (n - 1) / 2) as i128) - Rational::from_integer(2) * h;
    Ok(DistanceBoundCheck { slack_w, slack_h, diameter: profile.diameter() })
}

/// Slacks of the two bipartite bounds for a balanced bipartite graph of
/// order `2n`:
/// `slack_w = W − [e + 3(n² − e) + 4·C(n,2)]`,
/// `slack_h = [e + (n² − e)/3 + C(n,2)] − H`.
/// `equality_condition` holds iff cross-part pairs are within distance 3
/// and distinct same-part pairs are at distance exactly 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteBoundCheck {
    pub slack_w: i64,
    pub slack_h: Rational,
    pub equality_condition: bool,
}

pub fn check_bipartite_distance_bounds(g: &Graph, parts: &Bipartition) -> Result<BipartiteBoundCheck> {
    if !parts.is_valid_for(g) {
        return Err(Error::NotBalancedBipartite("parts do not form a bipartition".into()));
    }
    if !parts.is_balanced() {
        return Err(Error::NotBalancedBipartite(format!(
            "part sizes {} and {}",
            parts.left_size(),
            parts.right_size()
        )));
    }
    let dm = all_pairs_distances(g);
    if !dm.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let profile = DistanceProfile::of(g);
    let w = profile.wiener()? as i64;
    let h = profile.harary()?;
    let half = parts.left_size() as i64;
    let e = g.edge_count() as i64;
    let missing = half * half - e;
    let same_pairs = 2 * (half * (half - 1) / 2);
    let slack_w = w - (e + 3 * missing + 2 * same_pairs);
    let h_bound = Rational::from_integer((e + half * (half - 1) / 2) as i128) + Rational::new(missing as i128, 3);
    let slack_h = h_bound - h;

    let n = g.order();
    let mut equality_condition = true;
    'outer: for u in 0..n {
        for v in u + 1..n {
            let same = (parts.left & bit(u) != 0) == (parts.left & bit(v) != 0);
            let d = dm.get(u, v).expect("connected");
            if (same && d != 2) || (!same && d > 3) {
                equality_condition = false;
                break 'outer;
            }
        }
    }
    Ok(BipartiteBoundCheck { slack_w, slack_h, equality_condition })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub e: u64,
    pub w: u64,
    pub h: Rational,
}

/// `e`, `W`, `H` of a family member from its edge formula alone.
/// Diameter-2 families use `W = n(n−1) − e`, `H = (e + C(n,2))/2`; the
/// bipartite family uses the bipartite equalities with half-order `n`:
/// `W = 5n² − 2n − 2e`, `H = e + (n² − e)/3 + C(n,2)`.
pub fn closed_form_wh(spec: &FamilySpec) -> Result<ClosedForm> {
    spec.validate()?;
    let e = spec.edge_count()?;
    let n = spec.n as u64;
    match spec.tag {
        FamilyTag::L | FamilyTag::N | FamilyTag::Nbar => {
            if spec.tag == FamilyTag::Nbar && spec.k == 0 {
                // K_{n-1} + K_1
                return Err(Error::UnsupportedFamily(format!("{spec} is disconnected")));
            }
            let pairs = n * (n - 1) / 2;
            Ok(ClosedForm { e, w: n * (n - 1) - e, h: Rational::new((e + pairs) as i128, 2) })
        }
        FamilyTag::B => {
            let missing = n * n - e;
            let w = 5 * n * n - 2 * n - 2 * e;
            let h = Rational::from_integer((e + n * (n - 1) / 2) as i128) + Rational::new(missing as i128, 3);
            Ok(ClosedForm { e, w, h })
        }
        FamilyTag::Lbar => Err(Error::UnsupportedFamily(format!("{spec} is disconnected"))),
        FamilyTag::G1 | FamilyTag::G2 => {
            Err(Error::UnsupportedFamily(format!("{spec}: compute exceptional members directly")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build;

    fn p4() -> Graph {
        Graph::path(4).unwrap()
    }

    fn spec(s: &str) -> FamilySpec {
        s.parse().unwrap()
    }

    /// Distances by Floyd–Warshall on the edge list.
    fn floyd(g: &Graph) -> Vec<Vec<Option<usize>>> {
        let n = g.order();
        let mut d = vec![vec![None; n]; n];
        for (u, row) in d.iter_mut().enumerate() {
            row[u] = Some(0);
        }
        for (u, v) in g.edges() {
            d[u][v] = Some(1);
            d[v][u] = Some(1);
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                        if d[i][j].is_none_or(|c| a + b < c) {
                            d[i][j] = Some(a + b);
                        }
                    }
                }
            }
        }
        d
    }

    #[test]
    fn distances_on_small_graphs() {
        let dm = all_pairs_distances(&p4());
        assert_eq!(dm.get(0, 3), Some(3));
        assert_eq!(dm.diameter(), 3);
        let k5 = Graph::complete(5).unwrap();
        let dm = all_pairs_distances(&k5);
        assert!((0..5).all(|u| (0..5).all(|v| dm.get(u, v) == Some(usize::from(u != v)))));
        let b13 = build(&spec("B:n=3,k=1")).unwrap();
        // deleted pairs are the first n-k left vertices against the first k right vertices
        let dm = all_pairs_distances(&b13);
        assert_eq!(dm.get(0, 3), Some(3));
        assert_eq!(dm.get(1, 3), Some(3));
        assert_eq!(dm.get(2, 3), Some(1));
    }

    #[test]
    fn distances_match_floyd_warshall() {
        for g in [Graph::petersen(), p4(), build(&spec("B:n=4,k=2")).unwrap(), Graph::cycle(9).unwrap()] {
            let dm = all_pairs_distances(&g);
            let fw = floyd(&g);
            for u in 0..g.order() {
                for v in 0..g.order() {
                    assert_eq!(dm.get(u, v), fw[u][v]);
                }
            }
        }
        let g = Graph::complete(3).unwrap().disjoint_union(&Graph::complete(2).unwrap()).unwrap();
        let dm = all_pairs_distances(&g);
        assert_eq!(dm.get(0, 4), None);
        assert!(!dm.is_connected());
    }

    #[test]
    fn wiener_values() {
        assert_eq!(wiener_index(&Graph::complete(5).unwrap()).unwrap(), 10);
        assert_eq!(wiener_index(&p4()).unwrap(), 10);
        assert_eq!(wiener_index(&build(&spec("N:n=9,k=2")).unwrap()).unwrap(), 47);
        assert_eq!(wiener_index(&Graph::petersen()).unwrap(), 75);
        let disconnected = Graph::empty(2).unwrap();
        assert_eq!(wiener_index(&disconnected), Err(Error::DisconnectedGraph));
        assert_eq!(wiener_index(&Graph::empty(1).unwrap()).unwrap(), 0);
    }

    #[test]
    fn harary_values() {
        assert_eq!(harary_index(&Graph::complete(5).unwrap()).unwrap(), Rational::new(10, 1));
        assert_eq!(harary_index(&p4()).unwrap(), Rational::new(13, 3));
        assert_eq!(harary_index(&build(&spec("N:n=9,k=2")).unwrap()).unwrap(), Rational::new(61, 2));
        assert_eq!(harary_index(&Graph::empty(3).unwrap()), Err(Error::DisconnectedGraph));
        // long path: denominators up to lcm(1..99)
        let p100 = Graph::path(100).unwrap();
        let expected = (1..100).fold(Rational::zero(), |acc, d| acc + Rational::new(100 - d, d));
        assert_eq!(harary_index(&p100).unwrap(), expected);
    }

    #[test]
    fn harary_float_sanity() {
        for g in [Graph::petersen(), Graph::path(30).unwrap(), build(&spec("B:n=5,k=2")).unwrap()] {
            let dm = all_pairs_distances(&g);
            let mut f = 0.0;
            for u in 0..g.order() {
                for v in u + 1..g.order() {
                    f += 1.0 / dm.get(u, v).unwrap() as f64;
                }
            }
            let exact = harary_index(&g).unwrap().to_f64();
            assert!((exact - f).abs() <= 1e-9 * f.abs());
        }
    }

    #[test]
    fn distance_bound_slacks() {
        let c = check_distance_bounds(&build(&spec("N:n=9,k=2")).unwrap()).unwrap();
        assert_eq!((c.slack_w, c.slack_h.is_zero(), c.diameter), (0, true, 2));
        let c = check_distance_bounds(&Graph::complete(6).unwrap()).unwrap();
        assert_eq!((c.slack_w, c.slack_h.is_zero()), (0, true));
        let c = check_distance_bounds(&p4()).unwrap();
        assert_eq!(c.slack_w, 1);
        // e − 2H + C(4,2) = 3 − 26/3 + 6
        assert_eq!(c.slack_h, Rational::new(1, 3));
        assert!(check_distance_bounds(&Graph::empty(3).unwrap()).is_err());
    }

    #[test]
    fn bipartite_bound_slacks() {
        let b = build(&spec("B:n=3,k=1")).unwrap();
        let parts = Bipartition { left: 0b000111, right: 0b111000 };
        let c = check_bipartite_distance_bounds(&b, &parts).unwrap();
        assert_eq!((c.slack_w, c.slack_h.is_zero(), c.equality_condition), (0, true, true));
        assert_eq!(wiener_index(&b).unwrap(), 25);
        assert_eq!(harary_index(&b).unwrap(), Rational::new(32, 3));

        let (k44, parts) = Graph::complete_bipartite(4, 4).unwrap();
        let c = check_bipartite_distance_bounds(&k44, &parts).unwrap();
        assert_eq!((c.slack_w, c.equality_condition), (0, true));

        let c8 = Graph::cycle(8).unwrap();
        let parts = c8.bipartition().unwrap();
        let c = check_bipartite_distance_bounds(&c8, &parts).unwrap();
        assert!(c.slack_w > 0 && c.slack_h > 0 && !c.equality_condition);

        let (k24, parts) = Graph::complete_bipartite(2, 4).unwrap();
        assert!(matches!(check_bipartite_distance_bounds(&k24, &parts), Err(Error::NotBalancedBipartite(_))));
        let c6 = Graph::cycle(6).unwrap();
        let wrong = Bipartition { left: 0b000111, right: 0b111000 };
        assert!(matches!(check_bipartite_distance_bounds(&c6, &wrong), Err(Error::NotBalancedBipartite(_))));
        let two_k2 = Graph::from_edges(4, &[(0, 2), (1, 3)]).unwrap();
        let parts = Bipartition { left: 0b0011, right: 0b1100 };
        assert_eq!(check_bipartite_distance_bounds(&two_k2, &parts), Err(Error::DisconnectedGraph));
    }

    #[test]
    fn closed_forms() {
        let cf = closed_form_wh(&spec("Nbar:n=10,k=1")).unwrap();
        assert_eq!((cf.e, cf.w, cf.h.clone()), (30, 60, Rational::new(75, 2)));
        let cf = closed_form_wh(&spec("N:n=9,k=2")).unwrap();
        assert_eq!((cf.e, cf.w, cf.h.clone()), (25, 47, Rational::new(61, 2)));
        let cf = closed_form_wh(&spec("B:n=3,k=1")).unwrap();
        assert_eq!((cf.e, cf.w, cf.h.clone()), (7, 25, Rational::new(32, 3)));
        assert!(matches!(closed_form_wh(&spec("G1:n=7,i=1")), Err(Error::UnsupportedFamily(_))));
        assert!(matches!(closed_form_wh(&spec("Lbar:n=10,k=1")), Err(Error::UnsupportedFamily(_))));
        assert!(matches!(closed_form_wh(&spec("Nbar:n=10,k=0")), Err(Error::UnsupportedFamily(_))));
    }

    #[test]
    fn profile_counts_pairs_once() {
        let p = DistanceProfile::of(&Graph::petersen());
        assert_eq!(p.counts, vec![0, 15, 30]);
        assert_eq!(p.diameter(), 2);
        let g = Graph::complete(3).unwrap().disjoint_union(&Graph::complete(2).unwrap()).unwrap();
        let p = DistanceProfile::of(&g);
        assert_eq!(p.unreachable_pairs, 6);
    }
}
