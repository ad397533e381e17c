use super::claims::plan_budget;
use super::*;

#[test]
fn thresholds_match_examples() {
    assert_eq!(edge_threshold(Claim::DenseHamiltonian, 7, 2, false).unwrap(), Threshold { bound: 14, strict: false });
    assert_eq!(edge_threshold(Claim::EdgeHamiltonianMinDegree, 11, 1, false).unwrap(), Threshold { bound: 40, strict: true });
    assert_eq!(edge_threshold(Claim::BipartiteEdgeHamiltonian, 5, 1, false).unwrap(), Threshold { bound: 19, strict: true });
    assert_eq!(edge_threshold(Claim::MinDegreeEdge, 7, 1, false).unwrap().bound, 16);
    assert_eq!(edge_threshold(Claim::EdgeTraceableMinDegree, 10, 0, false).unwrap().bound, 30);
}

#[test]
fn out_of_range_needs_exploratory() {
    let e = edge_threshold(Claim::EdgeHamiltonianMinDegree, 10, 1, false).unwrap_err();
    assert!(matches!(e, Error::ParameterOutOfStatedRange { .. }));
    assert!(edge_threshold(Claim::EdgeHamiltonianMinDegree, 10, 1, true).is_ok());
    assert!(edge_threshold(Claim::IndexHamiltonian, 7, 2, true).is_err());
}

#[test]
fn threshold_min_edges() {
    let t = Threshold { bound: 40, strict: true };
    assert_eq!(t.min_edges(), 41);
    assert!(!t.holds(40));
    assert!(Threshold { bound: 14, strict: false }.holds(14));
}

#[test]
fn claim_slugs_round_trip() {
    for c in Claim::ALL {
        assert_eq!(c.slug().parse::<Claim>().unwrap(), c);
        assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.slug()));
    }
    assert!("Thm4.3".parse::<Claim>().is_err());
}

#[test]
fn index_budgets() {
    use Branch::*;
    // W(N^1_11) = 110 - 46 = 64, budget 64 - 55 = 9.
    assert_eq!(plan_budget(Claim::IndexHamiltonianMinDegree, 11, 1, Some(Wiener)).unwrap(), 9);
    assert_eq!(plan_budget(Claim::IndexHamiltonianMinDegree, 11, 1, Some(Harary)).unwrap(), 9);
    // e(Nbar^1_16) = 93, C(16,2) = 120.
    assert_eq!(plan_budget(Claim::IndexTraceableMinDegree, 16, 1, Some(Wiener)).unwrap(), 27);
    // B^1_5 misses k(n-k) = 4 edges.
    assert_eq!(plan_budget(Claim::BipartiteIndexHamiltonian, 5, 1, Some(Wiener)).unwrap(), 4);
    assert_eq!(plan_budget(Claim::BipartiteIndexHamiltonian, 5, 1, Some(Harary)).unwrap(), 4);
    assert_eq!(plan_budget(Claim::EdgeHamiltonianMinDegree, 11, 1, None).unwrap(), 15);
    assert_eq!(plan_budget(Claim::DenseHamiltonian, 9, 2, None).unwrap(), 11);
}

#[test]
fn estimate_is_an_upper_bound_on_small_counts() {
    assert!(estimate_classes(9, 36) >= 274668.0);
    assert!(estimate_classes(11, 9) < 3000.0);
    assert!(estimate_classes(16, 27).is_infinite());
}
