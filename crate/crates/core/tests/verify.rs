use hamindex::families::{build, build_bipartite, FamilySpec, FamilyTag};
use hamindex::iso::canonical_form;
use hamindex::verify::{
    audit_exceptional_sets, extremal_search, verify, verify_edge_lemma, verify_index_theorem, Branch, Claim,
    RunOptions, StrategyChoice, VerificationReport,
};

fn opts() -> RunOptions {
    RunOptions::default()
}

fn code(tag: FamilyTag, n: usize, k: usize) -> String {
    canonical_form(&build(&FamilySpec::new(tag, n, k)).unwrap()).to_graph6()
}

fn clean(r: &VerificationReport) {
    assert!(r.bookkeeping_holds(), "{r:?}");
    assert!(r.violations.is_empty(), "{r:?}");
}

#[test]
fn dense_hamiltonian_at_seven_finds_k3_join_4k1() {
    let r = verify_edge_lemma(Claim::DenseHamiltonian, 7, 2, &opts()).unwrap();
    clean(&r);
    let k3 = build(&FamilySpec::exceptional(FamilyTag::G1, 7, 1)).unwrap();
    assert!(r.exceptional_matches.contains(&canonical_form(&k3).to_graph6()));
}

#[test]
fn dense_traceable_at_six_finds_k24() {
    let r = verify_edge_lemma(Claim::DenseTraceable, 6, 1, &opts()).unwrap();
    clean(&r);
    let k24 = build(&FamilySpec::exceptional(FamilyTag::G2, 6, 3)).unwrap();
    assert!(r.exceptional_matches.contains(&canonical_form(&k24).to_graph6()));
}

#[test]
fn edge_hamiltonian_min_degree_at_eleven() {
    let r = verify_edge_lemma(Claim::EdgeHamiltonianMinDegree, 11, 1, &opts()).unwrap();
    clean(&r);
    assert_eq!(r.scope.budget, Some(15));
    assert!(r.interpretation_notes.iter().any(|n| n.contains("spanning subgraph")));
}

#[test]
fn index_hamiltonian_at_seven() {
    for r in verify(Claim::IndexHamiltonian, 7, 2, &opts()).unwrap() {
        clean(&r);
        assert!(!r.exceptional_matches.is_empty());
    }
}

#[test]
fn index_hamiltonian_min_degree_at_eleven() {
    let want = code(FamilyTag::N, 11, 1);
    for r in verify(Claim::IndexHamiltonianMinDegree, 11, 1, &opts()).unwrap() {
        clean(&r);
        assert_eq!(r.exceptional_matches, vec![want.clone()]);
    }
}

#[test]
fn bipartite_index_at_five() {
    let want = canonical_form(&build_bipartite(5, 1).unwrap().0).to_graph6();
    for r in verify(Claim::BipartiteIndexHamiltonian, 5, 1, &opts()).unwrap() {
        clean(&r);
        assert_eq!(r.scope.budget, Some(4));
        assert_eq!(r.exceptional_matches, vec![want.clone()]);
    }
}

#[test]
fn closure_reduction_agrees_with_complement_enumeration() {
    for (claim, n, k) in [
        (Claim::IndexTraceableMinDegree, 9, 1),
        (Claim::IndexTraceableMinDegree, 10, 1),
        (Claim::IndexHamiltonianMinDegree, 9, 1),
        (Claim::IndexHamiltonianMinDegree, 10, 2),
        (Claim::EdgeHamiltonianMinDegree, 9, 1),
    ] {
        let o = opts().exploratory();
        let full = verify(claim, n, k, &o.clone().strategy(StrategyChoice::Complement)).unwrap();
        let closed = verify(claim, n, k, &o.strategy(StrategyChoice::ClosureReduced)).unwrap();
        for (a, b) in full.iter().zip(&closed) {
            assert_eq!(a.violations.is_empty(), b.violations.is_empty(), "{claim} n={n}");
            assert_eq!(a.exceptional_matches.is_empty(), b.exceptional_matches.is_empty(), "{claim} n={n}");
            assert!(b.hypothesis_hits <= a.hypothesis_hits);
            assert_eq!(b.scope.strategy, "closure-reduced");
        }
    }
}

#[test]
fn closure_reduction_refuses_exception_lists() {
    let o = opts().strategy(StrategyChoice::ClosureReduced);
    assert!(verify_index_theorem(Claim::IndexTraceable, 7, 1, Branch::Wiener, &o).is_err());
}

#[test]
fn report_json_is_deterministic_across_jobs() {
    let a = verify(Claim::IndexTraceable, 8, 1, &opts().jobs(1)).unwrap();
    let b = verify(Claim::IndexTraceable, 8, 1, &opts().jobs(4)).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn checkpoints_resume_to_same_report() {
    let dir = std::env::temp_dir().join(format!("hamindex-ckpt-{}", std::process::id()));
    let mut o = opts();
    o.checkpoint_dir = Some(dir.clone());
    let a = verify(Claim::DenseTraceable, 8, 1, &o).unwrap();
    assert!(std::fs::read_dir(&dir).unwrap().count() > 0);
    let b = verify(Claim::DenseTraceable, 8, 1, &o).unwrap();
    assert_eq!(a, b);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn three_graph_lists_flag_k24() {
    let r = verify_index_theorem(Claim::WienerTraceable, 6, 1, Branch::Wiener, &opts()).unwrap();
    assert!(r.bookkeeping_holds());
    assert!(r.findings.iter().any(|f| f.contains("three-graph")));
}

#[test]
fn audit_members() {
    let a = audit_exceptional_sets(&opts()).unwrap();
    assert!(a.members_consistent(FamilyTag::G1));
    assert!(a.members_consistent(FamilyTag::G2));
    assert_eq!(a.items_covered(FamilyTag::G1), (0..9).collect::<Vec<_>>());
    assert!(a.bounds.iter().all(|b| b.agree));
    let nbar10 = a.bounds.iter().find(|b| b.n == 10).unwrap();
    assert_eq!(nbar10.wiener, 60);
    let k3 = a.members.iter().find(|r| r.set == FamilyTag::G1 && r.item == 1).unwrap();
    assert!(!k3.edge_equality);
}

#[test]
fn extremal_examples() {
    let p = "min-wiener/non-hamiltonian".parse().unwrap();
    let r = extremal_search(p, 7, 2, &opts()).unwrap();
    let reference = r.reference.unwrap();
    assert_eq!(reference.value.to_string(), "28");
    assert!(r.value.unwrap().to_string().parse::<u64>().unwrap() <= 28);
    let p = "min-wiener/bipartite-non-hamiltonian".parse().unwrap();
    let r = extremal_search(p, 3, 1, &opts()).unwrap();
    assert_eq!(r.reference.unwrap().value.to_string(), "25");
}
