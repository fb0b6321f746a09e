use twocnf_core::enumerate::corpus::trees;
use twocnf_core::enumerate::{census, is_in_u_bruteforce, minimality_check, EnumerateError};
use twocnf_core::fixtures::{cycle, fixture, hills};
use twocnf_core::formula::Cnf2;
use twocnf_core::graph::{Edge, SimpleGraph};
use twocnf_core::minors::{decide_membership, pattern_graph, NotInUReason, PatternId, Verdict};
use twocnf_core::sat::is_satisfiable;
use twocnf_core::simplify::{to_simple, SimplifyResult};
use twocnf_core::witness::{base_formula, synthesize_witness};

#[test]
fn small_censuses() {
    let c3 = census(&fixture("c3").unwrap(), 10).unwrap();
    assert_eq!((c3.total, c3.sat_count, c3.unsat_count), (64, 64, 0));
    let k4e = census(&fixture("k4-e").unwrap(), 10).unwrap();
    assert_eq!((k4e.total, k4e.sat_count, k4e.unsat_count), (1024, 1024, 0));
    let butterfly = census(&fixture("butterfly").unwrap(), 10).unwrap();
    assert_eq!(butterfly.total, 4096);
    assert!(butterfly.unsat_count >= 1);
    assert!(!is_satisfiable(butterfly.example_unsat.as_ref().unwrap()));
    assert_eq!(
        census(&fixture("butterfly").unwrap(), 5),
        Err(EnumerateError::TooManyEdges { edges: 6, cap: 5 })
    );
}

#[test]
fn minimal_graphs_carry_unsatisfiable_formulas() {
    for p in PatternId::ALL {
        assert!(!is_satisfiable(&base_formula(p).cnf), "{p}");
        assert!(is_in_u_bruteforce(&pattern_graph(p), 10).unwrap(), "{p}");
    }
    assert!(minimality_check(&fixture("butterfly").unwrap(), 10).unwrap());
    assert!(minimality_check(&fixture("bowtie").unwrap(), 10).unwrap());
    let mut pendant = fixture("butterfly").unwrap();
    pendant.add_edge(Edge::of(5, 6));
    assert!(!minimality_check(&pendant, 10).unwrap());
}

#[test]
fn trees_and_cycles_are_satisfiable() {
    for t in trees(7) {
        assert!(!is_in_u_bruteforce(&t, 10).unwrap(), "{t:?}");
        assert_eq!(decide_membership(&t), Verdict::NotInU(NotInUReason::Forest));
    }
    for k in 3..=9 {
        assert_eq!(decide_membership(&cycle(k)), Verdict::NotInU(NotInUReason::UnicyclicComponents), "C{k}");
    }
    assert!(!is_in_u_bruteforce(&cycle(6), 10).unwrap());
}

#[test]
fn hills_are_members() {
    assert_eq!(decide_membership(&hills(1)), Verdict::NotInU(NotInUReason::UnicyclicComponents));
    for n in 2..=8 {
        let g = hills(n);
        assert!(decide_membership(&g).is_in_u(), "hills:{n}");
        let w = synthesize_witness(&g).unwrap().unwrap();
        assert!(!is_satisfiable(&w));
    }
}

#[test]
fn contraction_converse_fails() {
    let g = fixture("square-butterfly").unwrap();
    assert_eq!(decide_membership(&g), Verdict::NotInU(NotInUReason::ThetaCore));
    assert!(!is_in_u_bruteforce(&g, 10).unwrap());
    let (h, _) = g.contract_edge(Edge::of(3, 4)).unwrap();
    assert!(decide_membership(&h).is_in_u());
    assert!(is_in_u_bruteforce(&h, 10).unwrap());
}

#[test]
fn full_pair_is_unsatisfiable() {
    let s = Cnf2::from_dimacs_clauses(&[[1, 2], [1, -2], [-1, 2], [-1, -2]]).unwrap();
    assert_eq!(to_simple(&s).result, SimplifyResult::Unsatisfiable);
    let s = Cnf2::from_dimacs_clauses(&[&[1][..], &[-1, 2]]).unwrap();
    let out = to_simple(&s);
    assert_eq!(out.result, SimplifyResult::TriviallyTrue);
    assert_eq!(out.trace.len(), 2);
}

#[test]
fn disconnected_members() {
    let mut g = fixture("k4").unwrap();
    for (a, b) in [(10, 11), (11, 12)] {
        g.add_edge(Edge::of(a, b));
    }
    assert!(decide_membership(&g).is_in_u());
    assert!(decide_membership(&SimpleGraph::new()) == Verdict::NotInU(NotInUReason::Forest));
}
