use proptest::collection::vec;
use proptest::prelude::*;
use twocnf::dimacs::{emit_dimacs, parse_dimacs};
use twocnf::edgelist::{emit_edge_list, parse_edge_list};
use twocnf_core::formula::Cnf2;
use twocnf_core::graph::{Edge, SimpleGraph};
use twocnf_core::simplify::to_simple;

fn literal() -> impl Strategy<Value = i64> {
    (1..=9i64, any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v })
}

proptest! {
    #[test]
    fn dimacs_round_trips(clauses in vec(vec(literal(), 0..=2), 0..=15)) {
        let s = Cnf2::from_dimacs_clauses(&clauses).unwrap();
        let text = emit_dimacs(&s, 9, &["generated".into()]);
        prop_assert_eq!(parse_dimacs(&text).unwrap().cnf, s.clone());
        let reduced = emit_dimacs(&to_simple(&s).simplified(), 9, &[]);
        prop_assert_eq!(parse_dimacs(&reduced).unwrap().cnf, to_simple(&s).simplified());
    }

    #[test]
    fn multi_line_clauses_parse_the_same(clauses in vec(vec(literal(), 1..=2), 1..=10)) {
        let mut one = format!("p cnf 9 {}\n", clauses.len());
        let mut spread = one.clone();
        for c in &clauses {
            for l in c {
                one.push_str(&format!("{l} "));
                spread.push_str(&format!("{l}\n"));
            }
            one.push_str("0\n");
            spread.push_str("0\n");
        }
        prop_assert_eq!(parse_dimacs(&one).unwrap(), parse_dimacs(&spread).unwrap());
    }

    #[test]
    fn edge_lists_round_trip(pairs in vec((1..=12u32, 1..=12u32), 0..=20), lone in proptest::option::of(13..=20u32)) {
        let mut g = SimpleGraph::from_edges(pairs.iter().filter(|&&(a, b)| a != b).map(|&(a, b)| Edge::of(a, b)));
        if let Some(v) = lone {
            g.add_vertex(twocnf_core::formula::Var::new(v).unwrap());
        }
        prop_assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn parsers_never_panic(text in "[ -~\n]{0,200}") {
        let _ = parse_dimacs(&text);
        let _ = parse_edge_list(&text);
    }
}
