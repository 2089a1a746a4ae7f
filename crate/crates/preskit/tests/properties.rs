mod common;

use proptest::prelude::*;

use preskit::catalog::Catalog;
use preskit::compactify::compactify_record;
use preskit::contfrac::{hj_dual_chain, hj_eval, HjValue};
use preskit::curvegraph::{DecoratedGraph, Marker};
use preskit::mmp::run_mmp;
use preskit::singularity::{class_t_params, discrepancies};

fn marker() -> impl Strategy<Value = Marker> {
    prop_oneof![
        Just(Marker::Kept),
        Just(Marker::Contracted),
        Just(Marker::Boundary),
        Just(Marker::Tracker)
    ]
}

prop_compose! {
    fn graph()(ws in prop::collection::vec((-6i64..=2, marker()), 1..8))
        (edges in prop::collection::vec((0..ws.len(), 0..ws.len(), 1u32..=2), 0..10), ws in Just(ws))
        -> DecoratedGraph {
        let mut g = DecoratedGraph::new();
        for (i, (w, m)) in ws.iter().enumerate() {
            g.add_curve(&format!("v{i}"), *w, *m).unwrap();
        }
        for (a, b, m) in edges {
            if a != b && g.mult(&format!("v{a}"), &format!("v{b}")) == 0 {
                g.add_edge(&format!("v{a}"), &format!("v{b}"), m).unwrap();
            }
        }
        g
    }
}

fn chain() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(2i64..=7, 1..7)
}

proptest! {
    #[test]
    fn dual_chain_is_an_involution(c in chain()) {
        let d = hj_dual_chain(&c).unwrap();
        prop_assert_eq!(hj_dual_chain(&d).unwrap(), c.clone());
        let (HjValue::Finite(a), HjValue::Finite(b)) = (hj_eval(&c).unwrap(), hj_eval(&d).unwrap()) else {
            panic!("proper chains have finite value")
        };
        prop_assert_eq!(a.numer(), b.numer());
        prop_assert_eq!(a.denom() + b.denom(), a.numer().clone());
    }

    #[test]
    fn class_t_rules_preserve_d(c in chain()) {
        if let Some(t) = class_t_params(&c).unwrap() {
            let mut l = vec![2];
            l.extend(&c);
            *l.last_mut().unwrap() += 1;
            let mut r = c.clone();
            r[0] += 1;
            r.push(2);
            for x in [l, r] {
                prop_assert_eq!(class_t_params(&x).unwrap().map(|s| s.d), Some(t.d));
            }
        }
    }

    #[test]
    fn discrepancies_lie_in_open_interval(c in chain()) {
        prop_assume!(c.iter().any(|&b| b > 2));
        for a in discrepancies(&c).unwrap() {
            prop_assert!(a < num_rational::BigRational::from_integer(0.into()));
            prop_assert!(a > num_rational::BigRational::from_integer((-1).into()));
        }
    }

    #[test]
    fn blow_up_then_down_is_identity(g in graph(), pick in any::<prop::sample::Index>()) {
        let ids: Vec<String> = g.ids().map(str::to_string).collect();
        let v = &ids[pick.index(ids.len())];
        let up = g.blow_up_point(v, "new").unwrap();
        prop_assert_eq!(up.curve("new").unwrap().self_int, -1);
        prop_assert_eq!(up.blow_down("new").unwrap().0, g.clone());
        for (a, b, _) in g.edges() {
            let up = g.blow_up_edge(a, b, "new").unwrap();
            prop_assert_eq!(up.mult(a, b), g.mult(a, b) - 1);
            prop_assert_eq!(up.blow_down("new").unwrap().0, g.clone());
        }
    }

    #[test]
    fn undo_restores_blow_down(g in graph()) {
        for v in g.ids().filter(|v| g.w(v) == -1) {
            let mut h = g.clone();
            let e = h.blow_down_any(v).unwrap();
            prop_assert_eq!(h.len() + 1, g.len());
            h.undo_blow_down(&e);
            prop_assert_eq!(&h, &g);
        }
    }

    #[test]
    fn isomorphism_ignores_names(g in graph(), shift in 1usize..5) {
        let n = g.len();
        let mut h = DecoratedGraph::new();
        let name = |v: &str| format!("u{}", (v[1..].parse::<usize>().unwrap() + shift) % n);
        for (v, c) in g.curves() {
            h.add_curve(&name(v), c.self_int, c.marker).unwrap();
        }
        for (a, b, m) in g.edges() {
            h.add_edge(&name(a), &name(b), m).unwrap();
        }
        prop_assert!(g.is_isomorphic(&h));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mmp_terminates_consistently(k in 0usize..292) {
        let cat = Catalog::builtin();
        let cases = common::catalog_cases(&cat);
        let (name, rec) = &cases[k % cases.len()];
        let c = compactify_record(rec).unwrap();
        let (st, data) = run_mmp(&c).unwrap();
        let z = st.general_fiber().unwrap();
        prop_assert!(st.contractible().is_empty(), "{}", name);
        for ((a, b), x) in &st.initial_gen {
            prop_assert_eq!(z.graph.dot(a, b), *x, "{} {}.{}", name, a, b);
        }
        prop_assert_eq!(st.central_k2.len(), st.moves.len() + 1);
        prop_assert!(z.k2 <= 9, "{}", name);
        prop_assert!(st.flip_sites().is_empty(), "{}", name);
        prop_assert_eq!(data.trackers.len(), st.contractions.iter().filter(|r| r.is_tracker()).count());
    }
}
