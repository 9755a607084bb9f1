use proptest::prelude::*;
use rtl_core::canon::canonical_form;
use rtl_core::containment::{as_double_star, contains_double_star, contains_tree, embed_tree};
use rtl_core::graph::Graph;
use rtl_core::graph6;
use rtl_core::ramsey::{frobenius_all, frobenius_guaranteed, lower_bound_23, ramsey_eval, Outcome};
use rtl_core::trees::{alpha2, Family, TreeSpec};
use rtl_core::turan::{ex_eval, ExtremalKind};

fn graph(max: usize) -> impl Strategy<Value = Graph> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for j in 0..n {
                for i in 0..j {
                    if bits[k] {
                        g.add_edge(i, j);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn named(max: usize) -> impl Strategy<Value = TreeSpec> {
    (0..Family::SINGLE.len(), 0..max).prop_map(move |(f, n)| {
        let family = Family::SINGLE[f];
        TreeSpec::named(family, family.min_order().max(n)).unwrap()
    })
}

fn spec(max: usize) -> impl Strategy<Value = TreeSpec> {
    prop_oneof![
        4 => named(max),
        1 => (1..max / 2, 1..max / 2).prop_map(|(a, b)| TreeSpec::dstar(a.max(b), a.min(b))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn complement_is_an_involution(g in graph(14)) {
        let c = g.complement();
        prop_assert_eq!(c.edge_count() + g.edge_count(), g.order() * (g.order() - 1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn degree_sum_is_twice_edges(g in graph(14)) {
        let d = g.degrees().unwrap();
        prop_assert_eq!(d.sequence.iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn graph6_round_trip(g in graph(70)) {
        prop_assert_eq!(graph6::decode(&graph6::encode(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph(12), seed in any::<u64>()) {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(canonical_form(&g.relabel(&perm)), canonical_form(&g));
    }

    #[test]
    fn named_trees_are_trees(t in spec(40)) {
        let g = t.build().unwrap();
        prop_assert!(g.is_tree());
        prop_assert_eq!(g.order(), t.order());
        prop_assert_eq!(g.max_degree(), t.max_degree().unwrap());
        let a = alpha2(&g).unwrap();
        prop_assert!(2 * a >= g.order() && a < g.order().max(2));
    }

    #[test]
    fn extremal_values_fit_in_complete_graph(t in named(30), extra in 0u64..40) {
        let p = t.order() as u64 + extra;
        let v = ex_eval(&t, p).unwrap();
        if v.kind != ExtremalKind::OutOfDomain {
            prop_assert!(v.value <= p * (p - 1) / 2);
            prop_assert!(!v.citation.is_empty());
        }
    }

    #[test]
    fn ramsey_lookup_is_symmetric(a in spec(40), b in spec(40)) {
        let x = ramsey_eval(&a, &b).unwrap();
        let y = ramsey_eval(&b, &a).unwrap();
        prop_assert_eq!(x.outcome, y.outcome);
        prop_assert_eq!(x.citations, y.citations);
        prop_assert_eq!(x.conditions, y.conditions);
    }

    #[test]
    fn degree_bound_never_exceeds_table(a in spec(40), b in spec(40)) {
        let r = ramsey_eval(&a, &b).unwrap();
        if let (Outcome::Exact { value }, Some(lb)) = (r.outcome, lower_bound_23(&a, &b).unwrap()) {
            prop_assert!(lb.value <= value, "{} vs {}: bound {} ({}) > {}", a, b, lb.value, lb.case, value);
        }
    }

    #[test]
    fn frobenius_solutions_are_exact(a in 1u64..30, b in 1u64..30, target in 0u64..600) {
        let all = frobenius_all(a, b, target);
        for &(x, y) in &all {
            prop_assert_eq!(a * x + b * y, target);
        }
        if frobenius_guaranteed(a, b, target) {
            prop_assert!(!all.is_empty());
        }
    }

    #[test]
    fn embeddings_are_valid(host in graph(9), t in spec(7)) {
        let tg = t.build().unwrap();
        if let Some(e) = embed_tree(&host, &tg).unwrap() {
            prop_assert!(e.is_valid(&host, &tg));
        }
    }

    #[test]
    fn double_star_decider_agrees_with_embedder(host in graph(10), n1 in 1usize..5, n2 in 1usize..5) {
        let (n1, n2) = (n1.max(n2), n1.min(n2));
        let t = TreeSpec::dstar(n1, n2).build().unwrap();
        prop_assert_eq!(as_double_star(&t), Some((n1, n2)));
        prop_assert_eq!(contains_double_star(&host, n1, n2), contains_tree(&host, &t).unwrap());
    }
}
