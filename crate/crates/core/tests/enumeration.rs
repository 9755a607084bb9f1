use std::collections::HashSet;

use rtl_core::canon::canonical_code;
use rtl_core::graph::Graph;
use rtl_core::graph6;
use rtl_core::oracle::{enum_graphs, enum_trees};
use rtl_core::trees::tree_code;

/// Every labelled graph on `n` vertices, deduplicated by canonical code.
fn naive_classes(n: usize) -> HashSet<Vec<u8>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e);
            canonical_code(&Graph::from_edges(n, edges).unwrap())
        })
        .collect()
}

/// Labelled trees from all Prüfer sequences, deduplicated by tree code.
fn prufer_classes(n: usize) -> HashSet<String> {
    let mut out = HashSet::new();
    let len = n - 2;
    let total = n.pow(len as u32);
    for mut code in 0..total {
        let mut seq = Vec::with_capacity(len);
        for _ in 0..len {
            seq.push(code % n);
            code /= n;
        }
        let mut degree = vec![1; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::new();
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, s));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.insert(tree_code(&Graph::from_edges(n, edges).unwrap()).unwrap());
    }
    out
}

#[test]
fn graph_counts_match_known_sequence() {
    let expected = [1, 2, 4, 11, 34, 156, 1044, 12346];
    for (p, &count) in (1..=8).zip(expected.iter()) {
        assert_eq!(enum_graphs(p, 10).unwrap().0.len(), count, "order {p}");
    }
}

#[test]
fn enumeration_matches_naive_dedup() {
    for p in 1..=6 {
        let (graphs, _) = enum_graphs(p, 10).unwrap();
        let fast: HashSet<Vec<u8>> = graphs.iter().map(canonical_code).collect();
        assert_eq!(fast.len(), graphs.len(), "duplicate class at order {p}");
        assert_eq!(fast, naive_classes(p), "order {p}");
    }
}

#[test]
fn tree_counts_match_prufer() {
    let expected = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];
    for (n, &count) in (1..=10).zip(expected.iter()) {
        let trees = enum_trees(n, 10).unwrap();
        assert_eq!(trees.len(), count, "order {n}");
        if (3..=8).contains(&n) {
            let codes: HashSet<String> = trees.iter().map(|t| tree_code(t).unwrap()).collect();
            assert_eq!(codes, prufer_classes(n), "order {n}");
        }
    }
}

#[test]
fn graph6_round_trip_on_enumerated_graphs() {
    for p in 1..=8 {
        for g in enum_graphs(p, 10).unwrap().0.iter() {
            assert_eq!(&graph6::decode(&graph6::encode(g)).unwrap(), g);
        }
    }
}
