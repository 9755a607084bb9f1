//! Lower-bound colourings: a graph `G` on `p` vertices such that `G` has no
//! copy of the red tree and its complement has no copy of the blue tree,
//! which proves `r(red, blue) > p`.

use serde::{Serialize, Serializer};

use crate::containment::contains_fast;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::ramsey::frobenius_all;
use crate::trees::TreeSpec;

/// Default search-node budget per containment check inside the catalog.
pub const CATALOG_BUDGET: u64 = 2_000_000;

/// Circulant `k`-regular graph on `p` vertices: `i ~ i±1, ..., i±⌊k/2⌋`, plus
/// the antipode `i + p/2` when `k` is odd.
pub fn regular_graph(p: usize, k: usize) -> Result<Graph> {
    if p < k + 1 {
        return Err(Error::NoRegularGraph(format!("order {p} is too small for degree {k}")));
    }
    if (k * p) % 2 == 1 {
        return Err(Error::NoRegularGraph(format!(
            "a {k}-regular graph of order {p} needs k*p even"
        )));
    }
    let mut g = Graph::empty(p);
    for i in 0..p {
        for d in 1..=k / 2 {
            g.add_edge(i, (i + d) % p);
        }
        if k % 2 == 1 {
            g.add_edge(i, (i + p / 2) % p);
        }
    }
    debug_assert!((0..p).all(|v| g.degree(v) == k));
    Ok(g)
}

/// `k K_m`.
pub fn clique_union(k: usize, m: usize) -> Graph {
    Graph::disjoint_union(&vec![Graph::complete(m); k])
}

/// `x K_{m1} ∪ y K_{m2}`.
pub fn two_clique_union(x: usize, m1: usize, y: usize, m2: usize) -> Graph {
    let mut parts = vec![Graph::complete(m1); x];
    parts.extend(vec![Graph::complete(m2); y]);
    Graph::disjoint_union(&parts)
}

/// The order-`2n-9` graph with three vertices of degree `n-4` and all others
/// of degree `n-5` that avoids `T3_n = S(n-5, 3)`.
///
/// Vertices are `v0..v_{n-4}` (indices `0..=n-4`) followed by
/// `u1..u_{n-6}`.
pub fn g0_graph(n: usize) -> Result<Graph> {
    if n % 2 == 1 || n < 16 {
        return Err(Error::Construction(format!("G0 needs even n >= 16, got {n}")));
    }
    let v = |i: usize| i;
    let u = |j: usize| n - 4 + j;
    let mut g = Graph::empty(2 * n - 9);
    let h = regular_graph(n - 6, n - 10)?;
    for (a, b) in h.edges() {
        g.add_edge(v(a + 1), v(b + 1));
    }
    for i in 1..=n - 4 {
        g.add_edge(v(0), v(i));
    }
    for i in 1..=n - 6 {
        g.add_edge(v(i), v(n - 5));
    }
    for i in 1..=n - 5 {
        g.add_edge(v(i), v(n - 4));
    }
    for t in 1..=(n - 6) / 2 {
        for a in [2 * t - 1, 2 * t] {
            for b in [2 * t - 1, 2 * t] {
                g.add_edge(v(a), u(b));
            }
        }
    }
    for a in 1..=n - 6 {
        for b in a + 1..=n - 6 {
            g.add_edge(u(a), u(b));
        }
    }
    let high = [v(0), v(n - 5), v(n - 4)];
    for x in 0..g.order() {
        let want = if high.contains(&x) { n - 4 } else { n - 5 };
        if g.degree(x) != want {
            return Err(Error::Construction(format!("G0 degree check failed at vertex {x}")));
        }
    }
    let labels = (0..=n - 4)
        .map(|i| format!("v{i}"))
        .chain((1..=n - 6).map(|j| format!("u{j}")))
        .collect();
    Ok(g.with_labels(labels))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionId {
    RegularSplit,
    CliqueUnion,
    TwoCliqueUnion,
    G0,
    BipartiteComplement,
}

fn as_graph6<S: Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&graph6::encode(g))
}

/// Both containment verdicts; a witness needs both `false`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WitnessChecks {
    pub red_contains: bool,
    pub blue_contains: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifiedWitness {
    #[serde(rename = "graph6", serialize_with = "as_graph6")]
    pub graph: Graph,
    pub order: usize,
    pub construction: ConstructionId,
    /// The catalog graph is used as the blue colour class.
    pub complemented: bool,
    pub description: String,
    pub avoided_red: TreeSpec,
    pub avoided_blue: TreeSpec,
    pub red_max_degree: usize,
    pub blue_max_degree: usize,
    pub checks: WitnessChecks,
}

impl VerifiedWitness {
    /// Re-runs both containment checks from scratch.
    pub fn reverify(&self) -> Result<bool> {
        let red = contains_fast(&self.graph, &self.avoided_red.build()?, None)?;
        let blue = contains_fast(&self.graph.complement(), &self.avoided_blue.build()?, None)?;
        Ok(!red && !blue)
    }
}

/// Checks `g` as a red colour class against `red` and its complement against
/// `blue`. `Ok(None)` when either tree is present (or the budget ran out).
pub fn verify_coloring(
    g: &Graph,
    red: &TreeSpec,
    blue: &TreeSpec,
    budget: Option<u64>,
) -> Result<Option<WitnessChecks>> {
    let verdict = |host: &Graph, t: &TreeSpec| match contains_fast(host, &t.build()?, budget) {
        Ok(c) => Ok(Some(c)),
        Err(Error::BudgetExhausted { .. }) => Ok(None),
        Err(e) => Err(e),
    };
    let Some(false) = verdict(g, red)? else {
        return Ok(None);
    };
    let Some(false) = verdict(&g.complement(), blue)? else {
        return Ok(None);
    };
    Ok(Some(WitnessChecks {
        red_contains: false,
        blue_contains: false,
    }))
}

struct Candidate {
    graph: Graph,
    id: ConstructionId,
    description: String,
}

fn catalog(a: &TreeSpec, b: &TreeSpec, p: usize) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    for s in (1..=p).rev().filter(|s| p % s == 0) {
        out.push(Candidate {
            graph: clique_union(p / s, s),
            id: ConstructionId::CliqueUnion,
            description: format!("{}K_{s}", p / s),
        });
    }
    for big in (p.div_ceil(2)..p).rev() {
        let small = p - big;
        if big == small + 1 || big == small {
            continue;
        }
        out.push(Candidate {
            graph: two_clique_union(1, big, 1, small),
            id: ConstructionId::BipartiteComplement,
            description: format!("K_{big} + K_{small}"),
        });
    }
    for s in (3..=p).rev() {
        for (x, y) in frobenius_all(s as u64, s as u64 - 1, p as u64) {
            if x == 0 || y == 0 {
                continue;
            }
            out.push(Candidate {
                graph: two_clique_union(x as usize, s, y as usize, s - 1),
                id: ConstructionId::TwoCliqueUnion,
                description: format!("{x}K_{s} + {y}K_{}", s - 1),
            });
        }
    }
    let (da, db) = (a.max_degree()?, b.max_degree()?);
    let mut ks: Vec<usize> = Vec::new();
    let lo = p.saturating_sub(db);
    for k in lo..da.min(p) {
        ks.push(k);
    }
    for k in [da, da + 1, lo.wrapping_sub(1), lo.wrapping_sub(2)] {
        if k < p && !ks.contains(&k) {
            ks.push(k);
        }
    }
    for k in ks {
        if let Ok(g) = regular_graph(p, k) {
            out.push(Candidate {
                graph: g,
                id: ConstructionId::RegularSplit,
                description: format!("{k}-regular circulant"),
            });
        }
    }
    if p % 2 == 1 && (p + 9) / 2 % 2 == 0 && (p + 9) / 2 >= 16 {
        let n = (p + 9) / 2;
        out.push(Candidate {
            graph: g0_graph(n)?,
            id: ConstructionId::G0,
            description: format!("G0 for n={n}"),
        });
    }
    Ok(out)
}

/// First catalog colouring of `K_p` avoiding red `a` and blue `b`.
///
/// `None` means the catalog is exhausted, not that no colouring exists.
pub fn lower_witness(a: &TreeSpec, b: &TreeSpec, p: usize) -> Result<Option<VerifiedWitness>> {
    lower_witness_budget(a, b, p, Some(CATALOG_BUDGET))
}

pub fn lower_witness_budget(
    a: &TreeSpec,
    b: &TreeSpec,
    p: usize,
    budget: Option<u64>,
) -> Result<Option<VerifiedWitness>> {
    a.validate()?;
    b.validate()?;
    if p == 0 {
        return Err(Error::Construction("witness order must be at least 1".into()));
    }
    for c in catalog(a, b, p)? {
        for complemented in [false, true] {
            let red = if complemented { c.graph.complement() } else { c.graph.clone() };
            if let Some(checks) = verify_coloring(&red, a, b, budget)? {
                let blue_max_degree = p - 1 - red.min_degree();
                return Ok(Some(VerifiedWitness {
                    order: p,
                    construction: c.id,
                    complemented,
                    description: c.description,
                    avoided_red: a.clone(),
                    avoided_blue: b.clone(),
                    red_max_degree: red.max_degree(),
                    blue_max_degree,
                    checks,
                    graph: red,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_examples() {
        let g = regular_graph(6, 3).unwrap();
        assert!((0..6).all(|v| g.degree(v) == 3));
        assert!(matches!(regular_graph(11, 5), Err(Error::NoRegularGraph(_))));
        assert!(regular_graph(4, 4).is_err());
        let g = regular_graph(37, 18).unwrap();
        let c = g.complement();
        assert!((0..37).all(|v| g.degree(v) == 18 && c.degree(v) == 18));
        assert_eq!(regular_graph(5, 0).unwrap(), Graph::empty(5));
    }

    #[test]
    fn clique_unions() {
        let g = clique_union(2, 8);
        assert_eq!(g.order(), 16);
        assert_eq!(g.complement(), Graph::complete_bipartite(8, 8));
        assert_eq!(g.complement().max_degree(), 8);
        assert_eq!(two_clique_union(0, 8, 6, 7).order(), 42);
        assert_eq!(clique_union(1, 1), Graph::empty(1));
    }

    #[test]
    fn g0_degrees() {
        let g = g0_graph(24).unwrap();
        assert_eq!(g.order(), 39);
        let d = g.degrees().unwrap();
        assert_eq!(d.sequence.iter().filter(|&&x| x == 20).count(), 3);
        assert_eq!(d.sequence.iter().filter(|&&x| x == 19).count(), 36);
        assert_eq!(g.complement().max_degree(), 19);
        assert!(!crate::containment::contains_double_star(&g, 19, 3));
        assert!(g0_graph(17).is_err());
        assert!(g0_graph(14).is_err());
    }

    #[test]
    fn catalog_examples() {
        let w = lower_witness(&TreeSpec::tprime(9), &TreeSpec::tdp(13), 16).unwrap().unwrap();
        assert_eq!((w.construction, w.description.as_str(), w.complemented), (ConstructionId::CliqueUnion, "2K_8", false));
        assert!(w.reverify().unwrap());

        let w = lower_witness(&TreeSpec::tdp(23), &TreeSpec::tdp(23), 37).unwrap().unwrap();
        assert_eq!(w.construction, ConstructionId::RegularSplit);
        assert_eq!((w.red_max_degree, w.blue_max_degree), (18, 18));

        let w = lower_witness(&TreeSpec::tdp(10), &TreeSpec::tdp(10), 11).unwrap().unwrap();
        assert!(w.reverify().unwrap());
        assert_eq!(w.graph.components().iter().map(Vec::len).max(), Some(9));
    }
}
