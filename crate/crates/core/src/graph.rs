//! Finite simple graphs on dense vertices `0..order`, stored as bitset rows.
//!
//! Every witness, oracle host and tree in the crate is a [`Graph`]. Rows are
//! `words` 64-bit words wide, so neighbourhood intersections and the
//! complement are word-parallel.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[inline]
pub(crate) fn words_for(order: usize) -> usize {
    order.div_ceil(64).max(1)
}

#[inline]
fn tail_mask(order: usize, word: usize) -> u64 {
    let lo = word * 64;
    let hi = (lo + 64).min(order);
    if hi <= lo {
        0
    } else if hi - lo == 64 {
        u64::MAX
    } else {
        (1u64 << (hi - lo)) - 1
    }
}

/// A subset of `0..order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    order: usize,
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn empty(order: usize) -> Self {
        Self {
            order,
            bits: vec![0; words_for(order)],
        }
    }

    pub fn full(order: usize) -> Self {
        let mut s = Self::empty(order);
        for (w, word) in s.bits.iter_mut().enumerate() {
            *word = tail_mask(order, w);
        }
        s
    }

    /// Builds a set from members, rejecting any member `>= order`.
    pub fn from_members<I: IntoIterator<Item = usize>>(order: usize, members: I) -> Result<Self> {
        let mut s = Self::empty(order);
        for v in members {
            if v >= order {
                return Err(Error::VertexOutOfRange { vertex: v, order });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub(crate) fn from_words(order: usize, bits: Vec<u64>) -> Self {
        debug_assert_eq!(bits.len(), words_for(order));
        Self { order, bits }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.order);
        self.bits[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        self.bits[v / 64] &= !(1 << (v % 64));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.order && self.bits[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        iter_bits(&self.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect();
        VertexSet::from_words(self.order, bits)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect();
        VertexSet::from_words(self.order, bits)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a & !b).collect();
        VertexSet::from_words(self.order, bits)
    }

    /// Complement within `0..order`.
    pub fn complement(&self) -> VertexSet {
        let bits = self
            .bits
            .iter()
            .enumerate()
            .map(|(w, b)| !b & tail_mask(self.order, w))
            .collect();
        VertexSet::from_words(self.order, bits)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            }
        })
    })
}

/// Degree statistics: descending sequence, maximum and minimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeStats {
    pub sequence: Vec<usize>,
    pub max: usize,
    pub min: usize,
}

/// Finite simple undirected graph.
///
/// Optional per-vertex labels record where a vertex came from (`v0`, `u3`, ...)
/// and take no part in equality or any graph operation.
#[derive(Clone)]
pub struct Graph {
    order: usize,
    words: usize,
    rows: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.rows == other.rows
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.rows.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(order={}, edges={:?})", self.order, self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Self {
        let words = words_for(order);
        Self {
            order,
            words,
            rows: vec![0; order * words],
            labels: None,
        }
    }

    /// `K_order`.
    pub fn complete(order: usize) -> Self {
        Self::empty(order).complement()
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(order: usize, edges: I) -> Result<Self> {
        let mut g = Self::empty(order);
        for (u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Path `0-1-...-(order-1)`.
    pub fn path(order: usize) -> Self {
        Self::from_edges(order, (1..order).map(|v| (v - 1, v))).expect("path edges are in range")
    }

    /// Cycle on `order >= 3` vertices.
    pub fn cycle(order: usize) -> Self {
        let mut g = Self::path(order);
        if order >= 3 {
            g.add_edge(0, order - 1);
        }
        g
    }

    /// Complete bipartite `K_{a,b}` with the `a`-side first.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Petersen graph: outer 5-cycle, inner pentagram, spokes.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        Self::from_edges(10, edges).expect("petersen edges are in range")
    }

    pub(crate) fn from_rows(order: usize, rows: Vec<u64>) -> Self {
        let g = Self {
            order,
            words: words_for(order),
            rows,
            labels: None,
        };
        g.debug_check();
        g
    }

    /// Builds a graph of order ≤ 64 from single-word rows.
    pub fn from_small_rows(rows: &[u64]) -> Self {
        assert!(rows.len() <= 64, "small rows require order <= 64");
        Self::from_rows(rows.len(), rows.to_vec())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn words_per_row(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Single-word rows; only valid for order ≤ 64.
    pub fn small_rows(&self) -> Vec<u64> {
        assert!(self.order <= 64);
        self.rows.clone()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order,
            })
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.add_edge(u, v);
        Ok(())
    }

    /// Adds `uv`; panics on out-of-range vertices or loops.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.order && v < self.order && u != v, "bad edge {u}-{v}");
        let w = self.words;
        self.rows[u * w + v / 64] |= 1 << (v % 64);
        self.rows[v * w + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        let w = self.words;
        self.rows[u * w + v / 64] &= !(1 << (v % 64));
        self.rows[v * w + u / 64] &= !(1 << (u % 64));
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in row order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| iter_bits(self.row(u)).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Degree sequence (descending), Δ and δ.
    pub fn degrees(&self) -> Result<DegreeStats> {
        if self.order == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut sequence: Vec<usize> = (0..self.order).map(|v| self.degree(v)).collect();
        sequence.sort_unstable_by(|a, b| b.cmp(a));
        Ok(DegreeStats {
            max: sequence[0],
            min: *sequence.last().unwrap(),
            sequence,
        })
    }

    pub fn neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet::from_words(self.order, self.row(v).to_vec()))
    }

    /// Vertices at distance exactly two from `v`.
    pub fn neighborhood2(&self, v: usize) -> Result<VertexSet> {
        let n1 = self.neighborhood(v)?;
        let mut reach = vec![0u64; self.words];
        for u in n1.iter() {
            for (r, w) in reach.iter_mut().zip(self.row(u)) {
                *r |= w;
            }
        }
        let mut out = VertexSet::from_words(self.order, reach).difference(&n1);
        out.remove(v);
        Ok(out)
    }

    /// `e(A, B)`: edges with one endpoint in each of two disjoint sets.
    pub fn cross_edges(&self, a: &VertexSet, b: &VertexSet) -> Result<usize> {
        self.check_set(a)?;
        self.check_set(b)?;
        if !a.is_disjoint(b) {
            return Err(Error::OverlappingSets);
        }
        Ok(a
            .iter()
            .map(|u| {
                self.row(u)
                    .iter()
                    .zip(b.words())
                    .map(|(x, y)| (x & y).count_ones() as usize)
                    .sum::<usize>()
            })
            .sum())
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.order() != self.order {
            if let Some(v) = s.iter().find(|&v| v >= self.order) {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    order: self.order,
                });
            }
        }
        Ok(())
    }

    /// `G[S]`, relabelled to `0..|S|` in increasing vertex order.
    pub fn induced(&self, s: &VertexSet) -> Result<Graph> {
        self.check_set(s)?;
        let keep: Vec<usize> = s.iter().collect();
        Ok(self.induced_by(&keep))
    }

    /// `G - S`.
    pub fn delete(&self, s: &VertexSet) -> Result<Graph> {
        self.check_set(s)?;
        let keep: Vec<usize> = (0..self.order).filter(|&v| !s.contains(v)).collect();
        Ok(self.induced_by(&keep))
    }

    /// Induced subgraph on `keep`, new vertex `i` is `keep[i]`.
    pub fn induced_by(&self, keep: &[usize]) -> Graph {
        let mut g = Graph::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        if let Some(labels) = &self.labels {
            g.labels = Some(keep.iter().map(|&v| labels[v].clone()).collect());
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let mut rows = Vec::with_capacity(self.rows.len());
        for v in 0..self.order {
            for (w, word) in self.row(v).iter().enumerate() {
                let mut x = !word & tail_mask(self.order, w);
                if v / 64 == w {
                    x &= !(1 << (v % 64));
                }
                rows.push(x);
            }
        }
        let mut g = Graph::from_rows(self.order, rows);
        g.labels = self.labels.clone();
        g
    }

    /// Disjoint union; part `i` occupies the next `parts[i].order()` vertices.
    pub fn disjoint_union(parts: &[Graph]) -> Graph {
        let order = parts.iter().map(Graph::order).sum();
        let mut g = Graph::empty(order);
        let mut offset = 0;
        for p in parts {
            for (u, v) in p.edges() {
                g.add_edge(u + offset, v + offset);
            }
            offset += p.order();
        }
        g
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order);
        let mut g = Graph::empty(self.order);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for s in 0..self.order {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in iter_bits(self.row(u)) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.order <= 1 || self.components().len() == 1
    }

    /// Breadth-first distances from `s` (`usize::MAX` when unreachable).
    pub fn distances_from(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in iter_bits(self.row(u)) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_tree(&self) -> bool {
        self.order >= 1 && self.edge_count() + 1 == self.order && self.is_connected()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// DOT rendering for inspection; layout is up to the viewer.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph {name} {{\n");
        for v in 0..self.order {
            s.push_str(&format!("  {v} [label=\"{}\"];\n", self.label(v)));
        }
        for (u, v) in self.edges() {
            s.push_str(&format!("  {u} -- {v};\n"));
        }
        s.push_str("}\n");
        s
    }

    #[inline]
    fn debug_check(&self) {
        #[cfg(debug_assertions)]
        for u in 0..self.order {
            assert!(!self.has_edge(u, u), "self-loop at {u}");
            for (w, word) in self.row(u).iter().enumerate() {
                assert_eq!(word & !tail_mask(self.order, w), 0, "stray bits in row {u}");
            }
            for v in iter_bits(self.row(u)) {
                assert!(self.has_edge(v, u), "asymmetric edge {u}-{v}");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(order: usize, m: &[usize]) -> VertexSet {
        VertexSet::from_members(order, m.iter().copied()).unwrap()
    }

    #[test]
    fn complement_of_triangle_is_empty() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(k3.complement(), Graph::empty(3));
        assert_eq!(Graph::empty(1).complement(), Graph::empty(1));
    }

    #[test]
    fn complement_of_two_k8_is_k88() {
        let two = Graph::disjoint_union(&[Graph::complete(8), Graph::complete(8)]);
        let c = two.complement();
        for u in 0..16 {
            for v in 0..16 {
                if u != v {
                    assert_eq!(c.has_edge(u, v), (u < 8) != (v < 8), "{u}-{v}");
                }
            }
        }
        assert_eq!(c, Graph::complete_bipartite(8, 8));
    }

    #[test]
    fn complement_spans_word_boundary() {
        let g = Graph::path(130);
        let c = g.complement();
        assert_eq!(g.edge_count() + c.edge_count(), 130 * 129 / 2);
        assert_eq!(c.complement(), g);
        assert!(!c.has_edge(63, 64));
        assert!(c.has_edge(0, 129));
    }

    #[test]
    fn disjoint_unions() {
        let g = Graph::disjoint_union(&[Graph::complete(3), Graph::complete(3)]);
        assert_eq!((g.order(), g.edge_count(), g.components().len()), (6, 6, 2));
        assert_eq!(Graph::disjoint_union(&[]).order(), 0);
        let g = Graph::disjoint_union(&[Graph::complete(9), Graph::complete(2)]);
        assert_eq!((g.order(), g.edge_count()), (11, 37));
    }

    #[test]
    fn degree_stats() {
        let d = Graph::complete(4).degrees().unwrap();
        assert_eq!(d, DegreeStats { sequence: vec![3, 3, 3, 3], max: 3, min: 3 });
        let star = Graph::complete_bipartite(1, 4);
        let d = star.degrees().unwrap();
        assert_eq!((d.sequence, d.max, d.min), (vec![4, 1, 1, 1, 1], 4, 1));
        assert_eq!(Graph::empty(0).degrees(), Err(Error::EmptyGraph));
    }

    #[test]
    fn second_neighbourhoods() {
        let p3 = Graph::path(3);
        assert_eq!(p3.neighborhood2(0).unwrap().iter().collect::<Vec<_>>(), vec![2]);
        let k4 = Graph::complete(4);
        assert!((0..4).all(|v| k4.neighborhood2(v).unwrap().is_empty()));
        let c5 = Graph::cycle(5);
        assert!((0..5).all(|v| c5.neighborhood2(v).unwrap().len() == 2));
        assert!(matches!(c5.neighborhood(5), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn cross_edge_counts() {
        let k33 = Graph::complete_bipartite(3, 3);
        assert_eq!(k33.cross_edges(&set(6, &[0, 1, 2]), &set(6, &[3, 4, 5])).unwrap(), 9);
        assert_eq!(k33.cross_edges(&set(6, &[0, 1]), &set(6, &[])).unwrap(), 0);
        let two = Graph::disjoint_union(&[Graph::complete(3), Graph::complete(3)]);
        assert_eq!(two.cross_edges(&set(6, &[0, 1, 2]), &set(6, &[3, 4, 5])).unwrap(), 0);
        assert_eq!(two.cross_edges(&set(6, &[0, 1]), &set(6, &[1, 2])), Err(Error::OverlappingSets));
    }

    #[test]
    fn induced_and_delete() {
        let k5 = Graph::complete(5);
        assert_eq!(k5.induced(&set(5, &[0, 2, 4])).unwrap(), Graph::complete(3));
        let p = Graph::petersen();
        assert_eq!(p.delete(&VertexSet::empty(10)).unwrap(), p);
        let k92 = Graph::complete_bipartite(9, 2);
        assert_eq!(k92.induced(&set(11, &[9, 10])).unwrap(), Graph::empty(2));
        let s = set(10, &[1, 3, 5]);
        assert_eq!(p.delete(&s).unwrap(), p.induced(&s.complement()).unwrap());
        assert!(VertexSet::from_members(3, [5]).is_err());
    }

    #[test]
    fn labels_do_not_affect_equality() {
        let a = Graph::path(3).with_labels(vec!["v0".into(), "v1".into(), "v2".into()]);
        assert_eq!(a, Graph::path(3));
        assert!(a.to_dot("p").contains("label=\"v1\""));
    }

    #[test]
    fn rejects_loops() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert!(matches!(Graph::from_edges(3, [(1, 3)]), Err(Error::VertexOutOfRange { .. })));
    }
}
