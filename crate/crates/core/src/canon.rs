//! Canonical labelling by equitable-partition refinement and a search tree
//! pruned with discovered automorphisms.
//!
//! Works on graphs of order at most 64 (one word per row). The canonical form
//! is the relabelling whose row vector is lexicographically smallest among the
//! leaves of the search tree.

use crate::graph::Graph;
use crate::graph6;

const MAX: usize = 64;

#[derive(Clone, Copy)]
struct Partition {
    lab: [u8; MAX],
    // start position of the cell that contains each position
    start: [u8; MAX],
    // cell length, valid at a cell's start position
    len: [u8; MAX],
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut p = Partition {
            lab: [0; MAX],
            start: [0; MAX],
            len: [0; MAX],
        };
        for i in 0..n {
            p.lab[i] = i as u8;
        }
        if n > 0 {
            p.len[0] = n as u8;
        }
        p
    }

    fn cell_mask(&self, s: usize) -> u64 {
        let mut m = 0u64;
        for i in s..s + self.len[s] as usize {
            m |= 1 << self.lab[i];
        }
        m
    }
}

/// Result of a canonical labelling run.
#[derive(Debug, Clone)]
pub struct Labelling {
    /// `lab[i]` is the original vertex placed at canonical position `i`.
    pub lab: Vec<usize>,
    /// Rows of the canonical form.
    pub rows: Vec<u64>,
    /// Generators of the automorphism group found during the search.
    pub generators: Vec<Vec<usize>>,
}

impl Labelling {
    pub fn canonical_graph(&self) -> Graph {
        Graph::from_small_rows(&self.rows)
    }

    /// Orbit representative (smallest vertex) for every vertex.
    pub fn orbits(&self) -> Vec<usize> {
        let n = self.lab.len();
        let mut uf = UnionFind::new(n);
        for g in &self.generators {
            for (v, &w) in g.iter().enumerate() {
                uf.union(v, w);
            }
        }
        (0..n).map(|v| uf.find(v)).collect()
    }
}

struct UnionFind {
    parent: [u8; MAX],
}

impl UnionFind {
    fn new(n: usize) -> Self {
        let mut parent = [0u8; MAX];
        for (i, p) in parent.iter_mut().enumerate().take(n) {
            *p = i as u8;
        }
        Self { parent }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] as usize != v {
            let p = self.parent[v] as usize;
            self.parent[v] = self.parent[p];
            v = p;
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo as u8;
        }
    }
}

/// Reusable scratch state for canonical labelling.
pub struct Canonizer {
    n: usize,
    rows: [u64; MAX],
    best: Option<([u64; MAX], [u8; MAX])>,
    first: Option<([u64; MAX], [u8; MAX])>,
    generators: Vec<[u8; MAX]>,
}

impl Default for Canonizer {
    fn default() -> Self {
        Self::new()
    }
}

impl Canonizer {
    pub fn new() -> Self {
        Self {
            n: 0,
            rows: [0; MAX],
            best: None,
            first: None,
            generators: Vec::new(),
        }
    }

    fn load(&mut self, g: &Graph) {
        assert!(g.order() <= MAX, "canonical labelling supports order <= 64");
        self.n = g.order();
        for v in 0..self.n {
            self.rows[v] = g.row(v)[0];
        }
        self.best = None;
        self.first = None;
        self.generators.clear();
    }

    fn refine(&self, p: &mut Partition, mut queue: u64) {
        let n = self.n;
        let mut counts = [0u8; MAX];
        while queue != 0 {
            let s = queue.trailing_zeros() as usize;
            queue &= queue - 1;
            let w = p.cell_mask(s);
            let mut c = 0;
            while c < n {
                let len = p.len[c] as usize;
                if len > 1 {
                    let mut uniform = true;
                    for i in c..c + len {
                        counts[i] = (self.rows[p.lab[i] as usize] & w).count_ones() as u8;
                        uniform &= counts[i] == counts[c];
                    }
                    if !uniform {
                        let mut pairs: Vec<(u8, u8)> = (c..c + len).map(|i| (counts[i], p.lab[i])).collect();
                        pairs.sort_unstable();
                        let mut frag = c;
                        for (k, &(cnt, v)) in pairs.iter().enumerate() {
                            let i = c + k;
                            p.lab[i] = v;
                            if k > 0 && cnt != pairs[k - 1].0 {
                                p.len[frag] = (i - frag) as u8;
                                queue |= 1 << frag;
                                frag = i;
                            }
                            p.start[i] = frag as u8;
                        }
                        p.len[frag] = (c + len - frag) as u8;
                        queue |= 1 << frag;
                        queue |= 1 << c;
                    }
                }
                c += len;
            }
        }
    }

    /// Coarsest equitable partition refining the unit partition, as a cell
    /// index for every vertex.
    pub fn equitable_cells(&mut self, g: &Graph) -> Vec<usize> {
        self.load(g);
        let mut p = Partition::unit(self.n);
        if self.n > 0 {
            self.refine(&mut p, 1);
        }
        let mut cell = vec![0; self.n];
        let mut idx = 0;
        let mut c = 0;
        while c < self.n {
            for i in c..c + p.len[c] as usize {
                cell[p.lab[i] as usize] = idx;
            }
            idx += 1;
            c += p.len[c] as usize;
        }
        cell
    }

    fn leaf(&mut self, p: &Partition) {
        let n = self.n;
        let mut pos = [0u8; MAX];
        for i in 0..n {
            pos[p.lab[i] as usize] = i as u8;
        }
        let mut code = [0u64; MAX];
        for (i, slot) in code.iter_mut().enumerate().take(n) {
            let mut row = self.rows[p.lab[i] as usize];
            let mut out = 0u64;
            while row != 0 {
                let u = row.trailing_zeros() as usize;
                row &= row - 1;
                out |= 1 << pos[u];
            }
            *slot = out;
        }
        match self.best {
            None => {
                self.best = Some((code, p.lab));
                self.first = Some((code, p.lab));
            }
            Some((best, best_lab)) => {
                let ord = code[..n].cmp(&best[..n]);
                if ord == std::cmp::Ordering::Equal {
                    self.record_automorphism(&best_lab, &p.lab);
                } else {
                    let (first, first_lab) = self.first.unwrap();
                    if code[..n] == first[..n] {
                        self.record_automorphism(&first_lab, &p.lab);
                    }
                    if ord == std::cmp::Ordering::Less {
                        self.best = Some((code, p.lab));
                    }
                }
            }
        }
    }

    fn record_automorphism(&mut self, from: &[u8; MAX], to: &[u8; MAX]) {
        let mut gamma = [0u8; MAX];
        let mut identity = true;
        for i in 0..self.n {
            gamma[from[i] as usize] = to[i];
            identity &= from[i] == to[i];
        }
        if !identity {
            self.generators.push(gamma);
        }
    }

    fn same_orbit_as_tried(&self, fixed: &[u8], tried: &[u8], v: u8) -> bool {
        if tried.is_empty() || self.generators.is_empty() {
            return false;
        }
        let mut uf = UnionFind::new(self.n);
        for g in &self.generators {
            if fixed.iter().all(|&f| g[f as usize] == f) {
                for v in 0..self.n {
                    uf.union(v, g[v] as usize);
                }
            }
        }
        let root = uf.find(v as usize);
        tried.iter().any(|&t| uf.find(t as usize) == root)
    }

    fn search(&mut self, p: &Partition, fixed: &mut Vec<u8>) {
        let n = self.n;
        let mut target = None;
        let mut best_len = usize::MAX;
        let mut c = 0;
        while c < n {
            let len = p.len[c] as usize;
            if len > 1 && len < best_len {
                best_len = len;
                target = Some(c);
            }
            c += len;
        }
        let Some(c) = target else {
            self.leaf(p);
            return;
        };
        let len = p.len[c] as usize;
        let mut tried: Vec<u8> = Vec::with_capacity(len);
        for k in 0..len {
            let v = p.lab[c + k];
            if self.same_orbit_as_tried(fixed, &tried, v) {
                continue;
            }
            let mut child = *p;
            // individualise v at the front of its cell
            let at = (c..c + len).find(|&i| child.lab[i] == v).unwrap();
            child.lab.swap(c, at);
            child.len[c] = 1;
            child.start[c] = c as u8;
            child.len[c + 1] = (len - 1) as u8;
            for i in c + 1..c + len {
                child.start[i] = (c + 1) as u8;
            }
            self.refine(&mut child, 1 << c);
            fixed.push(v);
            self.search(&child, fixed);
            fixed.pop();
            tried.push(v);
        }
    }

    /// Canonical labelling of `g`.
    pub fn label(&mut self, g: &Graph) -> Labelling {
        self.load(g);
        let n = self.n;
        if n == 0 {
            return Labelling {
                lab: vec![],
                rows: vec![],
                generators: vec![],
            };
        }
        let mut p = Partition::unit(n);
        self.refine(&mut p, 1);
        let mut fixed = Vec::new();
        self.search(&p, &mut fixed);
        let (rows, lab) = self.best.unwrap();
        Labelling {
            lab: lab[..n].iter().map(|&v| v as usize).collect(),
            rows: rows[..n].to_vec(),
            generators: self
                .generators
                .iter()
                .map(|g| g[..n].iter().map(|&v| v as usize).collect())
                .collect(),
        }
    }

    /// Rows of the canonical form only.
    pub fn canonical_rows(&mut self, g: &Graph) -> Vec<u64> {
        self.label(g).rows
    }
}

/// Canonical form of `g`.
pub fn canonical_form(g: &Graph) -> Graph {
    Canonizer::new().label(g).canonical_graph()
}

/// Isomorphism-invariant code: graph6 bytes of the canonical form.
pub fn canonical_code(g: &Graph) -> Vec<u8> {
    graph6::encode(&canonical_form(g)).into_bytes()
}

pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

/// Packs the strict upper triangle of rows (order ≤ 11) into one word.
pub fn triangle_key(rows: &[u64]) -> u64 {
    debug_assert!(rows.len() <= 11);
    let mut key = 0u64;
    let mut bit = 0;
    for (i, &row) in rows.iter().enumerate() {
        let upper = row >> (i + 1);
        key |= upper << bit;
        bit += rows.len() - i - 1;
    }
    key
}
