//! Does a host graph contain a copy of a given tree?
//!
//! Stars and double stars are decided by neighbourhood counting. Other trees
//! go through a backtracking embedder that places only the non-leaf vertices
//! (the skeleton) and then assigns all leaves at once with a bipartite
//! b-matching.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{iter_bits, Graph};
use crate::trees::TreeSpec;

/// `map[t] = h`: tree vertex `t` sits on host vertex `h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Injective and edge-preserving.
    pub fn is_valid(&self, host: &Graph, t: &Graph) -> bool {
        if self.map.len() != t.order() || self.map.iter().any(|&h| h >= host.order()) {
            return false;
        }
        let mut seen = vec![false; host.order()];
        for &h in &self.map {
            if std::mem::replace(&mut seen[h], true) {
                return false;
            }
        }
        t.edges().all(|(a, b)| host.has_edge(self.map[a], self.map[b]))
    }
}

fn require_tree(t: &Graph) -> Result<()> {
    if t.is_tree() {
        Ok(())
    } else {
        Err(Error::NotATree(format!("order {} with {} edges", t.order(), t.edge_count())))
    }
}

/// `(n1, n2)` when `t` is a star (`n2 = 0`) or a double star.
pub fn as_double_star(t: &Graph) -> Option<(usize, usize)> {
    let inner: Vec<usize> = (0..t.order()).filter(|&v| t.degree(v) > 1).collect();
    match inner.as_slice() {
        [c] => Some((t.degree(*c) - 1, 0)),
        [a, b] if t.has_edge(*a, *b) => {
            let (da, db) = (t.degree(*a) - 1, t.degree(*b) - 1);
            Some((da.max(db), da.min(db)))
        }
        _ => None,
    }
}

fn double_star_centres(host: &Graph, n1: usize, n2: usize) -> Option<(usize, usize)> {
    for u in 0..host.order() {
        if host.degree(u) < n1 + 1 {
            continue;
        }
        for v in iter_bits(host.row(u)) {
            if host.degree(v) < n2 + 1 {
                continue;
            }
            let union: usize = host
                .row(u)
                .iter()
                .zip(host.row(v))
                .map(|(a, b)| (a | b).count_ones() as usize)
                .sum();
            // u and v each appear in the other's row
            if union - 2 >= n1 + n2 {
                return Some((u, v));
            }
        }
    }
    None
}

/// Double star `S(n1, n2)` (or the star `K_{1,n1+1}` when `n2 = 0`).
///
/// Exact: some edge `uv` has `|Γ(u)-v| >= n1`, `|Γ(v)-u| >= n2` and
/// `|Γ(u) ∪ Γ(v) - {u,v}| >= n1 + n2`.
pub fn contains_double_star(host: &Graph, n1: usize, n2: usize) -> bool {
    let (n1, n2) = (n1.max(n2), n1.min(n2));
    double_star_centres(host, n1, n2).is_some()
}

/// An explicit copy of `S(n1, n2)` laid out as `TreeSpec::dstar(n1, n2).build()`:
/// `v0..v_{n1}` then `w0..w_{n2}`.
pub fn double_star_embedding(host: &Graph, n1: usize, n2: usize) -> Option<Embedding> {
    assert!(n1 >= n2);
    let (u, v) = double_star_centres(host, n1, n2)?;
    let nu: Vec<usize> = iter_bits(host.row(u)).filter(|&x| x != v).collect();
    let nv: Vec<usize> = iter_bits(host.row(v)).filter(|&x| x != u).collect();
    let private_v = nv.iter().copied().filter(|&x| !host.has_edge(u, x));
    let common = nv.iter().copied().filter(|&x| host.has_edge(u, x));
    let w_leaves: Vec<usize> = private_v.chain(common).take(n2).collect();
    let mut u_leaves: Vec<usize> = nu.iter().copied().filter(|x| !host.has_edge(v, *x)).collect();
    u_leaves.extend(nu.iter().copied().filter(|x| host.has_edge(v, *x) && !w_leaves.contains(x)));
    u_leaves.truncate(n1);
    let mut map = vec![u];
    map.extend(u_leaves);
    map.push(v);
    map.extend(w_leaves);
    debug_assert_eq!(map.len(), n1 + n2 + 2);
    Some(Embedding { map })
}

struct Embedder<'a> {
    host: &'a Graph,
    words: usize,
    // skeleton tree vertices in placement order
    order: Vec<usize>,
    parent: Vec<usize>,
    children_after: Vec<Vec<usize>>,
    leaves_of: Vec<Vec<usize>>,
    tdeg: Vec<usize>,
    image: Vec<usize>,
    used: Vec<u64>,
    nodes: u64,
    budget: Option<u64>,
    host_deg: Vec<usize>,
}

impl<'a> Embedder<'a> {
    fn new(host: &'a Graph, t: &Graph, budget: Option<u64>) -> Self {
        let n = t.order();
        let tdeg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
        let root = (0..n).max_by_key(|&v| (tdeg[v], std::cmp::Reverse(v))).unwrap();
        // subtree sizes from the root
        let mut par = vec![usize::MAX; n];
        let mut bfs = vec![root];
        par[root] = root;
        let mut i = 0;
        while i < bfs.len() {
            let u = bfs[i];
            i += 1;
            for v in iter_bits(t.row(u)) {
                if par[v] == usize::MAX {
                    par[v] = u;
                    bfs.push(v);
                }
            }
        }
        let mut size = vec![1usize; n];
        for &u in bfs.iter().rev() {
            if u != root {
                size[par[u]] += size[u];
            }
        }
        let is_inner = |v: usize| tdeg[v] > 1;
        // preorder over the skeleton, larger subtrees first
        let mut order = Vec::new();
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            order.push(u);
            let mut kids: Vec<usize> = iter_bits(t.row(u)).filter(|&v| v != par[u] && is_inner(v)).collect();
            kids.sort_by_key(|&v| (size[v], std::cmp::Reverse(v)));
            stack.extend(kids);
        }
        let mut index = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            index[v] = i;
        }
        let m = order.len();
        let mut parent = vec![usize::MAX; m];
        let mut children_after = vec![Vec::new(); m];
        let mut leaves_of = vec![Vec::new(); m];
        for (i, &v) in order.iter().enumerate() {
            if v != root {
                parent[i] = index[par[v]];
                children_after[index[par[v]]].push(i);
            }
            for w in iter_bits(t.row(v)) {
                if !is_inner(w) {
                    leaves_of[i].push(w);
                }
            }
        }
        Self {
            host,
            words: host.words_per_row(),
            order,
            parent,
            children_after,
            leaves_of,
            tdeg,
            image: Vec::new(),
            used: vec![0; host.words_per_row()],
            nodes: 0,
            budget,
            host_deg: (0..host.order()).map(|v| host.degree(v)).collect(),
        }
    }

    fn free_count(&self, h: usize) -> usize {
        self.host
            .row(h)
            .iter()
            .zip(&self.used)
            .map(|(r, u)| (r & !u).count_ones() as usize)
            .sum()
    }

    fn feasible(&self) -> bool {
        let placed = self.image.len();
        let mut union = vec![0u64; self.words];
        let mut demand = 0;
        for j in 0..placed {
            let pending = self.leaves_of[j].len() + self.children_after[j].iter().filter(|&&c| c >= placed).count();
            if pending == 0 {
                continue;
            }
            let h = self.image[j];
            if self.free_count(h) < pending {
                return false;
            }
            demand += pending;
            for ((x, r), u) in union.iter_mut().zip(self.host.row(h)).zip(&self.used) {
                *x |= r & !u;
            }
        }
        let supply: usize = union.iter().map(|w| w.count_ones() as usize).sum();
        supply >= demand
    }

    fn set_used(&mut self, h: usize, on: bool) {
        if on {
            self.used[h / 64] |= 1 << (h % 64);
        } else {
            self.used[h / 64] &= !(1 << (h % 64));
        }
    }

    fn is_used(&self, h: usize) -> bool {
        self.used[h / 64] >> (h % 64) & 1 == 1
    }

    fn candidates(&self, i: usize, roots: &[usize]) -> Vec<usize> {
        let need = self.tdeg[self.order[i]];
        let mut c: Vec<usize> = if i == 0 {
            roots.to_vec()
        } else {
            iter_bits(self.host.row(self.image[self.parent[i]]))
                .filter(|&h| !self.is_used(h))
                .collect()
        };
        c.retain(|&h| self.host_deg[h] >= need);
        c.sort_by_key(|&h| (std::cmp::Reverse(self.host_deg[h]), h));
        c
    }

    fn search(&mut self, roots: &[usize]) -> Result<Option<Vec<(usize, usize)>>> {
        let i = self.image.len();
        if i == self.order.len() {
            return Ok(self.place_leaves());
        }
        for h in self.candidates(i, roots) {
            self.nodes += 1;
            if let Some(b) = self.budget {
                if self.nodes > b {
                    return Err(Error::BudgetExhausted { nodes: self.nodes });
                }
            }
            self.image.push(h);
            self.set_used(h, true);
            if self.feasible() {
                if let Some(found) = self.search(roots)? {
                    return Ok(Some(found));
                }
            }
            self.set_used(h, false);
            self.image.pop();
        }
        Ok(None)
    }

    /// Kuhn augmenting paths over leaf slots.
    fn place_leaves(&self) -> Option<Vec<(usize, usize)>> {
        let slots: Vec<(usize, usize)> = self
            .leaves_of
            .iter()
            .enumerate()
            .flat_map(|(j, ls)| ls.iter().map(move |&leaf| (j, leaf)))
            .collect();
        let mut owner: Vec<Option<usize>> = vec![None; self.host.order()];
        for s in 0..slots.len() {
            let mut seen = vec![false; self.host.order()];
            if !self.augment(s, &slots, &mut owner, &mut seen) {
                return None;
            }
        }
        let mut out = Vec::with_capacity(slots.len());
        for (h, o) in owner.iter().enumerate() {
            if let Some(s) = o {
                out.push((slots[*s].1, h));
            }
        }
        Some(out)
    }

    fn augment(&self, s: usize, slots: &[(usize, usize)], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        let h0 = self.image[slots[s].0];
        for h in iter_bits(self.host.row(h0)) {
            if self.is_used(h) || seen[h] {
                continue;
            }
            seen[h] = true;
            match owner[h] {
                None => {
                    owner[h] = Some(s);
                    return true;
                }
                Some(other) => {
                    if self.augment(other, slots, owner, seen) {
                        owner[h] = Some(s);
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Searches for a copy of `t` in `host`, giving up with
/// [`Error::BudgetExhausted`] after `budget` search nodes.
pub fn embed_tree_budget(host: &Graph, t: &Graph, budget: Option<u64>) -> Result<Option<Embedding>> {
    require_tree(t)?;
    let n = t.order();
    if n > host.order() {
        return Ok(None);
    }
    if n == 1 {
        return Ok(Some(Embedding { map: vec![0] }));
    }
    if n == 2 {
        return Ok(host.edges().next().map(|(a, b)| Embedding { map: vec![a, b] }));
    }
    if host.max_degree() < t.max_degree() {
        return Ok(None);
    }
    let big_enough: Vec<usize> = host
        .components()
        .into_iter()
        .filter(|c| c.len() >= n)
        .flatten()
        .collect();
    if big_enough.is_empty() {
        return Ok(None);
    }
    let mut e = Embedder::new(host, t, budget);
    let Some(leaves) = e.search(&big_enough)? else {
        return Ok(None);
    };
    let mut map = vec![usize::MAX; n];
    for (i, &v) in e.order.iter().enumerate() {
        map[v] = e.image[i];
    }
    for (leaf, h) in leaves {
        map[leaf] = h;
    }
    let emb = Embedding { map };
    debug_assert!(emb.is_valid(host, t));
    Ok(Some(emb))
}

/// A copy of `t` in `host`, if any.
pub fn embed_tree(host: &Graph, t: &Graph) -> Result<Option<Embedding>> {
    embed_tree_budget(host, t, None)
}

/// Whether `host` contains `t`, using the generic embedder only.
pub fn contains_tree(host: &Graph, t: &Graph) -> Result<bool> {
    Ok(embed_tree(host, t)?.is_some())
}

/// Containment with the star and double-star shortcuts in front of the
/// generic embedder.
pub fn contains_fast(host: &Graph, t: &Graph, budget: Option<u64>) -> Result<bool> {
    require_tree(t)?;
    if t.order() > host.order() {
        return Ok(false);
    }
    if let Some((n1, n2)) = as_double_star(t) {
        return Ok(contains_double_star(host, n1, n2));
    }
    Ok(embed_tree_budget(host, t, budget)?.is_some())
}

pub fn contains_spec(host: &Graph, spec: &TreeSpec, budget: Option<u64>) -> Result<bool> {
    contains_fast(host, &spec.build()?, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(host: &Graph, t: &Graph) -> bool {
        let e = embed_tree(host, t).unwrap();
        if let Some(e) = &e {
            assert!(e.is_valid(host, t));
        }
        e.is_some()
    }

    #[test]
    fn spec_examples() {
        assert!(check(&Graph::complete(3), &Graph::path(3)));
        assert!(!check(&Graph::cycle(5), &Graph::complete_bipartite(1, 3)));
        let tdp = TreeSpec::tdp(10).build().unwrap();
        assert!(!check(&Graph::complete_bipartite(9, 2), &tdp));
        let s22 = TreeSpec::dstar(2, 2).build().unwrap();
        assert!(check(&Graph::petersen(), &s22));
    }

    #[test]
    fn double_star_decider_examples() {
        assert!(contains_double_star(&Graph::complete(5), 2, 1));
        assert!(!contains_double_star(&Graph::complete(5), 3, 1));
        assert!(contains_double_star(&Graph::petersen(), 2, 2));
        let e = double_star_embedding(&Graph::petersen(), 2, 2).unwrap();
        assert!(e.is_valid(&Graph::petersen(), &TreeSpec::dstar(2, 2).build().unwrap()));
    }

    #[test]
    fn recognises_double_stars() {
        assert_eq!(as_double_star(&TreeSpec::t3(12).build().unwrap()), Some((7, 3)));
        assert_eq!(as_double_star(&TreeSpec::star(5).build().unwrap()), Some((3, 0)));
        assert_eq!(as_double_star(&Graph::path(4)), Some((1, 1)));
        assert_eq!(as_double_star(&Graph::path(5)), None);
    }

    #[test]
    fn budget_is_enforced() {
        let host = Graph::complete_bipartite(6, 6);
        let t = Graph::path(12);
        assert!(matches!(embed_tree_budget(&host, &t, Some(3)), Err(Error::BudgetExhausted { .. })));
        assert!(check(&host, &t));
    }

    #[test]
    fn non_tree_rejected() {
        assert!(matches!(contains_tree(&Graph::complete(4), &Graph::cycle(3)), Err(Error::NotATree(_))));
    }

    #[test]
    fn hamiltonian_path_in_petersen() {
        assert!(check(&Graph::petersen(), &Graph::path(10)));
    }
}
