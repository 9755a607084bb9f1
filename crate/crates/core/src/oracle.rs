//! Exhaustive ground truth at small order.
//!
//! Graphs are generated isomorph-free by canonical augmentation: a child
//! `P + v` is kept only when deleting the canonically last vertex of the
//! child gives back the parent class, and isomorphic siblings are merged.

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{triangle_key, Canonizer};
use crate::containment::contains_fast;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::trees::{alpha2, recognize, tree_code, TreeSpec};

/// Largest graph order the enumerator supports.
pub const MAX_GRAPH_ORDER: usize = 11;
/// Largest tree order the tree enumerator supports.
pub const MAX_TREE_ORDER: usize = 16;
pub const DEFAULT_GRAPH_CAP: usize = 10;
pub const DEFAULT_TREE_CAP: usize = 10;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub graphs_visited: u64,
    pub iso_rejections: u64,
    pub containment_calls: u64,
    pub elapsed_ms: u64,
    pub workers: usize,
}

impl SearchStats {
    fn started() -> (Self, Instant) {
        (
            SearchStats {
                workers: rayon::current_num_threads(),
                ..Default::default()
            },
            Instant::now(),
        )
    }

    fn finish(&mut self, t: Instant) {
        self.elapsed_ms = t.elapsed().as_millis() as u64;
    }

    fn absorb(&mut self, other: &SearchStats) {
        self.graphs_visited += other.graphs_visited;
        self.iso_rejections += other.iso_rejections;
        self.containment_calls += other.containment_calls;
    }
}

fn check_cap(what: &'static str, value: usize, cap: usize, max: usize) -> Result<()> {
    let cap = cap.min(max);
    if value > cap {
        return Err(Error::CapExceeded { what, value, cap });
    }
    Ok(())
}

#[derive(Default)]
struct Counters {
    visited: AtomicU64,
    rejected: AtomicU64,
}

/// Accepted children of one parent, in neighbourhood-subset order.
fn children(
    parent: &Graph,
    canon: &mut Canonizer,
    keep: &(dyn Fn(&Graph) -> bool + Sync),
    counters: &Counters,
) -> Vec<Graph> {
    let k = parent.order();
    let parent_rows = parent.small_rows();
    let parent_canon = canon.canonical_rows(parent);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut rows = vec![0u64; k + 1];
    for s in 0u64..(1u64 << k) {
        for (i, r) in rows.iter_mut().take(k).enumerate() {
            *r = parent_rows[i] | (((s >> i) & 1) << k);
        }
        rows[k] = s;
        let child = Graph::from_small_rows(&rows);
        counters.visited.fetch_add(1, Ordering::Relaxed);
        let cells = canon.equitable_cells(&child);
        let last = cells.iter().copied().max().unwrap_or(0);
        if cells[k] != last {
            continue;
        }
        let lab = canon.label(&child);
        let w = lab.lab[k];
        let accepted = w == k || {
            let orbits = lab.orbits();
            orbits[w] == orbits[k]
                || (child.degree(w) == s.count_ones() as usize && {
                    let rest: Vec<usize> = (0..=k).filter(|&x| x != w).collect();
                    canon.canonical_rows(&child.induced_by(&rest)) == parent_canon
                })
        };
        if !accepted {
            continue;
        }
        if !seen.insert(triangle_key(&lab.rows)) {
            counters.rejected.fetch_add(1, Ordering::Relaxed);
            continue;
        }
        if keep(&child) {
            out.push(child);
        }
    }
    out
}

fn grow(
    p: usize,
    keep: &(dyn Fn(&Graph) -> bool + Sync),
    mut level: Vec<Graph>,
    from: usize,
    stats: &mut SearchStats,
) -> Vec<Graph> {
    let counters = Counters::default();
    for _ in from..p {
        level = level
            .par_iter()
            .map_init(Canonizer::new, |c, g| children(g, c, keep, &counters))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect();
    }
    stats.graphs_visited += counters.visited.load(Ordering::Relaxed);
    stats.iso_rejections += counters.rejected.load(Ordering::Relaxed);
    level
}

type Level = Arc<Vec<Graph>>;

struct CachedLevel {
    graphs: Level,
    visited: u64,
    rejected: u64,
}

fn cache() -> &'static Mutex<Vec<CachedLevel>> {
    static CACHE: OnceLock<Mutex<Vec<CachedLevel>>> = OnceLock::new();
    CACHE.get_or_init(|| {
        Mutex::new(vec![CachedLevel {
            graphs: Arc::new(vec![Graph::empty(0)]),
            visited: 0,
            rejected: 0,
        }])
    })
}

/// One representative per isomorphism class of order-`p` graphs. Levels are
/// cached for the life of the process; the reported counts always cover the
/// full generation of levels `1..=p`, cached or not.
pub fn enum_graphs(p: usize, cap: usize) -> Result<(Level, SearchStats)> {
    check_cap("graph order", p, cap, MAX_GRAPH_ORDER)?;
    let (mut stats, t) = SearchStats::started();
    let mut levels = cache().lock().expect("enumeration cache poisoned");
    while levels.len() <= p {
        let k = levels.len() - 1;
        let mut s = SearchStats::default();
        let next = grow(k + 1, &|_| true, levels[k].graphs.as_ref().clone(), k, &mut s);
        levels.push(CachedLevel {
            graphs: Arc::new(next),
            visited: s.graphs_visited,
            rejected: s.iso_rejections,
        });
    }
    for l in &levels[1..=p] {
        stats.graphs_visited += l.visited;
        stats.iso_rejections += l.rejected;
    }
    let out = levels[p].graphs.clone();
    stats.finish(t);
    Ok((out, stats))
}

/// Enumeration with a hereditary filter: a rejected graph is never extended,
/// so `keep` must be closed under vertex deletion.
pub fn enum_graphs_pruned(
    p: usize,
    cap: usize,
    keep: &(dyn Fn(&Graph) -> bool + Sync),
) -> Result<(Vec<Graph>, SearchStats)> {
    check_cap("graph order", p, cap, MAX_GRAPH_ORDER)?;
    let (mut stats, t) = SearchStats::started();
    let out = grow(p, keep, vec![Graph::empty(0)], 0, &mut stats);
    stats.finish(t);
    Ok((out, stats))
}

fn tree_graph(t: &TreeSpec) -> Result<Graph> {
    let g = t.build()?;
    if g.order() < 2 {
        return Err(Error::InvalidSpec(format!("{t}: oracle needs a tree of order at least 2")));
    }
    Ok(g)
}

#[derive(Debug, Clone, Serialize)]
pub struct ExOracle {
    pub tree: TreeSpec,
    pub p: usize,
    pub value: usize,
    /// An extremal graph in graph6.
    pub extremal: String,
    pub stats: SearchStats,
}

/// Exact `ex(p; t)`: scans classes by decreasing edge count and stops at the
/// first one that avoids `t`.
pub fn oracle_ex(p: usize, t: &TreeSpec, cap: usize) -> Result<ExOracle> {
    if p == 0 {
        return Err(Error::InvalidRange("p must be at least 1".into()));
    }
    let tg = tree_graph(t)?;
    let (graphs, mut stats) = enum_graphs(p, cap)?;
    let t0 = Instant::now();
    let mut by_edges: Vec<Vec<&Graph>> = vec![Vec::new(); p * (p - 1) / 2 + 1];
    for g in graphs.iter() {
        by_edges[g.edge_count()].push(g);
    }
    let mut found = None;
    for bucket in by_edges.iter().rev() {
        let hit = bucket
            .par_iter()
            .position_first(|g| !contains_fast(g, &tg, None).expect("unbudgeted search"));
        stats.containment_calls += hit.map_or(bucket.len(), |i| i + 1) as u64;
        if let Some(i) = hit {
            found = Some(bucket[i]);
            break;
        }
    }
    let g = found.expect("the empty graph avoids every tree of order 2 or more");
    stats.elapsed_ms += t0.elapsed().as_millis() as u64;
    Ok(ExOracle {
        tree: t.clone(),
        p,
        value: g.edge_count(),
        extremal: graph6::encode(g),
        stats,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RamseyOracle {
    pub a: TreeSpec,
    pub b: TreeSpec,
    pub value: usize,
    /// A graph on `value - 1` vertices avoiding `a` whose complement avoids `b`.
    pub critical: Option<String>,
    pub stats: SearchStats,
}

fn ramsey_graphs(a: &Graph, b: &Graph, p_cap: usize, cap: usize) -> Result<(usize, Option<Graph>, SearchStats)> {
    check_cap("ramsey search order", p_cap, cap, MAX_GRAPH_ORDER)?;
    let mut stats = SearchStats {
        workers: rayon::current_num_threads(),
        ..Default::default()
    };
    let mut critical = None;
    for p in 1..=p_cap {
        let (graphs, s) = enum_graphs(p, cap)?;
        stats.graphs_visited = s.graphs_visited;
        stats.iso_rejections = s.iso_rejections;
        let bad = graphs.par_iter().position_first(|g| {
            !contains_fast(g, a, None).expect("unbudgeted search")
                && !contains_fast(&g.complement(), b, None).expect("unbudgeted search")
        });
        stats.containment_calls += bad.map_or(graphs.len(), |i| i + 1) as u64;
        match bad {
            None => return Ok((p, critical, stats)),
            Some(i) => critical = Some(graphs[i].clone()),
        }
    }
    Err(Error::CapExceeded {
        what: "ramsey search order",
        value: p_cap + 1,
        cap: p_cap,
    })
}

/// Exact `r(a, b)` by checking every class of order 1, 2, ... up to `p_cap`.
pub fn oracle_ramsey(a: &TreeSpec, b: &TreeSpec, p_cap: usize, cap: usize) -> Result<RamseyOracle> {
    let (ga, gb) = (tree_graph(a)?, tree_graph(b)?);
    let t0 = Instant::now();
    let (value, critical, mut stats) = ramsey_graphs(&ga, &gb, p_cap, cap)?;
    stats.elapsed_ms = t0.elapsed().as_millis() as u64;
    Ok(RamseyOracle {
        a: a.clone(),
        b: b.clone(),
        value,
        critical: critical.map(|g| graph6::encode(&g)),
        stats,
    })
}

/// All non-isomorphic trees on `n` vertices, grown leaf by leaf.
pub fn enum_trees(n: usize, cap: usize) -> Result<Vec<Graph>> {
    check_cap("tree order", n, cap, MAX_TREE_ORDER)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level = vec![Graph::empty(1)];
    for k in 1..n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..k {
                let mut edges: Vec<(usize, usize)> = t.edges().collect();
                edges.push((v, k));
                let child = Graph::from_edges(k + 1, edges)?;
                if seen.insert(tree_code(&child)?) {
                    next.push(child);
                }
            }
        }
        level = next;
    }
    Ok(level)
}

/// Readable name for a tree: the first matching named spec, else graph6.
pub fn tree_name(t: &Graph) -> String {
    match recognize(t) {
        Ok(specs) if !specs.is_empty() => specs[0].pretty(),
        _ => format!("g6:{}", graph6::encode(t)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub tree: String,
    pub tree_graph6: String,
    pub host_graph6: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Conjecture1Report {
    pub n_max: usize,
    pub p_max: usize,
    pub hosts: u64,
    pub pairs_checked: u64,
    pub counterexamples: Vec<Counterexample>,
    pub stats: SearchStats,
}

/// Every connected host of order `p <= p_max` with minimum degree at least
/// `alpha2(T)` should contain every tree `T` of order `n <= min(n_max, p)`.
pub fn scan_conjecture1(n_max: usize, p_max: usize, graph_cap: usize, tree_cap: usize) -> Result<Conjecture1Report> {
    check_cap("tree order", n_max, tree_cap, MAX_TREE_ORDER)?;
    check_cap("graph order", p_max, graph_cap, MAX_GRAPH_ORDER)?;
    let t0 = Instant::now();
    let mut trees: Vec<(Graph, usize)> = Vec::new();
    for n in 1..=n_max {
        for t in enum_trees(n, tree_cap)? {
            let a = alpha2(&t)?;
            trees.push((t, a));
        }
    }
    let mut stats = SearchStats {
        workers: rayon::current_num_threads(),
        ..Default::default()
    };
    let mut hosts = 0;
    let mut pairs = 0u64;
    let mut counterexamples = Vec::new();
    for p in 1..=p_max {
        let (graphs, s) = enum_graphs(p, graph_cap)?;
        stats.graphs_visited = s.graphs_visited;
        stats.iso_rejections = s.iso_rejections;
        let connected: Vec<&Graph> = graphs.iter().filter(|g| g.is_connected()).collect();
        hosts += connected.len() as u64;
        let found: Vec<(u64, Vec<Counterexample>)> = connected
            .par_iter()
            .map(|g| {
                let delta = g.min_degree();
                let mut checked = 0;
                let mut bad = Vec::new();
                for (t, _) in trees.iter().filter(|(t, a)| t.order() <= p && delta >= *a) {
                    checked += 1;
                    if !contains_fast(g, t, None).expect("unbudgeted search") {
                        bad.push(Counterexample {
                            tree: tree_name(t),
                            tree_graph6: graph6::encode(t),
                            host_graph6: graph6::encode(g),
                        });
                    }
                }
                (checked, bad)
            })
            .collect();
        for (c, bad) in found {
            pairs += c;
            counterexamples.extend(bad);
        }
    }
    stats.containment_calls = pairs;
    stats.finish(t0);
    Ok(Conjecture1Report {
        n_max,
        p_max,
        hosts,
        pairs_checked: pairs,
        counterexamples,
        stats,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conjecture2Row {
    pub m: usize,
    pub tree: String,
    pub tree_graph6: String,
    pub alpha2: usize,
    pub oracle_r: usize,
    pub bound: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Conjecture2Report {
    pub m_max: usize,
    pub n_max: usize,
    pub rows: Vec<Conjecture2Row>,
    pub violations: Vec<Conjecture2Row>,
    pub stats: SearchStats,
}

/// For stars `K_{1,m-1}` (order `m >= 3`) and trees with `alpha2 >= m - 2`,
/// compares the exact Ramsey number with `m - 1 + alpha2`.
pub fn scan_conjecture2(m_max: usize, n_max: usize, graph_cap: usize, tree_cap: usize) -> Result<Conjecture2Report> {
    check_cap("tree order", n_max, tree_cap, MAX_TREE_ORDER)?;
    let t0 = Instant::now();
    let mut stats = SearchStats {
        workers: rayon::current_num_threads(),
        ..Default::default()
    };
    let mut rows = Vec::new();
    let mut memo: HashMap<(usize, String), usize> = HashMap::new();
    for m in 3..=m_max {
        let star = TreeSpec::star(m).build()?;
        for n in 2..=n_max {
            for t in enum_trees(n, tree_cap)? {
                let a = alpha2(&t)?;
                if a + 2 < m {
                    continue;
                }
                let bound = m - 1 + a;
                let key = (m, tree_code(&t)?);
                let r = match memo.get(&key) {
                    Some(&r) => r,
                    None => {
                        let p_cap = (bound + 1).min(graph_cap.min(MAX_GRAPH_ORDER));
                        let (r, _, s) = ramsey_graphs(&star, &t, p_cap, graph_cap)?;
                        stats.absorb(&s);
                        memo.insert(key, r);
                        r
                    }
                };
                rows.push(Conjecture2Row {
                    m,
                    tree: tree_name(&t),
                    tree_graph6: graph6::encode(&t),
                    alpha2: a,
                    oracle_r: r,
                    bound,
                    holds: r <= bound,
                });
            }
        }
    }
    stats.finish(t0);
    let violations = rows.iter().filter(|r| !r.holds).cloned().collect();
    Ok(Conjecture2Report {
        m_max,
        n_max,
        rows,
        violations,
        stats,
    })
}
