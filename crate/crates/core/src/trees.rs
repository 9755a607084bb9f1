//! The named tree families, built with the vertex naming `v0, v1, ...` (and
//! `w0, w1, ...` for the second centre of a double star).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Path,
    Star,
    TPrime,
    TStar,
    T1,
    T2,
    T3,
    TDoublePrime,
    TTriplePrime,
    DoubleStar,
    FreeTree,
}

impl Family {
    /// Single-parameter families in a fixed order.
    pub const SINGLE: [Family; 9] = [
        Family::Path,
        Family::Star,
        Family::TPrime,
        Family::TStar,
        Family::T1,
        Family::T2,
        Family::T3,
        Family::TDoublePrime,
        Family::TTriplePrime,
    ];

    pub fn min_order(self) -> usize {
        match self {
            Family::Path => 1,
            Family::Star => 3,
            Family::TPrime => 4,
            Family::TStar | Family::T1 | Family::T2 => 5,
            Family::T3 | Family::TDoublePrime | Family::TTriplePrime => 6,
            Family::DoubleStar => 4,
            Family::FreeTree => 1,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Star => "star",
            Family::TPrime => "tprime",
            Family::TStar => "tstar",
            Family::T1 => "t1",
            Family::T2 => "t2",
            Family::T3 => "t3",
            Family::TDoublePrime => "tdp",
            Family::TTriplePrime => "ttp",
            Family::DoubleStar => "dstar",
            Family::FreeTree => "free",
        }
    }

    /// Conventional symbol, e.g. `T''` or `K_{1,n-1}`.
    pub fn symbol(self) -> &'static str {
        match self {
            Family::Path => "P",
            Family::Star => "K1",
            Family::TPrime => "T'",
            Family::TStar => "T*",
            Family::T1 => "T1",
            Family::T2 => "T2",
            Family::T3 => "T3",
            Family::TDoublePrime => "T''",
            Family::TTriplePrime => "T'''",
            Family::DoubleStar => "S",
            Family::FreeTree => "T",
        }
    }
}

/// A tree identified by family and parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TreeSpec {
    Named(Family, usize),
    DoubleStar(usize, usize),
    Free(Graph),
}

impl TreeSpec {
    pub fn named(family: Family, n: usize) -> Result<Self> {
        let spec = TreeSpec::Named(family, n);
        spec.validate()?;
        Ok(spec)
    }

    pub fn path(n: usize) -> Self {
        TreeSpec::Named(Family::Path, n)
    }
    pub fn star(n: usize) -> Self {
        TreeSpec::Named(Family::Star, n)
    }
    pub fn tprime(n: usize) -> Self {
        TreeSpec::Named(Family::TPrime, n)
    }
    pub fn tstar(n: usize) -> Self {
        TreeSpec::Named(Family::TStar, n)
    }
    pub fn t1(n: usize) -> Self {
        TreeSpec::Named(Family::T1, n)
    }
    pub fn t2(n: usize) -> Self {
        TreeSpec::Named(Family::T2, n)
    }
    pub fn t3(n: usize) -> Self {
        TreeSpec::Named(Family::T3, n)
    }
    pub fn tdp(n: usize) -> Self {
        TreeSpec::Named(Family::TDoublePrime, n)
    }
    pub fn ttp(n: usize) -> Self {
        TreeSpec::Named(Family::TTriplePrime, n)
    }
    pub fn dstar(n1: usize, n2: usize) -> Self {
        TreeSpec::DoubleStar(n1, n2)
    }

    pub fn free(g: Graph) -> Result<Self> {
        if !g.is_tree() {
            return Err(Error::NotATree(format!(
                "order {} with {} edges",
                g.order(),
                g.edge_count()
            )));
        }
        Ok(TreeSpec::Free(g))
    }

    pub fn family(&self) -> Family {
        match self {
            TreeSpec::Named(f, _) => *f,
            TreeSpec::DoubleStar(..) => Family::DoubleStar,
            TreeSpec::Free(_) => Family::FreeTree,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            TreeSpec::Named(_, n) => *n,
            TreeSpec::DoubleStar(a, b) => a + b + 2,
            TreeSpec::Free(g) => g.order(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            TreeSpec::Named(f, n) => {
                if *n < f.min_order() {
                    return Err(Error::BelowMinimum {
                        family: f.symbol().into(),
                        requirement: format!("n >= {}", f.min_order()),
                        got: format!("n = {n}"),
                    });
                }
            }
            TreeSpec::DoubleStar(n1, n2) => {
                if !(*n1 >= *n2 && *n2 >= 1) {
                    return Err(Error::BelowMinimum {
                        family: "S".into(),
                        requirement: "n1 >= n2 >= 1".into(),
                        got: format!("n1 = {n1}, n2 = {n2}"),
                    });
                }
            }
            TreeSpec::Free(g) => {
                if !g.is_tree() {
                    return Err(Error::NotATree(self.to_string()));
                }
            }
        }
        Ok(())
    }

    /// The labelled tree.
    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        let (n, edges, labels): (usize, Vec<(usize, usize)>, Vec<String>) = match *self {
            TreeSpec::Free(ref g) => return Ok(g.clone()),
            TreeSpec::DoubleStar(n1, n2) => {
                let w0 = n1 + 1;
                let mut e: Vec<_> = (1..=n1).map(|i| (0, i)).collect();
                e.push((0, w0));
                e.extend((1..=n2).map(|j| (w0, w0 + j)));
                let labels = (0..=n1).map(|i| format!("v{i}")).chain((0..=n2).map(|j| format!("w{j}"))).collect();
                (n1 + n2 + 2, e, labels)
            }
            TreeSpec::Named(f, n) => {
                let fan = |last: usize| (1..=last).map(|i| (0, i)).collect::<Vec<_>>();
                let e = match f {
                    Family::Path => (1..n).map(|i| (i - 1, i)).collect(),
                    Family::Star => fan(n - 1),
                    Family::TPrime => {
                        let mut e = fan(n - 3);
                        e.push((0, n - 2));
                        e.push((n - 2, n - 1));
                        e
                    }
                    Family::TStar => {
                        let mut e = fan(n - 3);
                        e.push((n - 3, n - 2));
                        e.push((n - 2, n - 1));
                        e
                    }
                    Family::T1 => {
                        let mut e = fan(n - 3);
                        e.push((n - 4, n - 2));
                        e.push((n - 3, n - 1));
                        e
                    }
                    Family::T2 => {
                        let mut e = fan(n - 3);
                        e.push((n - 3, n - 2));
                        e.push((n - 3, n - 1));
                        e
                    }
                    Family::T3 => return TreeSpec::DoubleStar((n - 5).max(3), (n - 5).min(3)).build().map(relabel_plain),
                    Family::TDoublePrime => {
                        let mut e = fan(n - 4);
                        e.extend([(1, n - 3), (1, n - 2), (2, n - 1)]);
                        e
                    }
                    Family::TTriplePrime => {
                        let mut e = fan(n - 4);
                        e.extend([(1, n - 3), (2, n - 2), (3, n - 1)]);
                        e
                    }
                    Family::DoubleStar | Family::FreeTree => unreachable!(),
                };
                (n, e, (0..n).map(|i| format!("v{i}")).collect())
            }
        };
        let g = Graph::from_edges(n, edges)?.with_labels(labels);
        debug_assert!(g.is_tree());
        Ok(g)
    }

    /// Maximum degree, by formula.
    pub fn max_degree(&self) -> Result<usize> {
        self.validate()?;
        Ok(match *self {
            TreeSpec::Free(ref g) => g.max_degree(),
            TreeSpec::DoubleStar(n1, _) => n1 + 1,
            TreeSpec::Named(f, n) => match f {
                Family::Path => (n - 1).min(2),
                Family::Star => n - 1,
                Family::TPrime => n - 2,
                Family::TStar | Family::T1 => n - 3,
                Family::T2 => (n - 3).max(3),
                Family::T3 => (n - 4).max(4),
                Family::TDoublePrime => (n - 4).max(3),
                Family::TTriplePrime if n == 6 => 2,
                Family::TTriplePrime => n - 4,
                Family::DoubleStar | Family::FreeTree => unreachable!(),
            },
        })
    }

    /// `K1_7`, `T''_13`, `S(5,2)`, or the graph6 text of a free tree.
    pub fn pretty(&self) -> String {
        match self {
            TreeSpec::Named(f, n) => format!("{}_{n}", f.symbol()),
            TreeSpec::DoubleStar(a, b) => format!("S({a},{b})"),
            TreeSpec::Free(g) => format!("T[{}]", graph6::encode(g)),
        }
    }
}

fn relabel_plain(g: Graph) -> Graph {
    let n = g.order();
    g.with_labels((0..n).map(|i| format!("v{i}")).collect())
}

impl fmt::Display for TreeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeSpec::Named(fam, n) => write!(f, "{}:{n}", fam.keyword()),
            TreeSpec::DoubleStar(a, b) => write!(f, "dstar:{a},{b}"),
            TreeSpec::Free(g) => write!(f, "free:g6:{}", graph6::encode(g)),
        }
    }
}

impl FromStr for TreeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(s.to_string());
        let (head, tail) = s.split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let spec = match head.trim().to_ascii_lowercase().as_str() {
            "dstar" => {
                let (a, b) = tail.split_once(',').ok_or_else(bad)?;
                TreeSpec::DoubleStar(num(a)?, num(b)?)
            }
            "free" => {
                let g6 = tail.strip_prefix("g6:").ok_or_else(bad)?;
                TreeSpec::free(graph6::decode(g6)?)?
            }
            other => {
                let fam = Family::SINGLE
                    .into_iter()
                    .find(|f| f.keyword() == other)
                    .ok_or_else(bad)?;
                TreeSpec::Named(fam, num(tail)?)
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl Serialize for TreeSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TreeSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn require_tree(t: &Graph) -> Result<()> {
    if t.is_tree() {
        Ok(())
    } else {
        Err(Error::NotATree(format!("order {} with {} edges", t.order(), t.edge_count())))
    }
}

/// Size of the larger colour class of the tree's bipartition.
pub fn alpha2(t: &Graph) -> Result<usize> {
    require_tree(t)?;
    let dist = t.distances_from(0);
    let even = dist.iter().filter(|&&d| d % 2 == 0).count();
    Ok(even.max(t.order() - even))
}

/// One or two centres, found by stripping leaves.
pub fn centers(t: &Graph) -> Vec<usize> {
    let n = t.order();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for u in t.neighborhood(leaf).expect("in range").iter() {
                if deg[u] > 1 {
                    deg[u] -= 1;
                    if deg[u] == 1 {
                        next.push(u);
                    }
                }
            }
            deg[leaf] = 0;
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn rooted_code(t: &Graph, root: usize) -> String {
    // iterative post-order to keep deep paths off the call stack
    let n = t.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for v in t.neighborhood(u).expect("in range").iter() {
            if parent[v] == usize::MAX {
                parent[v] = u;
                order.push(v);
            }
        }
    }
    let mut codes: Vec<Vec<String>> = vec![Vec::new(); n];
    let mut done = vec![String::new(); n];
    for &u in order.iter().rev() {
        let mut kids = std::mem::take(&mut codes[u]);
        kids.sort_unstable();
        let code = format!("({})", kids.concat());
        if u != root {
            codes[parent[u]].push(code);
        } else {
            done[u] = code;
        }
    }
    std::mem::take(&mut done[root])
}

/// Centre-rooted canonical encoding; equal iff isomorphic.
pub fn tree_code(t: &Graph) -> Result<String> {
    require_tree(t)?;
    Ok(centers(t).into_iter().map(|c| rooted_code(t, c)).min().unwrap_or_default())
}

pub fn tree_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    let (ca, cb) = (tree_code(a)?, tree_code(b)?);
    Ok(a.order() == b.order() && ca == cb)
}

/// Every named family member (and double star) isomorphic to the given tree.
pub fn recognize(t: &Graph) -> Result<Vec<TreeSpec>> {
    let code = tree_code(t)?;
    let n = t.order();
    let mut out = Vec::new();
    let mut candidates: Vec<TreeSpec> = Family::SINGLE
        .into_iter()
        .filter(|f| n >= f.min_order())
        .map(|f| TreeSpec::Named(f, n))
        .collect();
    if n >= 4 {
        candidates.extend((1..=(n - 2) / 2).map(|n2| TreeSpec::DoubleStar(n - 2 - n2, n2)));
    }
    let delta = t.max_degree();
    for c in candidates {
        if c.max_degree()? != delta {
            continue;
        }
        if tree_code(&c.build()?)? == code {
            out.push(c);
        }
    }
    Ok(out)
}

/// Expands a spec into itself plus every isomorphic named spec.
pub fn aliases(spec: &TreeSpec) -> Result<Vec<TreeSpec>> {
    let mut out = recognize(&spec.build()?)?;
    if !out.contains(spec) {
        out.insert(0, spec.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iso(a: &TreeSpec, b: &TreeSpec) -> bool {
        tree_isomorphic(&a.build().unwrap(), &b.build().unwrap()).unwrap()
    }

    #[test]
    fn tdp_degrees() {
        let d = TreeSpec::tdp(10).build().unwrap().degrees().unwrap();
        assert_eq!(d.sequence, vec![6, 3, 2, 1, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn family_identities() {
        assert!(iso(&TreeSpec::dstar(3, 1), &TreeSpec::tprime(6)));
        assert!(iso(&TreeSpec::t3(11), &TreeSpec::dstar(6, 3)));
        assert!(iso(&TreeSpec::t2(9), &TreeSpec::dstar(5, 2)));
        assert!(!iso(&TreeSpec::path(5), &TreeSpec::star(5)));
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(TreeSpec::tstar(9).max_degree().unwrap(), 6);
        assert_eq!(TreeSpec::star(4).max_degree().unwrap(), 3);
        assert_eq!(TreeSpec::dstar(5, 2).max_degree().unwrap(), 6);
    }

    #[test]
    fn alpha2_examples() {
        assert_eq!(alpha2(&Graph::path(4)).unwrap(), 2);
        assert_eq!(alpha2(&Graph::complete_bipartite(1, 4)).unwrap(), 4);
        assert_eq!(alpha2(&TreeSpec::dstar(3, 2).build().unwrap()).unwrap(), 4);
        assert!(alpha2(&Graph::cycle(4)).is_err());
    }

    #[test]
    fn minimums_enforced() {
        assert!(matches!(TreeSpec::named(Family::T3, 5), Err(Error::BelowMinimum { .. })));
        assert!(TreeSpec::dstar(1, 2).build().is_err());
        assert!(TreeSpec::named(Family::TStar, 5).is_ok());
    }

    #[test]
    fn spec_syntax_round_trip() {
        for s in ["path:10", "star:7", "tprime:9", "tstar:9", "t1:9", "t2:9", "t3:12", "tdp:12", "ttp:12", "dstar:5,2"] {
            let spec: TreeSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        let free: TreeSpec = "free:g6:Bg".parse().unwrap();
        assert_eq!(free.order(), 3);
        assert!("free:g6:Bw".parse::<TreeSpec>().is_err());
        assert!("blob:3".parse::<TreeSpec>().is_err());
        assert!("star:x".parse::<TreeSpec>().is_err());
    }

    #[test]
    fn recognize_double_star_aliases() {
        let found = recognize(&TreeSpec::t2(10).build().unwrap()).unwrap();
        assert!(found.contains(&TreeSpec::t2(10)));
        assert!(found.contains(&TreeSpec::dstar(6, 2)));
        let found = recognize(&TreeSpec::t3(15).build().unwrap()).unwrap();
        assert_eq!(found, vec![TreeSpec::t3(15), TreeSpec::dstar(10, 3)]);
    }

    #[test]
    fn centers_of_paths() {
        assert_eq!(centers(&Graph::path(5)), vec![2]);
        assert_eq!(centers(&Graph::path(6)), vec![2, 3]);
    }
}
