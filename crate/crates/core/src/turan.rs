//! Closed forms for `ex(p; T)`, the largest edge count of an order-`p` graph
//! with no copy of `T`, for every named family.
//!
//! Each evaluation records the formula it used (`citation`), the branch taken
//! inside that formula, and whether the parameters sit inside the formula's
//! stated range. Parameters outside every range give `OutOfDomain` values
//! rather than errors.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::trees::{aliases, Family, TreeSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExtremalKind {
    Exact,
    UpperBoundOnly,
    OutOfDomain,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalValue {
    pub tree: TreeSpec,
    pub p: u64,
    /// Zero when `kind` is `OutOfDomain`.
    pub value: u64,
    pub kind: ExtremalKind,
    pub citation: String,
    pub branch: String,
    /// `(k, r)` with `p = k(n-1) + r`, when the formula uses it.
    pub decomposition: Option<(u64, u64)>,
}

impl ExtremalValue {
    pub fn is_usable(&self) -> bool {
        self.kind != ExtremalKind::OutOfDomain
    }
}

/// `p = k(n-1) + r` with `k >= 1` and `0 <= r <= n-2`.
pub fn decompose(p: u64, n: u64) -> Result<(u64, u64)> {
    if n < 2 || p < n - 1 {
        return Err(Error::InvalidRange(format!("decompose needs p >= n-1 >= 1, got p={p}, n={n}")));
    }
    Ok((p / (n - 1), p % (n - 1)))
}

#[inline]
fn floor_half(x: i128) -> i128 {
    x.div_euclid(2)
}

#[inline]
fn floor_div(x: i128, d: i128) -> i128 {
    x.div_euclid(d)
}

/// `((n-2)p - r(n-1-r)) / 2`, the value attained by `k K_{n-1} ∪ K_r`-like graphs.
fn base(n: i128, p: i128, r: i128) -> i128 {
    let twice = (n - 2) * p - r * (n - 1 - r);
    debug_assert_eq!(twice.rem_euclid(2), 0);
    twice / 2
}

fn broom_excess(n: i128, r: i128) -> i128 {
    floor_half(r * (n - 4 - r) - 3 * (n - 1)).max(0)
}

struct Eval {
    value: i128,
    kind: ExtremalKind,
    citation: &'static str,
    branch: String,
}

fn exact(value: i128, citation: &'static str, branch: impl Into<String>) -> Eval {
    Eval {
        value,
        kind: ExtremalKind::Exact,
        citation,
        branch: branch.into(),
    }
}

fn out_of_domain(citation: &'static str, why: impl Into<String>) -> Eval {
    Eval {
        value: 0,
        kind: ExtremalKind::OutOfDomain,
        citation,
        branch: why.into(),
    }
}

/// Upper bound shared by `T''`, `T'''` and `T3` for `p >= n >= 10`.
pub fn ex_upper_210(n: u64, p: u64) -> Result<u64> {
    if n < 10 || p < n {
        return Err(Error::InvalidRange(format!("shared broom bound needs p >= n >= 10, got n={n}, p={p}")));
    }
    let (_, r) = decompose(p, n)?;
    let (n, p, r) = (n as i128, p as i128, r as i128);
    let cut = (2 * (n - 1 + r)).min(r * (n - 1 - r));
    Ok(floor_half((n - 2) * p - cut) as u64)
}

fn eval_named(family: Family, n: u64, p: u64) -> Eval {
    if n < 2 {
        return out_of_domain("ex-path", "n >= 2 required");
    }
    let (k, r) = decompose(p, n).expect("caller checked p >= n-1");
    let (ni, pi, ri) = (n as i128, p as i128, r as i128);
    match family {
        Family::Star => exact(floor_half((ni - 2) * pi), "ex-star", "floor((n-2)p/2)"),
        Family::Path => {
            let c = |x: i128| x * (x - 1) / 2;
            exact(k as i128 * c(ni - 1) + c(ri), "ex-path", "k*C(n-1,2)+C(r,2)")
        }
        Family::TPrime => {
            if n < 5 {
                return out_of_domain("ex-tprime", "n >= 5 required");
            }
            if n >= 7 && (2..=n - 4).contains(&r) {
                exact(floor_half((ni - 2) * (pi - 1) - ri - 1), "ex-tprime", "mid-residue")
            } else {
                exact(base(ni, pi, ri), "ex-tprime", "base")
            }
        }
        Family::T1 | Family::T2 => {
            if n < 5 {
                return out_of_domain("ex-t1t2", "n >= 5 required");
            }
            let first = floor_half((ni - 2) * pi) - (ni - 1 + ri);
            let second = base(ni, pi, ri);
            if first >= second {
                exact(first, "ex-t1t2", "degree-deficit")
            } else {
                exact(second, "ex-t1t2", "base")
            }
        }
        Family::TDoublePrime | Family::TTriplePrime => {
            if n < 10 {
                return out_of_domain("ex-broom", "n >= 10 required");
            }
            exact(base(ni, pi, ri) + broom_excess(ni, ri), "ex-broom", "base+excess")
        }
        Family::T3 => eval_t3(n, p, r),
        Family::TStar => eval_tstar(n, p, r),
        Family::DoubleStar | Family::FreeTree => unreachable!(),
    }
}

fn eval_t3(n: u64, p: u64, r: u64) -> Eval {
    if n < 10 {
        return out_of_domain("ex-t3", "n >= 10 required");
    }
    let (ni, pi, ri) = (n as i128, p as i128, r as i128);
    if r <= 2 || r >= n - 6 {
        return exact(base(ni, pi, ri), "ex-t3", "low-high-residue");
    }
    if n >= 15 {
        if (3..=n - 9).contains(&r) {
            return exact(base(ni, pi, ri) + broom_excess(ni, ri), "ex-t3", "broom-form");
        }
        if r == n - 8 {
            let v = ((ni - 2) * pi - 7 * ni + 30) / 2 + (ni / 2).max(13);
            return exact(v, "ex-t3", "r=n-8");
        }
        if r == n - 7 {
            let v = ((ni - 2) * pi - 6 * (ni - 7)) / 2 + floor_div(ni - 37, 4).max(0);
            return exact(v, "ex-t3", "r=n-7");
        }
    }
    Eval {
        value: ex_upper_210(n, p).expect("n >= 10 and p >= n") as i128,
        kind: ExtremalKind::UpperBoundOnly,
        citation: "ex-broom-upper",
        branch: "residue not covered exactly".into(),
    }
}

fn eval_tstar(n: u64, p: u64, r: u64) -> Eval {
    let (ni, pi, ri) = (n as i128, p as i128, r as i128);
    if n >= 6 && (r <= 1 || r + 5 >= n) {
        if n > 6 && r == n - 5 {
            return exact((ni - 2) * (pi - 2) / 2 + 1, "ex-tstar-edge", "r=n-5");
        }
        return exact(base(ni, pi, ri), "ex-tstar-edge", "base");
    }
    if n >= 11 && (2..=n - 6).contains(&r) {
        let t = (ni - 3).rem_euclid(ri + 2);
        if r >= 4 && (2..=ri - 1).contains(&t) {
            let v = floor_half((ni - 2) * (pi - 1) - 2 * ri - t - 3);
            return exact(v, "ex-tstar-mid", format!("t={t} inner"));
        }
        let v = floor_half((ni - 2) * (pi - 1) - t * (ri + 2 - t) - ri - 1);
        return exact(v, "ex-tstar-mid", format!("t={t} outer"));
    }
    out_of_domain("ex-tstar-edge", format!("residue r={r} not covered for n={n}"))
}

fn minimum_p(spec: &TreeSpec) -> u64 {
    let n = spec.order() as u64;
    if spec.family() == Family::Star {
        n - 1
    } else {
        n
    }
}

/// Evaluates `ex(p; spec)`.
///
/// Double stars, free trees and small family members are matched to every
/// isomorphic named family; the first in-range formula wins, with the
/// spec's own family tried first.
pub fn ex_eval(spec: &TreeSpec, p: u64) -> Result<ExtremalValue> {
    spec.validate()?;
    let min_p = minimum_p(spec);
    if p < min_p {
        return Err(Error::BelowMinimum {
            family: spec.pretty(),
            requirement: format!("p >= {min_p}"),
            got: format!("p = {p}"),
        });
    }
    let n = spec.order() as u64;
    let mut candidates = aliases(spec)?;
    // the spec's own family first, stars last since they accept the smallest p
    candidates.sort_by_key(|c| (c != spec, c.family() == Family::Star));
    let mut fallback: Option<Eval> = None;
    let mut fallback_first: Option<Eval> = None;
    for c in candidates {
        let TreeSpec::Named(f, _) = c else { continue };
        if p < minimum_p(&c) {
            continue;
        }
        let e = eval_named(f, n, p);
        match e.kind {
            ExtremalKind::Exact => return Ok(finish(spec, p, n, e)),
            ExtremalKind::UpperBoundOnly => {
                if fallback.as_ref().is_none_or(|b| e.value < b.value) {
                    fallback = Some(e);
                }
            }
            ExtremalKind::OutOfDomain => {
                fallback_first.get_or_insert(e);
            }
        }
    }
    let e = fallback
        .or(fallback_first)
        .unwrap_or_else(|| out_of_domain("none", "no closed form for this tree"));
    Ok(finish(spec, p, n, e))
}

fn finish(spec: &TreeSpec, p: u64, n: u64, e: Eval) -> ExtremalValue {
    let decomposition = if e.kind == ExtremalKind::OutOfDomain || e.citation == "none" {
        None
    } else {
        decompose(p, n).ok()
    };
    debug_assert!(e.value >= 0 && e.value as u64 <= p * p.saturating_sub(1) / 2);
    ExtremalValue {
        tree: spec.clone(),
        p,
        value: e.value as u64,
        kind: e.kind,
        citation: e.citation.to_string(),
        branch: e.branch,
        decomposition,
    }
}

/// The two special orders for `T3`: `(ex(2n-9), ex(2n-8))` by their direct
/// closed forms, for `n >= 15`.
pub fn t3_special_orders(n: u64) -> Option<(u64, u64)> {
    if n < 15 {
        return None;
    }
    let ni = n as i128;
    let a = ni * ni - 10 * ni + 24 + (ni / 2).max(13);
    let b = ni * ni - 9 * ni + 29 + floor_div(ni - 37, 4).max(0);
    Some((a as u64, b as u64))
}

/// Checks that the `T3` residue branches never overlap and cover every
/// residue for `15 <= n <= n_max`. Returns the offending `(n, r)` if not.
pub fn check_t3_branches(n_max: u64) -> std::result::Result<(), (u64, u64)> {
    for n in 15..=n_max {
        for r in 0..=n - 2 {
            let hits = [
                r <= 2 || r >= n - 6,
                (3..=n - 9).contains(&r),
                r == n - 8,
                r == n - 7,
            ];
            if hits.iter().filter(|&&h| h).count() != 1 {
                return Err((n, r));
            }
        }
    }
    Ok(())
}

/// Where both `T'` branches could be read to apply (`r = 2` or `r = n-4`,
/// `n >= 7`): both expressions side by side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryRow {
    pub n: u64,
    pub p: u64,
    pub r: u64,
    pub mid_residue: i64,
    pub base: i64,
    pub agree: bool,
}

pub fn tprime_boundary_rows(n_range: std::ops::RangeInclusive<u64>, k_max: u64) -> Vec<BoundaryRow> {
    let mut rows = Vec::new();
    for n in n_range.filter(|&n| n >= 7) {
        let mut rs = vec![2, n - 4];
        rs.dedup();
        for k in 1..=k_max {
            for &r in &rs {
                let p = k * (n - 1) + r;
                let (ni, pi, ri) = (n as i128, p as i128, r as i128);
                let mid = floor_half((ni - 2) * (pi - 1) - ri - 1) as i64;
                let b = base(ni, pi, ri) as i64;
                rows.push(BoundaryRow {
                    n,
                    p,
                    r,
                    mid_residue: mid,
                    base: b,
                    agree: mid == b,
                });
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(spec: TreeSpec, p: u64) -> ExtremalValue {
        ex_eval(&spec, p).unwrap()
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(11, 10).unwrap(), (1, 2));
        assert_eq!(decompose(21, 15).unwrap(), (1, 7));
        assert_eq!(decompose(18, 10).unwrap(), (2, 0));
        assert!(decompose(7, 10).is_err());
    }

    #[test]
    fn small_examples() {
        let v = ex(TreeSpec::star(4), 5);
        assert_eq!((v.value, v.kind), (5, ExtremalKind::Exact));
        assert_eq!(ex(TreeSpec::path(4), 7).value, 6);
        let v = ex(TreeSpec::tprime(7), 9);
        assert_eq!((v.value, v.branch.as_str()), (18, "mid-residue"));
        let v = ex(TreeSpec::tdp(10), 11);
        assert_eq!((v.value, v.kind, v.decomposition), (37, ExtremalKind::Exact, Some((1, 2))));
    }

    #[test]
    fn t3_at_r_equal_n_minus_8() {
        let v = ex(TreeSpec::t3(15), 21);
        assert_eq!((v.value, v.branch.as_str()), (112, "r=n-8"));
    }

    #[test]
    fn broom_below_ten_is_out_of_domain() {
        let v = ex(TreeSpec::tdp(9), 12);
        assert_eq!(v.kind, ExtremalKind::OutOfDomain);
        assert_eq!(v.citation, "ex-broom");
    }

    #[test]
    fn below_minimum_p_is_an_error() {
        assert!(matches!(ex_eval(&TreeSpec::tdp(10), 9), Err(Error::BelowMinimum { .. })));
        assert!(ex_eval(&TreeSpec::star(5), 4).is_ok());
        assert!(ex_eval(&TreeSpec::t1(6), 5).is_err());
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(ex_upper_210(10, 12).unwrap(), 39);
        assert_eq!(ex_upper_210(10, 18).unwrap(), 72);
        assert_eq!(ex_upper_210(10, 11).unwrap(), 37);
        assert!(ex_upper_210(9, 12).is_err());
    }

    #[test]
    fn special_orders_match_residue_branches() {
        for n in 15..=200u64 {
            let (a, b) = t3_special_orders(n).unwrap();
            assert_eq!(ex(TreeSpec::t3(n as usize), 2 * n - 9).value, a, "n={n}");
            assert_eq!(ex(TreeSpec::t3(n as usize), 2 * n - 8).value, b, "n={n}");
        }
    }

    #[test]
    fn t3_branches_partition_residues() {
        assert_eq!(check_t3_branches(200), Ok(()));
    }

    #[test]
    fn t3_gap_falls_back_to_shared_bound() {
        let v = ex(TreeSpec::t3(10), 12);
        assert_eq!(v.kind, ExtremalKind::UpperBoundOnly);
        assert_eq!(v.value, ex_upper_210(10, 12).unwrap());
    }

    #[test]
    fn double_stars_use_family_formulas() {
        let (a, b) = (ex(TreeSpec::dstar(6, 2), 15), ex(TreeSpec::t2(10), 15));
        assert_eq!((a.value, a.citation), (b.value, b.citation));
        assert_eq!(ex(TreeSpec::ttp(6), 8).citation, "ex-path");
        assert_eq!(ex(TreeSpec::dstar(3, 3), 9).kind, ExtremalKind::OutOfDomain);
    }

    #[test]
    fn t1t2_branch_split() {
        // the literal max agrees with the case split
        for n in 16..=60u64 {
            for r in 3..=n - 6 {
                let v = ex(TreeSpec::t1(n as usize), 2 * (n - 1) + r);
                assert_eq!(v.branch, "degree-deficit", "n={n} r={r}");
            }
        }
    }

    #[test]
    fn tprime_boundary_table() {
        let rows = tprime_boundary_rows(7..=9, 2);
        assert_eq!(rows.len(), 3 * 2 * 2);
        assert!(rows.iter().any(|r| r.n == 7 && r.r == 2 && r.agree));
    }
}
