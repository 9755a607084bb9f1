//! Ramsey numbers `r(G1, G2)` for pairs of trees: a table of closed-form
//! results with exact hypothesis checks, plus the generic tools behind them
//! (degree lower bounds, the edge-count upper certificate, two-coin
//! representability) and an audit that recomputes each result's arithmetic.

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::trees::{aliases, Family, TreeSpec};
use crate::turan::{ex_eval, ExtremalKind, ExtremalValue};

type Q = Ratio<i128>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    Exact { value: u64 },
    Range { lo: u64, hi: u64 },
    NotCovered,
}

impl Outcome {
    pub fn exact(&self) -> Option<u64> {
        match *self {
            Outcome::Exact { value } => Some(value),
            _ => None,
        }
    }

    fn interval(&self) -> Option<(u64, u64)> {
        match *self {
            Outcome::Exact { value } => Some((value, value)),
            Outcome::Range { lo, hi } => Some((lo, hi)),
            Outcome::NotCovered => None,
        }
    }

    /// `"17"`, `"42..43"` or `"NC"`.
    pub fn short(&self) -> String {
        match *self {
            Outcome::Exact { value } => value.to_string(),
            Outcome::Range { lo, hi } => format!("{lo}..{hi}"),
            Outcome::NotCovered => "NC".into(),
        }
    }
}

/// One hypothesis of a table row, evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cond {
    pub text: String,
    pub holds: bool,
}

/// A table row whose family pattern matched, with its hypotheses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub citation: String,
    pub left: TreeSpec,
    pub right: TreeSpec,
    pub parameters: String,
    pub hypotheses: Vec<Cond>,
    pub holds: bool,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamseyResult {
    pub a: TreeSpec,
    pub b: TreeSpec,
    pub outcome: Outcome,
    pub citations: Vec<String>,
    pub conditions: Vec<RowCheck>,
    /// Two applicable rows gave incompatible values.
    pub conflict: bool,
}

/// Parameters seen by a row: `m` is the left order, `n` the right order,
/// `(n1, n2)` the arms when the right tree is a double star.
#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub m: i128,
    pub n: i128,
    pub n1: i128,
    pub n2: i128,
}

struct Hyp {
    conds: Vec<Cond>,
}

impl Hyp {
    fn new() -> Self {
        Hyp { conds: Vec::new() }
    }

    fn check(&mut self, text: &str, holds: bool) -> &mut Self {
        self.conds.push(Cond {
            text: text.to_string(),
            holds,
        });
        self
    }

    fn ok(&self) -> bool {
        self.conds.iter().all(|c| c.holds)
    }
}

fn q(x: i128) -> Q {
    Q::from_integer(x)
}

/// `num / den`, or `None` when the denominator is not positive.
fn frac(num: i128, den: i128) -> Option<Q> {
    (den > 0).then(|| Q::new(num, den))
}

fn gt(lhs: i128, rhs: Option<Q>) -> bool {
    rhs.is_some_and(|r| q(lhs) > r)
}

fn divides(d: i128, x: i128) -> bool {
    d != 0 && x.rem_euclid(d) == 0
}

fn ex(v: i128) -> Outcome {
    Outcome::Exact { value: v as u64 }
}

/// Which left order the row pairs with a right order of `n` (for audits).
#[derive(Debug, Clone, Copy)]
pub enum Tie {
    Free,
    Same,
    Minus(i128),
}

pub struct Row {
    pub citation: &'static str,
    pub left: &'static [Family],
    pub right: &'static [Family],
    pub tie: Tie,
    eval: fn(&Ctx, &mut Hyp) -> Outcome,
}

use Family::*;

const STAR: &[Family] = &[Star];
const BROOM: &[Family] = &[TDoublePrime, TTriplePrime, T3];
const TDP_TTP: &[Family] = &[TDoublePrime, TTriplePrime];
const T1T2: &[Family] = &[T1, T2];
const STAR_LIKE: &[Family] = &[TStar, T1, T2];
const EIGHT: &[Family] = &[Path, TPrime, TStar, T1, T2, T3, TDoublePrime, TTriplePrime];

fn star_star(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("m, n >= 3", c.m >= 3 && c.n >= 3);
    if (c.m * c.n).is_odd() {
        h.check("mn odd", true);
        ex(c.m + c.n - 3)
    } else {
        h.check("mn even", true);
        ex(c.m + c.n - 2)
    }
}

fn star_tprime(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("n > m >= 4", c.n > c.m && c.m >= 4);
    if (c.m * (c.n - 1)).is_even() {
        h.check("m(n-1) even", true);
        ex(c.m + c.n - 3)
    } else {
        h.check("m(n-1) odd", true);
        ex(c.m + c.n - 4)
    }
}

fn star_tstar(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("n > m >= 7", c.n > c.m && c.m >= 7);
    if divides(c.m - 1, c.n - 3) {
        h.check("m-1 | n-3", true);
        ex(c.m + c.n - 3)
    } else {
        h.check("m-1 does not divide n-3", true);
        ex(c.m + c.n - 4)
    }
}

fn star_t1t2_even(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("n > m >= 7", c.n > c.m && c.m >= 7)
        .check("mn even", (c.m * c.n).is_even());
    ex(c.m + c.n - 4)
}

fn star_dstar_even(c: &Ctx, h: &mut Hyp) -> Outcome {
    let (m, n1, n2) = (c.m, c.n1, c.n2);
    h.check("n1 >= m-2 >= n2 >= 2", n1 >= m - 2 && m - 2 >= n2 && n2 >= 2)
        .check("m*n1 even", (m * n1).is_even())
        .check(
            "n1 > m-5+n2+(n2-1)(n2-2)/(m-1-n2)",
            gt(n1, frac((n2 - 1) * (n2 - 2), m - 1 - n2).map(|f| f + q(m - 5 + n2))),
        );
    ex(m + n1)
}

fn star_dstar_odd(c: &Ctx, h: &mut Hyp) -> Outcome {
    let (m, n1, n2) = (c.m, c.n1, c.n2);
    h.check("n1 >= m-2 > n2", n1 >= m - 2 && m - 2 > n2)
        .check("m*n1 odd", (m * n1).is_odd())
        .check(
            "n1 > m-5+n2+(n2-1)^2/(m-2-n2)",
            gt(n1, frac((n2 - 1) * (n2 - 1), m - 2 - n2).map(|f| f + q(m - 5 + n2))),
        );
    ex(m - 1 + n1)
}

fn star_t1t2_odd(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("n > m >= 6", c.n > c.m && c.m >= 6)
        .check("mn odd", (c.m * c.n).is_odd());
    ex(c.m + c.n - 5)
}

fn star_t2_even(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("n-2 >= m >= 4", c.n - 2 >= c.m && c.m >= 4)
        .check("mn even", (c.m * c.n).is_even());
    ex(c.m + c.n - 4)
}

fn star_t3_even(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("m >= 5", c.m >= 5)
        .check("n > m+3+2/(m-4)", gt(c.n, frac(2, c.m - 4).map(|f| f + q(c.m + 3))))
        .check("m(n-1) even", (c.m * (c.n - 1)).is_even());
    ex(c.m + c.n - 5)
}

fn star_t2_odd(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("m >= 5", c.m >= 5)
        .check("n >= m+2+[5/m]", c.m > 0 && c.n >= c.m + 2 + 5 / c.m)
        .check("mn odd", (c.m * c.n).is_odd());
    ex(c.m + c.n - 5)
}

fn star_t3_odd(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("m >= 6", c.m >= 6)
        .check("n > m+3+4/(m-5)", gt(c.n, frac(4, c.m - 5).map(|f| f + q(c.m + 3))))
        .check("m(n-1) odd", (c.m * (c.n - 1)).is_odd());
    ex(c.m + c.n - 6)
}

fn star_broom_even(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("n >= 15", c.n >= 15)
        .check("m >= 7", c.m >= 7)
        .check("n > m+1+8/(m-6)", gt(c.n, frac(8, c.m - 6).map(|f| f + q(c.m + 1))))
        .check("m(n-1) even", (c.m * (c.n - 1)).is_even());
    ex(c.m + c.n - 5)
}

fn star_broom_n_2(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("m = n-2", c.m == c.n - 2).check("n >= 17", c.n >= 17);
    ex(2 * c.n - 7)
}

fn star_broom_odd(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("m >= 6", c.m >= 6)
        .check("n >= m+3", c.n >= c.m + 3)
        .check("m(n-1) odd", (c.m * (c.n - 1)).is_odd());
    ex(c.m + c.n - 6)
}

fn star_t3_n_3(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("m = n-3", c.m == c.n - 3).check("n >= 15", c.n >= 15);
    ex(2 * c.n - 8)
}

fn star_broom_n_1(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("m = n-1", c.m == c.n - 1).check("n >= 10", c.n >= 10);
    ex(2 * c.n - 5)
}

fn intro_star_dstar(c: &Ctx, h: &mut Hyp) -> Outcome {
    if (c.m * c.n1).is_even() {
        star_dstar_even(c, h)
    } else {
        star_dstar_odd(c, h)
    }
}

fn intro_star_t1_odd(c: &Ctx, h: &mut Hyp) -> Outcome {
    star_t1t2_odd(c, h)
}

fn intro_star_broom(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("n >= 15", c.n >= 15).check("m >= 7", c.m >= 7);
    if (c.m * (c.n - 1)).is_even() {
        h.check("m(n-1) even", true)
            .check("n > m+1+8/(m-6)", gt(c.n, frac(8, c.m - 6).map(|f| f + q(c.m + 1))));
        ex(c.m + c.n - 5)
    } else {
        h.check("m(n-1) odd", true)
            .check("n > m+3+4/(m-5)", gt(c.n, frac(4, c.m - 5).map(|f| f + q(c.m + 3))));
        ex(c.m + c.n - 6)
    }
}

fn tprime_gap(c: &Ctx) -> Option<Q> {
    let eleven = frac(11, c.m - 8)?;
    Some(q(c.m + 1) + eleven.max(q(3)))
}

fn tprime_broom(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("m >= 9", c.m >= 9)
        .check("n > m+1+max{3, 11/(m-8)}", gt(c.n, tprime_gap(c)));
    if divides(c.m - 1, c.n - 5) {
        h.check("m-1 | n-5", true);
        ex(c.m + c.n - 5)
    } else {
        h.check("m-1 does not divide n-5", true);
        ex(c.m + c.n - 6)
    }
}

fn tstar_broom(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("n >= 15", c.n >= 15)
        .check("m >= 9", c.m >= 9)
        .check("m-1 does not divide n-5", !divides(c.m - 1, c.n - 5))
        .check("n >= (m-3)^2+4", c.n >= (c.m - 3) * (c.m - 3) + 4);
    ex(c.m + c.n - 6)
}

fn broom_broom(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("m = n", c.m == c.n);
    if c.n.is_even() {
        h.check("n even", true).check("n >= 10", c.n >= 10);
        ex(2 * c.n - 9)
    } else {
        h.check("n odd", true).check("n > 22", c.n > 22);
        ex(2 * c.n - 8)
    }
}

fn t3_broom(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("m = n", c.m == c.n).check("n > 22", c.n > 22);
    ex(2 * c.n - 8)
}

fn broom_tprime(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("m = n", c.m == c.n).check("n >= 10", c.n >= 10);
    ex(2 * c.n - 5)
}

fn broom_t1t2(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("m = n", c.m == c.n).check("n > 16", c.n > 16);
    ex(2 * c.n - 7)
}

fn broom_tstar(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("m = n", c.m == c.n).check("n >= 10", c.n >= 10);
    ex(2 * c.n - 5)
}

fn broom_star(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("m = n", c.m == c.n).check("n >= 6", c.n >= 6);
    ex(2 * c.n - 3)
}

fn path_tdp_ttp(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("m = n", c.m == c.n).check("n >= 30", c.n >= 30);
    ex(2 * c.n - 9)
}

fn path_t3(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("m = n", c.m == c.n).check("n >= 33", c.n >= 33);
    ex(2 * c.n - 9)
}

fn family_broom_divisible(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("n >= 15", c.n >= 15)
        .check("m >= 9", c.m >= 9)
        .check("m-1 | n-5", divides(c.m - 1, c.n - 5));
    ex(c.m + c.n - 5)
}

fn tprime_broom_general(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("m >= 9", c.m >= 9)
        .check("n > m+1+max{3, 11/(m-8)}", gt(c.n, tprime_gap(c)))
        .check("m-1 does not divide n-5", !divides(c.m - 1, c.n - 5));
    ex(c.m + c.n - 6)
}

fn tprime_n_3_tdp_ttp(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("m = n-3", c.m == c.n - 3).check("n >= 10", c.n >= 10);
    ex(2 * c.n - 9)
}

fn tprime_n_3_t3(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("m = n-3", c.m == c.n - 3).check("n >= 15", c.n >= 15);
    ex(2 * c.n - 9)
}

fn broom_tprime_tstar(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("n > m >= 10", c.n > c.m && c.m >= 10);
    if divides(c.m - 1, c.n - 3) {
        h.check("m-1 | n-3", true);
        ex(c.m + c.n - 3)
    } else {
        h.check("m-1 does not divide n-3", true)
            .check("n >= (m-3)^2+2", c.n >= (c.m - 3) * (c.m - 3) + 2);
        ex(c.m + c.n - 4)
    }
}

fn tstar_family_broom(c: &Ctx, h: &mut Hyp) -> Outcome {
    h.check("n >= 15", c.n >= 15)
        .check("m >= 9", c.m >= 9)
        .check("m-1 does not divide n-5", !divides(c.m - 1, c.n - 5))
        .check("n > m+1+12/(m-8)", gt(c.n, frac(12, c.m - 8).map(|f| f + q(c.m + 1))));
    let lo = c.m + c.n - 7;
    let hi = c.m + c.n - 6;
    let square = c.n >= (c.m - 3) * (c.m - 3) + 4;
    let rep = c.m >= 3 && lo >= 0 && frobenius_rep((c.m - 1) as u64, (c.m - 2) as u64, lo as u64).is_some();
    if square || rep {
        h.check(
            if square { "n >= (m-3)^2+4" } else { "m+n-7 = (m-1)x+(m-2)y" },
            true,
        );
        ex(hi)
    } else {
        Outcome::Range {
            lo: lo as u64,
            hi: hi as u64,
        }
    }
}

/// The table, in display order.
pub static TABLE: &[Row] = &[
    Row { citation: "star-star", left: STAR, right: STAR, tie: Tie::Free, eval: star_star },
    Row { citation: "star-tprime", left: STAR, right: &[TPrime], tie: Tie::Free, eval: star_tprime },
    Row { citation: "star-tstar", left: STAR, right: &[TStar], tie: Tie::Free, eval: star_tstar },
    Row { citation: "star-t1t2-even", left: STAR, right: T1T2, tie: Tie::Free, eval: star_t1t2_even },
    Row { citation: "star-dstar-even", left: STAR, right: &[DoubleStar], tie: Tie::Free, eval: star_dstar_even },
    Row { citation: "star-dstar-odd", left: STAR, right: &[DoubleStar], tie: Tie::Free, eval: star_dstar_odd },
    Row { citation: "star-t1t2-odd", left: STAR, right: T1T2, tie: Tie::Free, eval: star_t1t2_odd },
    Row { citation: "star-t2-even", left: STAR, right: &[T2], tie: Tie::Free, eval: star_t2_even },
    Row { citation: "star-t3-even", left: STAR, right: &[T3], tie: Tie::Free, eval: star_t3_even },
    Row { citation: "star-t2-odd", left: STAR, right: &[T2], tie: Tie::Free, eval: star_t2_odd },
    Row { citation: "star-t3-odd", left: STAR, right: &[T3], tie: Tie::Free, eval: star_t3_odd },
    Row { citation: "star-broom-even", left: STAR, right: BROOM, tie: Tie::Free, eval: star_broom_even },
    Row { citation: "star-broom-n-2", left: STAR, right: BROOM, tie: Tie::Minus(2), eval: star_broom_n_2 },
    Row { citation: "star-broom-odd", left: STAR, right: TDP_TTP, tie: Tie::Free, eval: star_broom_odd },
    Row { citation: "star-t3-n-3", left: STAR, right: &[T3], tie: Tie::Minus(3), eval: star_t3_n_3 },
    Row { citation: "star-broom-n-1", left: STAR, right: BROOM, tie: Tie::Minus(1), eval: star_broom_n_1 },
    Row { citation: "intro-star-dstar", left: STAR, right: &[DoubleStar], tie: Tie::Free, eval: intro_star_dstar },
    Row { citation: "intro-star-t1-odd", left: STAR, right: &[T1], tie: Tie::Free, eval: intro_star_t1_odd },
    Row { citation: "intro-star-broom", left: STAR, right: TDP_TTP, tie: Tie::Free, eval: intro_star_broom },
    Row { citation: "tprime-broom", left: &[TPrime], right: BROOM, tie: Tie::Free, eval: tprime_broom },
    Row { citation: "tstar-broom", left: STAR_LIKE, right: BROOM, tie: Tie::Free, eval: tstar_broom },
    Row { citation: "broom-broom", left: TDP_TTP, right: TDP_TTP, tie: Tie::Same, eval: broom_broom },
    Row { citation: "t3-broom", left: &[T3], right: BROOM, tie: Tie::Same, eval: t3_broom },
    Row { citation: "broom-tprime", left: BROOM, right: &[TPrime], tie: Tie::Same, eval: broom_tprime },
    Row { citation: "broom-t1t2", left: BROOM, right: T1T2, tie: Tie::Same, eval: broom_t1t2 },
    Row { citation: "broom-tstar", left: BROOM, right: &[TStar], tie: Tie::Same, eval: broom_tstar },
    Row { citation: "broom-star", left: BROOM, right: STAR, tie: Tie::Same, eval: broom_star },
    Row { citation: "path-broom", left: &[Path], right: TDP_TTP, tie: Tie::Same, eval: path_tdp_ttp },
    Row { citation: "path-broom", left: &[Path], right: &[T3], tie: Tie::Same, eval: path_t3 },
    Row { citation: "family-broom-divisible", left: EIGHT, right: BROOM, tie: Tie::Free, eval: family_broom_divisible },
    Row { citation: "tprime-broom-general", left: &[TPrime], right: BROOM, tie: Tie::Free, eval: tprime_broom_general },
    Row { citation: "tprime-n-3-broom", left: &[TPrime], right: TDP_TTP, tie: Tie::Minus(3), eval: tprime_n_3_tdp_ttp },
    Row { citation: "tprime-n-3-broom", left: &[TPrime], right: &[T3], tie: Tie::Minus(3), eval: tprime_n_3_t3 },
    Row { citation: "broom-tprime-tstar", left: BROOM, right: &[TPrime, TStar], tie: Tie::Free, eval: broom_tprime_tstar },
    Row { citation: "tstar-family-broom", left: STAR_LIKE, right: BROOM, tie: Tie::Free, eval: tstar_family_broom },
];

fn ctx(l: &TreeSpec, r: &TreeSpec) -> Ctx {
    let (n1, n2) = match r {
        TreeSpec::DoubleStar(a, b) => (*a as i128, *b as i128),
        _ => (0, 0),
    };
    Ctx {
        m: l.order() as i128,
        n: r.order() as i128,
        n1,
        n2,
    }
}

fn params(c: &Ctx, r: &TreeSpec) -> String {
    match r {
        TreeSpec::DoubleStar(..) => format!("m={}, n1={}, n2={}", c.m, c.n1, c.n2),
        _ => format!("m={}, n={}", c.m, c.n),
    }
}

/// Evaluates one row on an ordered pair; `None` if the families do not fit.
pub fn eval_row(row: &Row, l: &TreeSpec, r: &TreeSpec) -> Option<RowCheck> {
    if !row.left.contains(&l.family()) || !row.right.contains(&r.family()) {
        return None;
    }
    let c = ctx(l, r);
    let mut h = Hyp::new();
    let outcome = (row.eval)(&c, &mut h);
    Some(RowCheck {
        citation: row.citation.to_string(),
        left: l.clone(),
        right: r.clone(),
        parameters: params(&c, r),
        holds: h.ok(),
        hypotheses: h.conds,
        outcome,
    })
}

/// Looks the pair up in the table. Symmetric in its arguments.
pub fn ramsey_eval(a: &TreeSpec, b: &TreeSpec) -> Result<RamseyResult> {
    a.validate()?;
    b.validate()?;
    let (x, y) = if a.to_string() <= b.to_string() { (a, b) } else { (b, a) };
    let (ax, ay) = (aliases(x)?, aliases(y)?);
    let mut checks: Vec<RowCheck> = Vec::new();
    for row in TABLE {
        for (ls, rs) in [(&ax, &ay), (&ay, &ax)] {
            for l in ls.iter() {
                for r in rs.iter() {
                    if let Some(c) = eval_row(row, l, r) {
                        if !checks.contains(&c) {
                            checks.push(c);
                        }
                    }
                }
            }
        }
    }
    let mut citations: Vec<String> = Vec::new();
    let mut window: Option<(u64, u64)> = None;
    let mut conflict = false;
    for c in checks.iter().filter(|c| c.holds) {
        if !citations.contains(&c.citation) {
            citations.push(c.citation.clone());
        }
        let (lo, hi) = c.outcome.interval().expect("rows yield values");
        window = match window {
            None => Some((lo, hi)),
            Some((a, b)) => {
                let (nlo, nhi) = (a.max(lo), b.min(hi));
                if nlo > nhi {
                    conflict = true;
                    Some((a, b))
                } else {
                    Some((nlo, nhi))
                }
            }
        };
    }
    let outcome = match window {
        None => Outcome::NotCovered,
        Some((lo, hi)) if lo == hi => Outcome::Exact { value: lo },
        Some((lo, hi)) => Outcome::Range { lo, hi },
    };
    Ok(RamseyResult {
        a: a.clone(),
        b: b.clone(),
        outcome,
        citations,
        conditions: checks,
        conflict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBound {
    pub value: u64,
    /// `degree-bound-i`, `-ii` or `-iii`.
    pub case: String,
    /// The tree playing the connected order-`m` role in cases ii and iii.
    pub first: TreeSpec,
}

/// Both `u, v` with `d(v) = Δ` and `dist(u, v) = 3` exist.
fn has_max_vertex_at_distance_three(spec: &TreeSpec) -> Result<bool> {
    let t = spec.build()?;
    let delta = t.max_degree();
    Ok((0..t.order())
        .filter(|&v| t.degree(v) == delta)
        .any(|v| t.distances_from(v).contains(&3)))
}

/// Best of the degree-based lower bounds over both orientations.
pub fn lower_bound_23(a: &TreeSpec, b: &TreeSpec) -> Result<Option<LowerBound>> {
    let (da, db) = (a.max_degree()? as i128, b.max_degree()? as i128);
    if da < 2 || db < 2 {
        return Ok(None);
    }
    let parity = ((da - 1) * (db - 1)).rem_euclid(2);
    let mut best = LowerBound {
        value: (da + db - parity) as u64,
        case: "degree-bound-i".into(),
        first: a.clone(),
    };
    for (g1, g2, d1, d2) in [(a, b, da, db), (b, a, db, da)] {
        let m = g1.order() as i128;
        if d1 < d2 && d2 <= m && (2 * d2 - 1) as u64 > best.value {
            best = LowerBound {
                value: (2 * d2 - 1) as u64,
                case: "degree-bound-ii".into(),
                first: g1.clone(),
            };
        }
        if d2 > m
            && ((d1 + d2 - m).is_even() || d1 != m - 1 || has_max_vertex_at_distance_three(g2)?)
            && (d1 + d2) as u64 > best.value
        {
            best = LowerBound {
                value: (d1 + d2) as u64,
                case: "degree-bound-iii".into(),
                first: g1.clone(),
            };
        }
    }
    Ok(Some(best))
}

/// Edge-count certificate: `ex(p; a) + ex(p; b) < C(p, 2)` gives `r(a, b) <= p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpperCertificate {
    pub p: u64,
    pub ex_a: Option<ExtremalValue>,
    pub ex_b: Option<ExtremalValue>,
    pub sum: Option<u64>,
    pub choose_p_2: u64,
    /// Both edge bounds are available at `p`.
    pub constructible: bool,
    pub holds: bool,
    /// Formulas the verdict depends on.
    pub conditional_on: Vec<String>,
    pub note: String,
}

pub fn upper_cert_21(a: &TreeSpec, b: &TreeSpec, p: u64) -> Result<UpperCertificate> {
    a.validate()?;
    b.validate()?;
    let choose = p * p.saturating_sub(1) / 2;
    let mut note = String::new();
    let side = |t: &TreeSpec, note: &mut String| -> Option<ExtremalValue> {
        match ex_eval(t, p) {
            Ok(v) if v.is_usable() => Some(v),
            Ok(v) => {
                note.push_str(&format!("ex({p}; {}) out of domain ({}); ", t.pretty(), v.branch));
                Some(v)
            }
            Err(e) => {
                note.push_str(&format!("ex({p}; {}) unavailable: {e}; ", t.pretty()));
                None
            }
        }
    };
    let ex_a = side(a, &mut note);
    let ex_b = side(b, &mut note);
    let order_ok = p as usize >= a.order().max(b.order());
    if !order_ok {
        note.push_str("p is below the larger tree order; ");
    }
    let usable = |e: &Option<ExtremalValue>| e.as_ref().is_some_and(|v| v.is_usable());
    let constructible = order_ok && usable(&ex_a) && usable(&ex_b);
    let sum = constructible.then(|| ex_a.as_ref().unwrap().value + ex_b.as_ref().unwrap().value);
    let holds = sum.is_some_and(|s| s < choose);
    let mut conditional_on = Vec::new();
    for e in [&ex_a, &ex_b].into_iter().flatten().filter(|e| e.is_usable()) {
        let tag = match e.kind {
            ExtremalKind::UpperBoundOnly => format!("{} (upper bound)", e.citation),
            _ => format!("{}[{}]", e.citation, e.branch),
        };
        if !conditional_on.contains(&tag) {
            conditional_on.push(tag);
        }
    }
    Ok(UpperCertificate {
        p,
        ex_a,
        ex_b,
        sum,
        choose_p_2: choose,
        constructible,
        holds,
        conditional_on,
        note: note.trim_end_matches("; ").to_string(),
    })
}

/// All `(x, y)` with `a x + b y = target`, `x` ascending.
pub fn frobenius_all(a: u64, b: u64, target: u64) -> Vec<(u64, u64)> {
    if a == 0 || b == 0 {
        return Vec::new();
    }
    (0..=target / a)
        .filter(|x| (target - a * x) % b == 0)
        .map(|x| (x, (target - a * x) / b))
        .collect()
}

/// Some `(x, y) >= 0` with `a x + b y = target`, smallest `x` first.
pub fn frobenius_rep(a: u64, b: u64, target: u64) -> Option<(u64, u64)> {
    frobenius_all(a, b, target).into_iter().next()
}

/// Representability is guaranteed when `gcd(a, b) = 1` and
/// `target >= (a-1)(b-1)`.
pub fn frobenius_guaranteed(a: u64, b: u64, target: u64) -> bool {
    a >= 1 && b >= 1 && a.gcd(&b) == 1 && target >= (a - 1) * (b - 1)
}

/// One recomputation of a table row at concrete parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    pub citation: String,
    pub left: TreeSpec,
    pub right: TreeSpec,
    pub claimed: Outcome,
    pub p: u64,
    pub ex_left: Option<u64>,
    pub ex_right: Option<u64>,
    pub sum: Option<u64>,
    pub choose_p_2: u64,
    pub upper_holds: bool,
    pub lower_bound: Option<u64>,
    pub lower_case: Option<String>,
    /// The degree bound already reaches the claimed value.
    pub lower_reaches: bool,
    /// Catalog witness on `r - 1` vertices (supports the claim).
    pub witness_below: Option<String>,
    /// Catalog witness on `r` vertices (contradicts the claim).
    pub witness_at_claim: Option<String>,
    /// Lower bound implied by all of the above.
    pub implied_lower: Option<u64>,
}

/// Which witness searches an audit runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AuditOptions {
    pub witness_below: bool,
    pub witness_at_claim: bool,
}

fn family_spec(f: Family, n: usize) -> Option<TreeSpec> {
    let s = TreeSpec::Named(f, n);
    s.validate().ok().map(|_| s)
}

/// Citations known to the table.
pub fn table_citations() -> Vec<&'static str> {
    let mut out: Vec<&'static str> = Vec::new();
    for r in TABLE {
        if !out.contains(&r.citation) {
            out.push(r.citation);
        }
    }
    out
}

/// Re-derives every row with the given citation over `n` in `n_range` and,
/// for rows with a free left order, `m` in `m_range`. Only parameter points
/// where the row's hypotheses hold are reported.
pub fn audit(
    citation: &str,
    m_range: std::ops::RangeInclusive<usize>,
    n_range: std::ops::RangeInclusive<usize>,
    opts: AuditOptions,
) -> Result<Vec<AuditRow>> {
    let rows: Vec<&Row> = TABLE.iter().filter(|r| r.citation == citation).collect();
    if rows.is_empty() {
        return Err(Error::NotCovered(format!("unknown citation {citation}")));
    }
    if rows.iter().any(|r| r.right.contains(&DoubleStar)) {
        return Err(Error::InvalidRange(format!("{citation} is indexed by double-star arms; audit the family rows instead")));
    }
    let mut out = Vec::new();
    for n in n_range {
        for row in &rows {
            let ms: Vec<usize> = match row.tie {
                Tie::Free => m_range.clone().collect(),
                Tie::Same => vec![n],
                Tie::Minus(k) => n.checked_sub(k as usize).into_iter().collect(),
            };
            for m in ms {
                for &lf in row.left {
                    for &rf in row.right {
                        let (Some(l), Some(r)) = (family_spec(lf, m), family_spec(rf, n)) else {
                            continue;
                        };
                        let Some(check) = eval_row(row, &l, &r) else { continue };
                        if !check.holds {
                            continue;
                        }
                        let pair_seen = out.iter().any(|a: &AuditRow| {
                            a.citation == check.citation && a.left == r && a.right == l
                        });
                        if pair_seen {
                            continue;
                        }
                        out.push(audit_point(&check, opts)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Audit of a single checked row.
pub fn audit_point(check: &RowCheck, opts: AuditOptions) -> Result<AuditRow> {
    let (l, r) = (&check.left, &check.right);
    let (lo, hi) = check.outcome.interval().expect("row outcome");
    let cert = upper_cert_21(l, r, hi)?;
    let lower = lower_bound_23(l, r)?;
    let witness_below = if opts.witness_below && lo >= 2 {
        crate::witness::lower_witness(l, r, (lo - 1) as usize)?.map(|w| w.description)
    } else {
        None
    };
    let witness_at_claim = if opts.witness_at_claim {
        crate::witness::lower_witness(l, r, hi as usize)?.map(|w| w.description)
    } else {
        None
    };
    let mut implied = lower.as_ref().map(|b| b.value);
    if witness_below.is_some() {
        implied = implied.max(Some(lo));
    }
    if witness_at_claim.is_some() {
        implied = implied.max(Some(hi + 1));
    }
    Ok(AuditRow {
        citation: check.citation.clone(),
        left: l.clone(),
        right: r.clone(),
        claimed: check.outcome,
        p: hi,
        ex_left: cert.ex_a.as_ref().filter(|e| e.is_usable()).map(|e| e.value),
        ex_right: cert.ex_b.as_ref().filter(|e| e.is_usable()).map(|e| e.value),
        sum: cert.sum,
        choose_p_2: cert.choose_p_2,
        upper_holds: cert.holds,
        lower_reaches: lower.as_ref().is_some_and(|b| b.value >= lo),
        lower_case: lower.as_ref().map(|b| b.case.clone()),
        lower_bound: lower.map(|b| b.value),
        witness_below,
        witness_at_claim,
        implied_lower: implied,
    })
}
