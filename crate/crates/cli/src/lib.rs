//! Command-line front end: argument parsing, output formatting and exit codes.

mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rtl_core::certify::{certify_budget, CertStatus};
use rtl_core::config::{Format, RunConfig};
use rtl_core::containment::{contains_spec, embed_tree_budget};
use rtl_core::graph6;
use rtl_core::oracle::{enum_trees, oracle_ex, oracle_ramsey, scan_conjecture1, scan_conjecture2, tree_name};
use rtl_core::ramsey::{audit, ramsey_eval, table_citations, AuditOptions};
use rtl_core::trees::{aliases, alpha2, Family, TreeSpec};
use rtl_core::turan::ex_eval;
use rtl_core::witness::{lower_witness_budget, CATALOG_BUDGET};
use rtl_core::Error;

use output::{Sink, Table};

const AFTER_HELP: &str = "\
Configuration precedence: command-line flags, then RTL_* environment variables
(RTL_WORKERS, RTL_CAP_GRAPHS, RTL_CAP_TREES, RTL_BUDGET, RTL_FORMAT, RTL_OUT,
RTL_STRICT, RTL_NO_TIMESTAMP), then built-in defaults.

Tree specs: path:N star:N tprime:N tstar:N t1:N t2:N t3:N tdp:N ttp:N
dstar:N1,N2 free:g6:<graph6>. Ranges: A..B (inclusive) or a single number.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 cap exceeded.";

#[derive(Parser)]
#[command(name = "rtl", version, about = "Tree Ramsey and Turan-number laboratory", after_help = AFTER_HELP)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct Global {
    /// Worker threads for parallel searches.
    #[arg(long, global = true, env = "RTL_WORKERS", default_value_t = 1)]
    workers: usize,
    /// Largest graph order the exhaustive oracles may enumerate.
    #[arg(long, global = true, env = "RTL_CAP_GRAPHS", default_value_t = 10)]
    cap_graphs: usize,
    /// Largest tree order the tree enumerator may reach.
    #[arg(long, global = true, env = "RTL_CAP_TREES", default_value_t = 10)]
    cap_trees: usize,
    /// Node budget for each containment search.
    #[arg(long, global = true, env = "RTL_BUDGET", default_value_t = CATALOG_BUDGET)]
    budget: u64,
    #[arg(long, global = true, env = "RTL_FORMAT", value_enum, default_value = "json")]
    format: FormatArg,
    /// Write output here instead of stdout.
    #[arg(long, global = true, env = "RTL_OUT")]
    out: Option<PathBuf>,
    /// Exit with status 1 when a certificate is only partial.
    #[arg(long, global = true, env = "RTL_STRICT")]
    strict: bool,
    /// Omit the timestamp and wall-clock timings for byte-stable output.
    #[arg(long, global = true, env = "RTL_NO_TIMESTAMP")]
    no_timestamp: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Describe trees, or list every tree of a given order.
    Trees {
        specs: Vec<String>,
        #[arg(long, value_name = "N")]
        enumerate: Option<usize>,
    },
    /// Closed-form ex(p; T).
    Ex { spec: String, p: u64 },
    /// ex(p; T) for one family over ranges of n and p.
    ExTable {
        family: String,
        #[arg(long)]
        n: String,
        #[arg(long)]
        p: String,
    },
    /// Closed-form r(A, B) with citations and checked hypotheses.
    Ramsey { a: String, b: String },
    /// Search the witness catalog for a colouring on p vertices.
    Witness {
        a: String,
        b: String,
        p: usize,
        /// Also write the witness graph in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Decide whether a graph6 host contains a tree.
    Contains { host: String, spec: String },
    /// Join the edge-count upper bound with a verified witness.
    Certify { a: String, b: String },
    /// Recompute the arithmetic behind a table row over a range.
    Audit {
        citation: Option<String>,
        #[arg(long, default_value = "0")]
        m: String,
        #[arg(long, default_value = "0")]
        n: String,
        /// Also search witnesses at r-1 and at r.
        #[arg(long)]
        witness: bool,
        /// List auditable citations.
        #[arg(long)]
        list: bool,
    },
    /// Exhaustive computations at small order.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Exhaustive conjecture scans (reported, never asserted).
    #[command(subcommand)]
    Scan(ScanCmd),
    /// Matrix of r(row, column) over two tree grids, e.g. star:4..10 tdp:15..25.
    Report { rows: String, cols: String },
}

#[derive(Subcommand)]
enum OracleCmd {
    Ex { spec: String, p: usize },
    Ramsey {
        a: String,
        b: String,
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ScanCmd {
    Conj1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
    },
    Conj2 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

enum Failure {
    Usage(String),
    Verify(String),
    Cap(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } | Error::BudgetExhausted { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<Option<Failure>, Failure>;

fn spec(s: &str) -> Result<TreeSpec, Failure> {
    s.parse::<TreeSpec>().map_err(Failure::from)
}

fn range(s: &str) -> Result<std::ops::RangeInclusive<usize>, Failure> {
    let bad = || Failure::Usage(format!("bad range {s:?}: expected A..B or N"));
    let s = s.trim();
    match s.split_once("..") {
        Some((a, b)) => {
            let a = a.trim().parse().map_err(|_| bad())?;
            let b = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            Ok(a..=b)
        }
        None => {
            let v = s.parse().map_err(|_| bad())?;
            Ok(v..=v)
        }
    }
}

fn family(s: &str) -> Result<Family, Failure> {
    Family::SINGLE
        .into_iter()
        .find(|f| f.keyword() == s.trim().to_ascii_lowercase())
        .ok_or_else(|| Failure::Usage(format!("unknown family {s:?}")))
}

/// `family:A..B` into the valid specs of that family.
fn grid(s: &str) -> Result<Vec<TreeSpec>, Failure> {
    let (f, r) = s
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("bad grid {s:?}: expected family:A..B")))?;
    let f = family(f)?;
    Ok(range(r)?.filter_map(|n| TreeSpec::named(f, n).ok()).collect())
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

fn execute(cli: Cli, stdout: &mut Vec<u8>) -> Outcome {
    let g = &cli.global;
    let config = RunConfig {
        workers: g.workers,
        cap_graphs: g.cap_graphs,
        cap_trees: g.cap_trees,
        containment_budget: g.budget,
        format: match g.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        },
        out: g.out.as_ref().map(|p| p.display().to_string()),
    };
    config.validate()?;
    // the pool can only be installed once per process; later runs reuse it
    let _ = rayon::ThreadPoolBuilder::new().num_threads(config.workers).build_global();
    let sink = Sink {
        csv: config.format == Format::Csv,
        timestamp: !g.no_timestamp,
    };
    let out = g.out.as_deref();
    let budget = Some(config.containment_budget);

    match &cli.cmd {
        Cmd::Trees { specs, enumerate } => {
            let mut list: Vec<TreeSpec> = specs.iter().map(|s| spec(s)).collect::<Result<_, _>>()?;
            if let Some(n) = enumerate {
                for t in enum_trees(*n, config.cap_trees)? {
                    list.push(TreeSpec::free(t)?);
                }
            }
            let mut table = Table::new(&["spec", "name", "order", "max_degree", "alpha2", "graph6", "aliases"]);
            let mut items = Vec::new();
            for t in &list {
                let graph = t.build()?;
                let name = match t {
                    TreeSpec::Free(gr) => tree_name(gr),
                    _ => t.pretty(),
                };
                let al: Vec<String> = aliases(t)?.iter().filter(|x| *x != t).map(|x| x.to_string()).collect();
                let a2 = alpha2(&graph)?;
                let g6 = graph6::encode(&graph);
                table.push([
                    t.to_string(),
                    name.clone(),
                    t.order().to_string(),
                    t.max_degree()?.to_string(),
                    a2.to_string(),
                    g6.clone(),
                    al.join(";"),
                ]);
                items.push(json!({
                    "spec": t, "name": name, "order": t.order(), "max_degree": t.max_degree()?,
                    "alpha2": a2, "graph6": g6, "aliases": al,
                }));
            }
            sink.write(stdout, out, "trees", Value::Array(items), &table)?;
        }
        Cmd::Ex { spec: s, p } => {
            let v = ex_eval(&spec(s)?, *p)?;
            let mut table = Table::new(&["tree", "p", "value", "kind", "citation", "branch"]);
            table.push([v.tree.to_string(), v.p.to_string(), v.value.to_string(), format!("{:?}", v.kind), v.citation.clone(), v.branch.clone()]);
            sink.write(stdout, out, "ex", serde_json::to_value(&v)?, &table)?;
        }
        Cmd::ExTable { family: f, n, p } => {
            let f = family(f)?;
            let (ns, ps) = (range(n)?, range(p)?);
            let mut table = Table::new(&["tree", "p", "value", "kind", "citation", "branch"]);
            let mut items = Vec::new();
            for n in ns {
                let Ok(t) = TreeSpec::named(f, n) else { continue };
                for p in ps.clone() {
                    let Ok(v) = ex_eval(&t, p as u64) else { continue };
                    table.push([v.tree.to_string(), v.p.to_string(), v.value.to_string(), format!("{:?}", v.kind), v.citation.clone(), v.branch.clone()]);
                    items.push(serde_json::to_value(&v)?);
                }
            }
            sink.write(stdout, out, "ex-table", Value::Array(items), &table)?;
        }
        Cmd::Ramsey { a, b } => {
            let r = ramsey_eval(&spec(a)?, &spec(b)?)?;
            let mut table = Table::new(&["a", "b", "value", "citations", "conflict"]);
            table.push([r.a.to_string(), r.b.to_string(), r.outcome.short(), r.citations.join(";"), r.conflict.to_string()]);
            sink.write(stdout, out, "ramsey", serde_json::to_value(&r)?, &table)?;
        }
        Cmd::Witness { a, b, p, dot } => {
            let (a, b) = (spec(a)?, spec(b)?);
            let w = lower_witness_budget(&a, &b, *p, budget)?;
            let mut table = Table::new(&["a", "b", "p", "found", "construction", "description", "complemented", "graph6"]);
            let found = w.is_some();
            match &w {
                Some(w) => {
                    table.push([a.to_string(), b.to_string(), p.to_string(), "true".into(), serde_json::to_value(w.construction)?.as_str().unwrap_or_default().to_string(), w.description.clone(), w.complemented.to_string(), graph6::encode(&w.graph)]);
                    if let Some(path) = dot {
                        std::fs::write(path, w.graph.to_dot("witness"))?;
                    }
                }
                None => table.push([a.to_string(), b.to_string(), p.to_string(), "false".into(), String::new(), String::new(), String::new(), String::new()]),
            }
            let value = match &w {
                Some(w) => serde_json::to_value(w)?,
                None => json!({ "a": a, "b": b, "order": p, "found": false }),
            };
            sink.write(stdout, out, "witness", value, &table)?;
            if !found {
                return Ok(Some(Failure::Verify(format!("no catalog witness on {p} vertices"))));
            }
        }
        Cmd::Contains { host, spec: s } => {
            let h = graph6::decode(host)?;
            let t = spec(s)?;
            let hit = contains_spec(&h, &t, budget)?;
            let embedding = if hit { embed_tree_budget(&h, &t.build()?, budget)?.map(|e| e.map) } else { None };
            let mut table = Table::new(&["host", "tree", "contains", "embedding"]);
            table.push([host.clone(), t.to_string(), hit.to_string(), embedding.as_ref().map(|m| m.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";")).unwrap_or_default()]);
            sink.write(stdout, out, "contains", json!({ "host": host, "tree": t, "contains": hit, "embedding": embedding }), &table)?;
        }
        Cmd::Certify { a, b } => {
            let c = certify_budget(&spec(a)?, &spec(b)?, config.containment_budget)?;
            let mut table = Table::new(&["a", "b", "r", "status", "failing", "upper_sum", "choose_r_2", "witness", "citations"]);
            let status = if c.status == CertStatus::Complete { "COMPLETE" } else { "PARTIAL" };
            table.push([
                c.a.to_string(),
                c.b.to_string(),
                c.r.to_string(),
                status.to_string(),
                c.failing.join(";"),
                opt(&c.upper.sum),
                c.upper.choose_p_2.to_string(),
                c.lower.as_ref().map(|w| w.description.clone()).unwrap_or_default(),
                c.citations.join(";"),
            ]);
            sink.write(stdout, out, "certify", serde_json::to_value(&c)?, &table)?;
            if g.strict && c.status != CertStatus::Complete {
                return Ok(Some(Failure::Verify(format!("certificate is PARTIAL: {} failed", c.failing.join(" and ")))));
            }
        }
        Cmd::Audit { citation, m, n, witness, list } => {
            if *list || citation.is_none() {
                let cites = table_citations();
                let mut table = Table::new(&["citation"]);
                cites.iter().for_each(|c| table.push([c.to_string()]));
                sink.write(stdout, out, "audit", json!(cites), &table)?;
                return Ok(None);
            }
            let opts = AuditOptions {
                witness_below: *witness,
                witness_at_claim: *witness,
            };
            let rows = audit(citation.as_deref().unwrap_or_default(), range(m)?, range(n)?, opts)?;
            let mut table = Table::new(&[
                "citation", "left", "right", "claimed", "p", "ex_left", "ex_right", "sum", "choose_p_2", "upper_holds",
                "lower_bound", "lower_case", "witness_below", "witness_at_claim", "implied_lower",
            ]);
            for r in &rows {
                table.push([
                    r.citation.clone(),
                    r.left.to_string(),
                    r.right.to_string(),
                    r.claimed.short(),
                    r.p.to_string(),
                    opt(&r.ex_left),
                    opt(&r.ex_right),
                    opt(&r.sum),
                    r.choose_p_2.to_string(),
                    r.upper_holds.to_string(),
                    opt(&r.lower_bound),
                    opt(&r.lower_case),
                    opt(&r.witness_below),
                    opt(&r.witness_at_claim),
                    opt(&r.implied_lower),
                ]);
            }
            sink.write(stdout, out, "audit", serde_json::to_value(&rows)?, &table)?;
        }
        Cmd::Oracle(OracleCmd::Ex { spec: s, p }) => {
            let o = oracle_ex(*p, &spec(s)?, config.cap_graphs)?;
            let mut table = Table::new(&["tree", "p", "value", "extremal"]);
            table.push([o.tree.to_string(), o.p.to_string(), o.value.to_string(), o.extremal.clone()]);
            sink.write(stdout, out, "oracle ex", serde_json::to_value(&o)?, &table)?;
        }
        Cmd::Oracle(OracleCmd::Ramsey { a, b, cap }) => {
            let cap = cap.unwrap_or(config.cap_graphs);
            let o = oracle_ramsey(&spec(a)?, &spec(b)?, cap, config.cap_graphs)?;
            let mut table = Table::new(&["a", "b", "value", "critical"]);
            table.push([o.a.to_string(), o.b.to_string(), o.value.to_string(), opt(&o.critical)]);
            sink.write(stdout, out, "oracle ramsey", serde_json::to_value(&o)?, &table)?;
        }
        Cmd::Scan(ScanCmd::Conj1 { n, p }) => {
            let r = scan_conjecture1(*n, *p, config.cap_graphs, config.cap_trees)?;
            let mut table = Table::new(&["tree", "tree_graph6", "host_graph6"]);
            for c in &r.counterexamples {
                table.push([c.tree.clone(), c.tree_graph6.clone(), c.host_graph6.clone()]);
            }
            sink.write(stdout, out, "scan conj1", serde_json::to_value(&r)?, &table)?;
        }
        Cmd::Scan(ScanCmd::Conj2 { m, n }) => {
            let r = scan_conjecture2(*m, *n, config.cap_graphs, config.cap_trees)?;
            let mut table = Table::new(&["m", "tree", "tree_graph6", "alpha2", "oracle_r", "bound", "holds"]);
            for row in &r.rows {
                table.push([row.m.to_string(), row.tree.clone(), row.tree_graph6.clone(), row.alpha2.to_string(), row.oracle_r.to_string(), row.bound.to_string(), row.holds.to_string()]);
            }
            sink.write(stdout, out, "scan conj2", serde_json::to_value(&r)?, &table)?;
        }
        Cmd::Report { rows, cols } => {
            let (rs, cs) = (grid(rows)?, grid(cols)?);
            let mut header = vec!["tree".to_string()];
            header.extend(cs.iter().map(|c| c.to_string()));
            let mut table = Table::new(&header);
            let mut cells = Vec::new();
            for r in &rs {
                let mut line = vec![r.to_string()];
                for c in &cs {
                    let e = ramsey_eval(r, c)?;
                    line.push(if e.citations.is_empty() {
                        e.outcome.short()
                    } else {
                        format!("{} [{}]", e.outcome.short(), e.citations.join(";"))
                    });
                    cells.push(json!({ "row": r, "col": c, "outcome": e.outcome, "citations": e.citations }));
                }
                table.push(line);
            }
            let value = json!({ "rows": rs, "cols": cs, "cells": cells });
            sink.write(stdout, out, "report", value, &table)?;
        }
    }
    Ok(None)
}

/// Exit status, standard output and standard error of one invocation.
pub struct Response {
    pub code: u8,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Response
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut stdout = Vec::new();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Response { code, stdout: text.into_bytes(), stderr: String::new() }
            } else {
                Response { code, stdout, stderr: text }
            };
        }
    };
    let fail = match execute(cli, &mut stdout) {
        Ok(None) => return Response { code: 0, stdout, stderr: String::new() },
        Ok(Some(f)) | Err(f) => f,
    };
    let (code, kind, msg) = match fail {
        Failure::Verify(m) => (1, "verification failed", m),
        Failure::Usage(m) => (2, "usage error", m),
        Failure::Cap(m) => (3, "cap exceeded", m),
        Failure::Io(m) => (2, "i/o error", m),
    };
    Response { code, stdout, stderr: format!("rtl: {kind}: {msg}\n") }
}
