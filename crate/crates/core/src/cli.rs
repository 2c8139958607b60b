//! Command-line front end.
//!
//! Exit status: 0 when a definite answer (or an oracle report) is produced,
//! 2 when the answer is Unknown, 1 on usage, syntax or domain errors.

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::classify::{classify_finitely_generated, classify_principal, two_generator_principality, SubidealReport};
use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::grammar::{parse_ideal, parse_seq};
use crate::ideal::{ideal_equal, is_soft, member, IdealDesc, SoftnessResult};
use crate::oracle::{self, OracleReport};
use crate::rational;
use crate::seq::SeqExpr;
use crate::verdict::{Outcome, Verdict};

pub const SCHEMA: &str = "subideal-report/1";

fn seq_arg(s: &str) -> std::result::Result<SeqExpr, String> {
    parse_seq(s).map_err(|e| e.to_string())
}

fn ideal_arg(s: &str) -> std::result::Result<IdealDesc, String> {
    parse_ideal(s).map_err(|e| e.to_string())
}

fn window_arg(s: &str) -> std::result::Result<(u64, u64), String> {
    let (a, b) = s.split_once(':').ok_or("expected N0:N1")?;
    let a: u64 = a.trim().parse().map_err(|_| format!("bad window start '{a}'"))?;
    let b: u64 = b.trim().parse().map_err(|_| format!("bad window end '{b}'"))?;
    if a == 0 || a >= b {
        return Err("window needs 1 <= N0 < N1".into());
    }
    Ok((a, b))
}

fn grid_arg(s: &str) -> std::result::Result<(u64, u64), String> {
    let (a, b) = s.split_once(',').ok_or("expected k_max,m_max")?;
    let a: u64 = a.trim().parse().map_err(|_| format!("bad k_max '{a}'"))?;
    let b: u64 = b.trim().parse().map_err(|_| format!("bad m_max '{b}'"))?;
    if a == 0 || b == 0 {
        return Err("grid limits must be >= 1".into());
    }
    Ok((a, b))
}

#[derive(Args, Clone, Debug, Default, PartialEq)]
pub struct Options {
    /// Sampling window for numeric comparisons, `N0:N1`.
    #[arg(long, global = true, value_parser = window_arg)]
    pub window: Option<(u64, u64)>,
    /// Vanishing threshold of little-o tests and oracle tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Search grid limits `k_max,m_max`.
    #[arg(long, global = true, value_parser = grid_arg)]
    pub grid: Option<(u64, u64)>,
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Skip the symbolic route and decide by sampling only.
    #[arg(long, global = true)]
    pub numeric: bool,
}

impl Options {
    pub fn config(&self) -> EngineConfig {
        let mut cfg = EngineConfig::default();
        if let Some(w) = self.window {
            cfg.window = w;
        }
        if let Some(t) = self.tol {
            cfg.vanishing_threshold = t;
        }
        if let Some((k, m)) = self.grid {
            cfg.k_max = k;
            cfg.m_max = m;
        }
        if self.numeric {
            cfg = cfg.numeric();
        }
        cfg
    }

    fn to_args(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some((a, b)) = self.window {
            out.push(format!("--window={a}:{b}"));
        }
        if let Some(t) = self.tol {
            out.push(format!("--tol={t:?}"));
        }
        if let Some((k, m)) = self.grid {
            out.push(format!("--grid={k},{m}"));
        }
        if self.json {
            out.push("--json".into());
        }
        if self.numeric {
            out.push("--numeric".into());
        }
        out
    }
}

#[derive(Subcommand, Clone, Debug, PartialEq)]
pub enum OracleCommand {
    /// Ratio (1/k)/(1/ceil(k/m)) against 1/m.
    Ratio {
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
    },
    /// Ratio ceil(k/m)^3/k^2 against a divergence threshold.
    Divergence {
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        #[arg(long, default_value_t = 1e3)]
        threshold: f64,
    },
    /// Diagonal factorization of c through I and J.
    Split {
        #[arg(value_parser = seq_arg)]
        c: SeqExpr,
        #[arg(value_parser = ideal_arg)]
        i: IdealDesc,
        #[arg(value_parser = ideal_arg)]
        j: IdealDesc,
        #[arg(long, default_value_t = 100_000)]
        n: u64,
    },
    /// Numeric check of the softness witness the engine issues for S in J.
    Softness {
        #[arg(value_parser = seq_arg)]
        s: SeqExpr,
        #[arg(value_parser = ideal_arg)]
        j: IdealDesc,
        #[arg(long, default_value_t = 100_000)]
        n: u64,
    },
}

#[derive(Subcommand, Clone, Debug, PartialEq)]
pub enum Command {
    /// Is diag(SEQ) in IDEAL?
    Member {
        #[arg(value_parser = seq_arg)]
        seq: SeqExpr,
        #[arg(value_parser = ideal_arg)]
        ideal: IdealDesc,
    },
    /// Is the principal ideal (SEQ) soft in IDEAL?
    Soft {
        #[arg(value_parser = seq_arg)]
        seq: SeqExpr,
        #[arg(value_parser = ideal_arg)]
        ideal: IdealDesc,
    },
    /// Subideal classification of (SEQ) inside IDEAL.
    Classify {
        #[arg(value_parser = seq_arg)]
        seq: SeqExpr,
        #[arg(value_parser = ideal_arg)]
        ideal: IdealDesc,
    },
    /// Classification of the J-ideal generated by several sequences.
    #[command(name = "classify-fg")]
    ClassifyFg {
        #[arg(value_parser = ideal_arg)]
        ideal: IdealDesc,
        #[arg(value_parser = seq_arg, required = true)]
        gens: Vec<SeqExpr>,
    },
    /// Principality of the J-ideal generated by two disjointly supported
    /// operators with equivalent s-numbers.
    Principality2 {
        #[arg(value_parser = seq_arg)]
        s: SeqExpr,
        #[arg(value_parser = seq_arg)]
        t: SeqExpr,
        #[arg(value_parser = ideal_arg)]
        ideal: IdealDesc,
    },
    /// Finite-dimensional checks.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Do two ideal descriptions denote the same ideal?
    Equal {
        #[arg(value_parser = ideal_arg)]
        i: IdealDesc,
        #[arg(value_parser = ideal_arg)]
        j: IdealDesc,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Member { .. } => "member",
            Command::Soft { .. } => "soft",
            Command::Classify { .. } => "classify",
            Command::ClassifyFg { .. } => "classify-fg",
            Command::Principality2 { .. } => "principality2",
            Command::Oracle(_) => "oracle",
            Command::Equal { .. } => "equal",
        }
    }

    fn to_args(&self) -> Vec<String> {
        let s = |x: &dyn ToString| x.to_string();
        let mut out = vec![self.name().to_string()];
        match self {
            Command::Member { seq, ideal } | Command::Soft { seq, ideal } | Command::Classify { seq, ideal } => {
                out.extend([s(seq), s(ideal)]);
            }
            Command::ClassifyFg { ideal, gens } => {
                out.push(s(ideal));
                out.extend(gens.iter().map(ToString::to_string));
            }
            Command::Principality2 { s: a, t, ideal } => out.extend([s(a), s(t), s(ideal)]),
            Command::Equal { i, j } => out.extend([s(i), s(j)]),
            Command::Oracle(o) => match o {
                OracleCommand::Ratio { m, n } => out.extend(["ratio".into(), format!("--m={m}"), format!("--n={n}")]),
                OracleCommand::Divergence { m, n, threshold } => out.extend([
                    "divergence".into(),
                    format!("--m={m}"),
                    format!("--n={n}"),
                    format!("--threshold={threshold:?}"),
                ]),
                OracleCommand::Split { c, i, j, n } => out.extend(["split".into(), s(c), s(i), s(j), format!("--n={n}")]),
                OracleCommand::Softness { s: a, j, n } => out.extend(["softness".into(), s(a), s(j), format!("--n={n}")]),
            },
        }
        out
    }
}

/// A parsed invocation.
#[derive(Parser, Clone, Debug, PartialEq)]
#[command(name = "subideal", version, about = "Membership, softness and subideal classification for principal ideals of B(H)")]
pub struct Query {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

impl Query {
    /// Argument vector (without the program name) that parses back to `self`.
    pub fn to_args(&self) -> Vec<String> {
        let mut out = self.command.to_args();
        out.extend(self.options.to_args());
        out
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Answer {
    Verdict(Verdict),
    Softness(SoftnessResult),
    Report(SubidealReport),
    Oracle(OracleReport),
}

impl Answer {
    fn outcome(&self) -> Option<Outcome> {
        match self {
            Answer::Verdict(v) => Some(v.outcome()),
            Answer::Softness(s) => Some(s.outcome()),
            Answer::Report(r) => Some(r.softness.outcome()),
            Answer::Oracle(_) => None,
        }
    }

    fn json(&self) -> Json {
        let v = match self {
            Answer::Verdict(v) => serde_json::to_value(v),
            Answer::Softness(s) => serde_json::to_value(s),
            Answer::Report(r) => serde_json::to_value(r),
            Answer::Oracle(o) => serde_json::to_value(o),
        };
        v.expect("report types serialize")
    }

    fn text(&self) -> String {
        match self {
            Answer::Verdict(v) => verdict_text(v),
            Answer::Softness(s) => {
                let mut t = verdict_text(&s.verdict);
                if let Some(w) = &s.witness_detail {
                    t.push_str(&format!("\nT = {}", w.t_witness));
                }
                t
            }
            Answer::Report(r) => r.to_string(),
            Answer::Oracle(o) => format!(
                "{}: {}\nwindow: {}..{}\ntarget: {} (tolerance {})\n{}",
                o.check,
                if o.passed { "passed" } else { "failed" },
                o.window.start,
                o.window.end,
                o.target,
                o.tolerance,
                o.detail
            ),
        }
    }
}

/// Compact JSON form of a classification report.
pub fn report_json(r: &SubidealReport) -> Option<String> {
    serde_json::to_string(r).ok()
}

pub fn verdict_text(v: &Verdict) -> String {
    let route = match v.route() {
        crate::verdict::Route::Symbolic => "symbolic",
        crate::verdict::Route::Numeric => "numeric",
    };
    let mut out = format!("{} ({route})", v.outcome().as_str());
    if let Some(w) = v.witness() {
        let mut parts = Vec::new();
        if let Some(k) = w.k {
            parts.push(format!("k = {k}"));
        }
        if let Some(m) = w.m {
            parts.push(format!("m = {m}"));
        }
        if let Some(c) = &w.constant {
            parts.push(format!("C = {}", rational::render(c)));
        }
        if !parts.is_empty() {
            out.push_str(&format!("\nwitness: {}", parts.join(", ")));
        }
        if let Some(d) = &w.detail {
            out.push_str(&format!("\n{d}"));
        }
    }
    if let Some(c) = v.certificate() {
        out.push_str(&format!("\ncertificate: {}", c.detail));
    }
    if let Some(r) = v.reason() {
        out.push_str(&format!("\nreason: {r}"));
    }
    out
}

fn answer(q: &Query, cfg: &EngineConfig) -> Result<Answer> {
    let tol = q.options.tol.unwrap_or(1e-3);
    Ok(match &q.command {
        Command::Member { seq, ideal } => Answer::Verdict(member(seq, ideal, cfg)),
        Command::Soft { seq, ideal } => Answer::Softness(is_soft(seq, ideal, cfg)?),
        Command::Classify { seq, ideal } => Answer::Report(classify_principal(seq, ideal, cfg)?),
        Command::ClassifyFg { ideal, gens } => Answer::Report(classify_finitely_generated(gens, ideal, cfg)?),
        Command::Principality2 { s, t, ideal } => Answer::Verdict(two_generator_principality(s, t, ideal, cfg)?),
        Command::Equal { i, j } => Answer::Verdict(ideal_equal(i, j, cfg)),
        Command::Oracle(o) => Answer::Oracle(match o {
            OracleCommand::Ratio { m, n } => oracle::verify_ratio_1_over_m(*m, *n, tol)?,
            OracleCommand::Divergence { m, n, threshold } => oracle::verify_divergence_e2(*m, *n, *threshold)?,
            OracleCommand::Split { c, i, j, n } => oracle::verify_product_split(c, i, j, *n, cfg)?,
            OracleCommand::Softness { s, j, n } => {
                let res = is_soft(s, j, cfg)?;
                oracle::verify_softness_witness(s, &res, *n)?
            }
        }),
    })
}

#[derive(Serialize)]
struct Document<'a> {
    schema: &'static str,
    command: &'static str,
    arguments: Vec<String>,
    config: &'a EngineConfig,
    result: Json,
}

/// Runs an already parsed query.
pub fn execute(q: &Query) -> Output {
    let cfg = q.options.config();
    match answer(q, &cfg) {
        Ok(a) => {
            let code = if a.outcome() == Some(Outcome::Unknown) { 2 } else { 0 };
            let stdout = if q.options.json {
                let doc = Document {
                    schema: SCHEMA,
                    command: q.command.name(),
                    arguments: q.command.to_args().into_iter().skip(1).collect(),
                    config: &cfg,
                    result: a.json(),
                };
                let mut s = serde_json::to_string_pretty(&doc).expect("document serializes");
                s.push('\n');
                s
            } else {
                let mut s = a.text();
                s.push('\n');
                s
            };
            Output { code, stdout, stderr: String::new() }
        }
        Err(e) => error_output(&e, q.options.json),
    }
}

fn error_output(e: &Error, as_json: bool) -> Output {
    let kind = match e {
        Error::Domain(_) => "domain",
        Error::Syntax { .. } => "syntax",
        Error::Precondition(_) => "precondition",
        Error::Argument(_) => "argument",
    };
    let stderr = if as_json {
        format!("{}\n", json!({ "schema": SCHEMA, "error": kind, "message": e.to_string() }))
    } else {
        format!("error: {e}\n")
    };
    Output { code: 1, stdout: String::new(), stderr }
}

/// Parses `args` (including the program name) and runs the query.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Query::try_parse_from(args) {
        Ok(q) => execute(&q),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Output { code: 1, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Output {
        run(std::iter::once("subideal").chain(args.iter().copied()))
    }

    #[test]
    fn soft_examples() {
        let out = run_args(&["soft", "geo(1/2)", "KH"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("yes"));
        assert!(out.stdout.contains("k = 2"));
        let out = run_args(&["soft", "pow(1)", "KH"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("no"));
    }

    #[test]
    fn errors_exit_one() {
        assert_eq!(run_args(&["member", "geo(3/2)", "KH"]).code, 1);
        assert_eq!(run_args(&["member", "pow(1"]).code, 1);
        assert_eq!(run_args(&["soft", "pow(1)", "prin(pow(2))"]).code, 1);
        assert_eq!(run_args(&["bogus"]).code, 1);
    }

    #[test]
    fn unknown_exits_two() {
        let out = run_args(&["member", "pow(1)", "prin(pow(1,1))", "--numeric"]);
        assert_eq!(out.code, 2, "{}", out.stdout);
    }

    #[test]
    fn json_is_deterministic() {
        let args = ["classify", "pow(1)", "KH", "--json"];
        let a = run_args(&args);
        let b = run_args(&args);
        assert_eq!(a, b);
        let v: Json = serde_json::from_str(&a.stdout).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["result"]["chain"][4]["status"], "strict");
        assert_eq!(v["result"]["is_BH_ideal"]["outcome"], "no");
    }

    #[test]
    fn query_round_trip() {
        for args in [
            vec!["member", "amp(2,pow(1))", "prod(prin(pow(1)),KH)"],
            vec!["classify-fg", "KH", "pow(1)", "pow(1)", "--grid", "4,5", "--json"],
            vec!["oracle", "divergence", "--m", "4", "--window", "8:4096", "--tol", "0.01"],
            vec!["oracle", "split", "pow(3)", "prin(pow(1))", "prin(pow(2))", "--numeric"],
        ] {
            let q = Query::try_parse_from(std::iter::once("subideal").chain(args)).unwrap();
            let again = Query::try_parse_from(std::iter::once("subideal".to_string()).chain(q.to_args())).unwrap();
            assert_eq!(q, again);
        }
    }
}
