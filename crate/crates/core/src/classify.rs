//! Subideal classification for principal and finitely generated J-ideals.
//!
//! For `S` in `J` the chain
//!
//! ```text
//! J(S)J <= JS+SJ+J(S)J <= <S>_J <= (S)_J^R <= (S)_J <= (S)
//! ```
//!
//! collapses exactly when `(S)` is J-soft; otherwise every inclusion from
//! the second on is strict. Only the first link needs separate probing.

use std::fmt;

use serde::Serialize;

use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::ideal::{ideal_equal, is_soft, member, normalize, reduce_product, IdealDesc, Normal, SoftnessResult};
use crate::seq::compare::compare_big_o;
use crate::seq::expr::{product, sum_all, SeqExpr};
use crate::verdict::{Certificate, IndexRange, Outcome, Verdict, Witness};

pub const CHAIN_POSITIONS: [&str; 6] = ["J(S)J", "JS+SJ+J(S)J", "<S>_J", "(S)_J^R", "(S)_J", "(S)"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkStatus {
    Equal,
    Strict,
    Unknown,
}

impl LinkStatus {
    fn from_outcome(o: Outcome) -> Self {
        match o {
            Outcome::Yes => LinkStatus::Equal,
            Outcome::No => LinkStatus::Strict,
            Outcome::Unknown => LinkStatus::Unknown,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LinkStatus::Equal => "equal",
            LinkStatus::Strict => "strict",
            LinkStatus::Unknown => "unknown",
        }
    }
}

/// One inclusion `smaller <= larger` of the chain.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainLink {
    pub smaller: &'static str,
    pub larger: &'static str,
    pub status: LinkStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubidealReport {
    pub softness: SoftnessResult,
    #[serde(rename = "is_BH_ideal")]
    pub is_bh_ideal: Verdict,
    pub collapse_target: Option<IdealDesc>,
    pub chain: Vec<ChainLink>,
    pub generators: Vec<SeqExpr>,
    #[serde(rename = "J")]
    pub j: IdealDesc,
}

impl SubidealReport {
    /// Status of the link between chain positions `i` and `i + 1`.
    pub fn link(&self, i: usize) -> LinkStatus {
        self.chain[i].status
    }
}

fn chain(statuses: [LinkStatus; 5]) -> Vec<ChainLink> {
    statuses
        .iter()
        .enumerate()
        .map(|(i, &status)| ChainLink { smaller: CHAIN_POSITIONS[i], larger: CHAIN_POSITIONS[i + 1], status })
        .collect()
}

fn require_member(s: &SeqExpr, j: &IdealDesc, cfg: &EngineConfig) -> Result<Option<Verdict>> {
    let v = member(s, j, cfg);
    match v.outcome() {
        Outcome::Yes => Ok(None),
        Outcome::No => Err(Error::Precondition(format!("{s} is not a member of {j}"))),
        Outcome::Unknown => Ok(Some(Verdict::unknown(format!(
            "membership of {s} in {j} is undetermined: {}",
            v.reason().unwrap_or("")
        )))),
    }
}

fn report(s: &SeqExpr, gens: Vec<SeqExpr>, j: &IdealDesc, cfg: &EngineConfig) -> Result<SubidealReport> {
    let softness = is_soft(s, j, cfg)?;
    let first = probe_chain_link(s, j, cfg)?;
    let head = LinkStatus::from_outcome(first.outcome());
    let (statuses, target) = match softness.outcome() {
        Outcome::Yes => {
            let target = if s.is_finite_rank() { IdealDesc::FH } else { IdealDesc::principal(s.clone()) };
            ([LinkStatus::Equal; 5], Some(target))
        }
        Outcome::No => {
            let mut st = [LinkStatus::Strict; 5];
            st[0] = head;
            (st, None)
        }
        Outcome::Unknown => {
            let mut st = [LinkStatus::Unknown; 5];
            st[0] = head;
            (st, None)
        }
    };
    Ok(SubidealReport {
        is_bh_ideal: softness.verdict.clone(),
        softness,
        collapse_target: target,
        chain: chain(statuses),
        generators: gens,
        j: j.clone(),
    })
}

/// Classifies the J-ideals generated by a single `S` in `J`.
pub fn classify_principal(s: &SeqExpr, j: &IdealDesc, cfg: &EngineConfig) -> Result<SubidealReport> {
    report(s, vec![s.clone()], j, cfg)
}

/// Classifies the J-ideals generated by `gens`, through the combined
/// generator `|S_1| + ... + |S_N|`.
pub fn classify_finitely_generated(gens: &[SeqExpr], j: &IdealDesc, cfg: &EngineConfig) -> Result<SubidealReport> {
    let combined = sum_all(gens).ok_or_else(|| Error::Argument("at least one generator is required".into()))?;
    for g in gens {
        if let Some(unknown) = require_member(g, j, cfg)? {
            return Err(Error::Precondition(unknown.reason().unwrap_or("membership undetermined").to_string()));
        }
    }
    report(&combined, gens.to_vec(), j, cfg)
}

/// Whether the J-ideal generated by two disjointly supported operators with
/// equivalent s-numbers is principal; this holds iff it is J-soft.
///
/// Disjointness of supports is the caller's responsibility.
pub fn two_generator_principality(s: &SeqExpr, t: &SeqExpr, j: &IdealDesc, cfg: &EngineConfig) -> Result<Verdict> {
    for (a, b) in [(s, t), (t, s)] {
        let v = compare_big_o(a, b, cfg);
        match v.outcome() {
            Outcome::Yes => {}
            Outcome::No => return Err(Error::Precondition(format!("s-numbers of {s} and {t} are not equivalent"))),
            Outcome::Unknown => return Ok(Verdict::unknown(format!("equivalence of {s} and {t} is undetermined"))),
        }
    }
    for g in [s, t] {
        if let Some(unknown) = require_member(g, j, cfg)? {
            return Ok(unknown);
        }
    }
    let combined = SeqExpr::sum(s.clone(), t.clone());
    Ok(is_soft(&combined, j, cfg)?.verdict)
}

fn gen_of(j: &Normal) -> Option<&SeqExpr> {
    match j {
        Normal::Principal(g) => Some(g),
        _ => None,
    }
}

/// Probes whether `J(S)J = JS + SJ + J(S)J`.
///
/// Equal when `J` is idempotent or `(S)` collapses; strict when the
/// canonical element `gen_J . S` of `JS` escapes `J(S)J`.
pub fn probe_chain_link(s: &SeqExpr, j: &IdealDesc, cfg: &EngineConfig) -> Result<Verdict> {
    if let Some(unknown) = require_member(s, j, cfg)? {
        return Ok(unknown);
    }
    let window = IndexRange::from(cfg.window);
    let square = IdealDesc::power(j.clone(), 2).expect("exponent 2");
    let idempotent = ideal_equal(j, &square, cfg);
    if idempotent.is_yes() {
        return Ok(Verdict::yes(idempotent.route(), Witness::new(window).with_detail(format!("{j} is idempotent"))));
    }
    let normal = normalize(j);
    if let Some(tau) = gen_of(&normal) {
        let witness = product(tau, s);
        let jsj = reduce_product(&IdealDesc::product(IdealDesc::product(j.clone(), IdealDesc::principal(s.clone())), j.clone()));
        let v = member(&witness, &jsj, cfg);
        if v.is_no() {
            let detail = format!("{witness} lies in JS but not in J(S)J = {jsj}");
            return Ok(Verdict::no(v.route(), Certificate::new(window, detail)));
        }
    }
    let soft = is_soft(s, j, cfg)?;
    if soft.verdict.is_yes() {
        return Ok(Verdict::yes(soft.verdict.route(), Witness::new(window).with_detail("(S) is J-soft, so the chain collapses")));
    }
    Ok(Verdict::unknown("J is not idempotent and the canonical witness does not separate the link"))
}

/// Whether `<S>_J` fails to be linear; this happens iff `(S)` is not J-soft.
pub fn nonlinearity_witness(s: &SeqExpr, j: &IdealDesc, cfg: &EngineConfig) -> Result<Verdict> {
    let soft = is_soft(s, j, cfg)?;
    Ok(soft.verdict.negated(
        IndexRange::from(cfg.window),
        "non-linear: S is not in (S)J",
        "linear: (S) is J-soft and all subideal types coincide",
    ))
}

impl fmt::Display for SubidealReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        writeln!(f, "generators: {}", gens.join(", "))?;
        writeln!(f, "J: {}", self.j)?;
        writeln!(f, "J-soft: {}", self.softness.outcome().as_str())?;
        if let Some(w) = &self.softness.witness_detail {
            let m = w.m.map(|m| format!(", m = {m}")).unwrap_or_default();
            writeln!(f, "  witness: k = {}{m}, T = {}", w.k, w.t_witness)?;
        }
        writeln!(f, "B(H)-ideal: {}", self.is_bh_ideal.outcome().as_str())?;
        if let Some(t) = &self.collapse_target {
            writeln!(f, "collapses to: {t}")?;
        }
        write!(f, "chain: {}", CHAIN_POSITIONS[0])?;
        for link in &self.chain {
            let sym = match link.status {
                LinkStatus::Equal => "=",
                LinkStatus::Strict => "<",
                LinkStatus::Unknown => "<=?",
            };
            write!(f, " {sym} {}", link.larger)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn pow(p: i64) -> SeqExpr {
        SeqExpr::power(int(p)).unwrap()
    }

    fn geo(n: i64, d: i64) -> SeqExpr {
        SeqExpr::geometric(ratio(n, d)).unwrap()
    }

    #[test]
    fn soft_generator_collapses() {
        let cfg = EngineConfig::default();
        let r = classify_principal(&geo(1, 2), &IdealDesc::KH, &cfg).unwrap();
        assert!(r.is_bh_ideal.is_yes());
        assert_eq!(r.collapse_target, Some(IdealDesc::principal(geo(1, 2))));
        assert!(r.chain.iter().all(|l| l.status == LinkStatus::Equal));
    }

    #[test]
    fn non_soft_generator_is_strict() {
        let cfg = EngineConfig::default();
        let r = classify_principal(&pow(1), &IdealDesc::KH, &cfg).unwrap();
        assert!(r.is_bh_ideal.is_no());
        assert_eq!(r.link(0), LinkStatus::Equal);
        assert!((1..5).all(|i| r.link(i) == LinkStatus::Strict));
        assert!(r.collapse_target.is_none());
        assert!(nonlinearity_witness(&pow(1), &IdealDesc::KH, &cfg).unwrap().is_yes());
        assert!(nonlinearity_witness(&geo(1, 2), &IdealDesc::KH, &cfg).unwrap().is_no());
    }

    #[test]
    fn finite_rank_collapses_to_fh() {
        let cfg = EngineConfig::default();
        let f = SeqExpr::finite(vec![int(1), int(1)]).unwrap();
        let r = classify_principal(&f, &IdealDesc::KH, &cfg).unwrap();
        assert_eq!(r.collapse_target, Some(IdealDesc::FH));
        assert!(nonlinearity_witness(&SeqExpr::finite(vec![int(1)]).unwrap(), &IdealDesc::KH, &cfg).unwrap().is_no());
    }

    #[test]
    fn chain_link_probe() {
        let cfg = EngineConfig::default();
        let j = IdealDesc::principal(pow(1));
        let v = probe_chain_link(&pow(1), &j, &cfg).unwrap();
        assert!(v.is_no());
        assert!(v.certificate().unwrap().detail.contains("pow(2)"));
        assert!(probe_chain_link(&pow(3), &IdealDesc::KH, &cfg).unwrap().is_yes());
        let g = IdealDesc::principal(geo(1, 2));
        assert!(probe_chain_link(&geo(1, 2), &g, &cfg).unwrap().is_yes());
    }

    #[test]
    fn finitely_generated() {
        let cfg = EngineConfig::default();
        let r = classify_finitely_generated(&[geo(1, 2), geo(1, 4)], &IdealDesc::KH, &cfg).unwrap();
        assert!(r.is_bh_ideal.is_yes());
        let single = classify_finitely_generated(&[pow(1)], &IdealDesc::KH, &cfg).unwrap();
        assert_eq!(single, classify_principal(&pow(1), &IdealDesc::KH, &cfg).unwrap());
        assert!(matches!(classify_finitely_generated(&[], &IdealDesc::KH, &cfg), Err(Error::Argument(_))));
    }

    #[test]
    fn two_generators() {
        let cfg = EngineConfig::default();
        assert!(two_generator_principality(&pow(1), &pow(1), &IdealDesc::KH, &cfg).unwrap().is_no());
        assert!(two_generator_principality(&geo(1, 2), &geo(1, 2), &IdealDesc::KH, &cfg).unwrap().is_yes());
        let f = SeqExpr::finite(vec![int(1)]).unwrap();
        let f2 = SeqExpr::scale(int(2), f.clone()).unwrap();
        let j = IdealDesc::soft_product(f.clone());
        assert!(two_generator_principality(&f, &f2, &j, &cfg).unwrap().is_yes());
        assert!(matches!(
            two_generator_principality(&pow(1), &pow(2), &IdealDesc::KH, &cfg),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn precondition_reported() {
        let cfg = EngineConfig::default();
        let r = classify_principal(&pow(1), &IdealDesc::principal(pow(2)), &cfg);
        assert!(matches!(r, Err(Error::Precondition(_))));
    }
}
