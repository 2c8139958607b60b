//! Finite-dimensional cross-checks: truncated diagonal and dense operators,
//! their singular values, and explicit ratio and factorization checks.

use nalgebra::{Complex, DMatrix};
use num::{Signed, Zero};
use serde::Serialize;

use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::ideal::{member, member_normal, normalize, reduce_product, IdealDesc, Normal, SoftnessResult};
use crate::rational::{self, Rational};
use crate::seq::expr::{ampliate, log_eval, product, SeqExpr, SeqNode};
use crate::verdict::IndexRange;

pub type Complex64 = Complex<f64>;

/// Largest dimension accepted for the dense model.
pub const DENSE_MAX_DIM: usize = 512;

#[derive(Clone, Debug, PartialEq)]
pub enum TruncatedOperator {
    Diagonal(Vec<Complex64>),
    Dense(DMatrix<Complex64>),
}

impl TruncatedOperator {
    pub fn diagonal(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Argument("operator dimension must be >= 1".into()));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Argument("operator entries must be finite".into()));
        }
        Ok(TruncatedOperator::Diagonal(entries))
    }

    pub fn dense(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::Argument(format!("dense operator must be square and non-empty, got {}x{}", m.nrows(), m.ncols())));
        }
        if m.nrows() > DENSE_MAX_DIM {
            return Err(Error::Argument(format!("dense dimension {} exceeds {DENSE_MAX_DIM}", m.nrows())));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Argument("operator entries must be finite".into()));
        }
        Ok(TruncatedOperator::Dense(m))
    }

    /// `diag(e_1, ..., e_n)`.
    pub fn from_seq(e: &SeqExpr, n: usize) -> Result<Self> {
        let entries = (1..=n as u64).map(|i| Complex64::new(log_eval(e, i).exp(), 0.0)).collect();
        Self::diagonal(entries)
    }

    pub fn dimension(&self) -> usize {
        match self {
            TruncatedOperator::Diagonal(d) => d.len(),
            TruncatedOperator::Dense(m) => m.nrows(),
        }
    }
}

/// Singular values in non-increasing order.
pub fn singular_values(op: &TruncatedOperator) -> Vec<f64> {
    let mut s: Vec<f64> = match op {
        TruncatedOperator::Diagonal(d) => d.iter().map(|z| z.norm()).collect(),
        TruncatedOperator::Dense(m) => m.clone().svd(false, false).singular_values.iter().copied().collect(),
    };
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Observation {
    pub index: u64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub check: String,
    pub window: IndexRange,
    pub observed: Vec<Observation>,
    pub target: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

/// About 64 geometrically spaced indices in `[lo, hi]`.
fn sample_indices(lo: u64, hi: u64) -> Vec<u64> {
    EngineConfig { window: (lo.max(1), hi.max(1)), grid_points: 64, ..EngineConfig::default() }.grid()
}

fn observe(indices: &[u64], worst: Option<u64>, f: impl Fn(u64) -> f64) -> Vec<Observation> {
    let mut idx: Vec<u64> = indices.to_vec();
    idx.extend(worst);
    idx.sort_unstable();
    idx.dedup();
    idx.into_iter().map(|n| Observation { index: n, value: f(n) }).collect()
}

fn check_window(n: u64) -> Result<IndexRange> {
    if n < 2 {
        return Err(Error::Argument("window bound must be >= 2".into()));
    }
    Ok(IndexRange { start: n / 2, end: n })
}

/// `D_m` shrinks `1/n` by a factor tending to `1/m`: checks
/// `(1/k) / (1/ceil(k/m))` on the tail `[N/2, N]`.
pub fn verify_ratio_1_over_m(m: u64, n: u64, tol: f64) -> Result<OracleReport> {
    if m == 0 {
        return Err(Error::Argument("m must be >= 1".into()));
    }
    let window = check_window(n)?;
    let target = 1.0 / m as f64;
    let ratio = |k: u64| k.div_ceil(m) as f64 / k as f64;
    let (worst, dev) = (window.start..=window.end)
        .map(|k| (k, (ratio(k) - target).abs()))
        .fold((window.start, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    let passed = dev <= tol;
    Ok(OracleReport {
        check: format!("ratio_1_over_m(m={m})"),
        window,
        observed: observe(&sample_indices(window.start, window.end), Some(worst), ratio),
        target,
        tolerance: tol,
        passed,
        detail: format!("largest deviation {dev:.3e} at k = {worst}"),
    })
}

/// `1/n^2` against `D_m(1/n^3)`: the ratio `ceil(k/m)^3 / k^2` must exceed
/// `threshold` throughout the tail `[N/2, N]`.
pub fn verify_divergence_e2(m: u64, n: u64, threshold: f64) -> Result<OracleReport> {
    if m == 0 {
        return Err(Error::Argument("m must be >= 1".into()));
    }
    let window = check_window(n)?;
    let ratio = |k: u64| (k.div_ceil(m) as f64).powi(3) / (k as f64).powi(2);
    let (worst, min) = (window.start..=window.end)
        .map(|k| (k, ratio(k)))
        .fold((window.start, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
    Ok(OracleReport {
        check: format!("divergence_e2(m={m})"),
        window,
        observed: observe(&sample_indices(window.start, window.end), Some(worst), ratio),
        target: threshold,
        tolerance: 0.0,
        passed: min > threshold,
        detail: format!("smallest tail ratio {min:.6e} at k = {worst}"),
    })
}

/// Exact square root of a sequence expression, when it exists in the grammar.
fn sqrt_expr(e: &SeqExpr) -> Option<SeqExpr> {
    let two = rational::int(2);
    let sqrt_rat = |r: &Rational| -> Option<Rational> {
        let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
        let s = Rational::new(n, d);
        (&s * &s == *r).then_some(s)
    };
    match e.node() {
        SeqNode::PowerLog { p, q } => SeqExpr::power_log(p / &two, q / &two).ok(),
        SeqNode::Geometric { r } => SeqExpr::geometric(sqrt_rat(r)?).ok(),
        SeqNode::Scale { c, inner } => SeqExpr::scale(sqrt_rat(c)?, sqrt_expr(inner)?).ok(),
        SeqNode::Ampliate { m, inner } => Some(ampliate(&sqrt_expr(inner)?, *m)),
        SeqNode::Product(a, b) => Some(product(&sqrt_expr(a)?, &sqrt_expr(b)?)),
        _ => None,
    }
}

/// `c / x` for like atoms.
fn quotient(c: &SeqExpr, x: &SeqExpr) -> Option<SeqExpr> {
    match (c.node(), x.node()) {
        (SeqNode::PowerLog { p: pc, q: qc }, SeqNode::PowerLog { p: px, q: qx }) => SeqExpr::power_log(pc - px, qc - qx).ok(),
        (SeqNode::Geometric { r: rc }, SeqNode::Geometric { r: rx }) => SeqExpr::geometric(rc / rx).ok(),
        (SeqNode::Scale { c: k, inner }, _) => SeqExpr::scale(k.clone(), quotient(inner, x)?).ok(),
        (SeqNode::Product(a, b), _) if a == x => Some(b.clone()),
        (SeqNode::Product(a, b), _) if b == x => Some(a.clone()),
        _ => None,
    }
}

/// Splits `c = x y` with `x` meant for `I` and `y` for `J`.
fn split(c: &SeqExpr, i: &Normal, j: &Normal) -> Option<(SeqExpr, SeqExpr)> {
    if i == j {
        let r = sqrt_expr(c)?;
        return Some((r.clone(), r));
    }
    match (i, j) {
        (Normal::Principal(eta), _) => Some((eta.clone(), quotient(c, eta)?)),
        (_, Normal::Principal(rho)) => Some((quotient(c, rho)?, rho.clone())),
        _ => {
            let r = sqrt_expr(c)?;
            Some((r.clone(), r))
        }
    }
}

/// Checks `x` against `ideal` over `1..=n`; returns a failure message.
fn dominated(x: &SeqExpr, ideal: &Normal, n: u64, cfg: &EngineConfig) -> std::result::Result<String, String> {
    match ideal {
        Normal::Kh => {
            let (first, last) = (log_eval(x, 1), log_eval(x, n));
            if last - first <= 0.01f64.ln() {
                Ok(format!("{x} falls below 1% of its first entry by N"))
            } else {
                Err(format!("{x} does not decay below 1% of its first entry by N"))
            }
        }
        _ => {
            let v = member_normal(x, ideal, cfg);
            let w = v.witness().ok_or_else(|| format!("{x} is not certified in the ideal"))?;
            let m = w.m.unwrap_or(1);
            let c = w.constant.clone().unwrap_or_else(|| rational::int(1));
            let gen = match ideal {
                Normal::Principal(g) | Normal::Soft(g) => ampliate(g, m),
                Normal::Fh => return if x.is_finite_rank() { Ok(format!("{x} has finite rank")) } else { Err(format!("{x} has infinite rank")) },
                _ => return Err("unreduced ideal".into()),
            };
            let lc = rational::ln(&c);
            let bad = (1..=n).find(|&k| {
                let lx = log_eval(x, k);
                lx > f64::NEG_INFINITY && lx > lc + log_eval(&gen, k) + 1e-12 * lx.abs().max(1.0)
            });
            match bad {
                None => Ok(format!("{x} <= {} D_{m} gen on 1..=N", rational::render(&c))),
                Some(k) => Err(format!("{x} exceeds {} D_{m} gen at index {k}", rational::render(&c))),
            }
        }
    }
}

/// Factorizes `diag(c)` at dimension `n` as `XY` with `X` in `I`, `Y` in `J`.
pub fn verify_product_split(c: &SeqExpr, i: &IdealDesc, j: &IdealDesc, n: u64, cfg: &EngineConfig) -> Result<OracleReport> {
    if n == 0 {
        return Err(Error::Argument("dimension must be >= 1".into()));
    }
    let pj = reduce_product(&IdealDesc::product(i.clone(), j.clone()));
    if !member(c, &pj, cfg).is_yes() {
        return Err(Error::Precondition(format!("{c} is not certified in {pj}")));
    }
    let (ni, nj) = (normalize(i), normalize(j));
    let (x, y) = split(c, &ni, &nj).ok_or_else(|| Error::Argument(format!("no exact split of {c} for {i} and {j}")))?;

    // Reconstruction in the log domain over the whole diagonal.
    let err = |k: u64| {
        let (lx, ly, lc) = (log_eval(&x, k), log_eval(&y, k), log_eval(c, k));
        if lc == f64::NEG_INFINITY && (lx == f64::NEG_INFINITY || ly == f64::NEG_INFINITY) {
            0.0
        } else {
            (lx + ly - lc).abs()
        }
    };
    let (worst, max_err) = (1..=n).map(|k| (k, err(k))).fold((1, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    // Exact arithmetic on a prefix where the entries are rational.
    let exact_ok = (1..=n.min(256)).all(|k| {
        use crate::seq::expr::eval;
        match (eval(&x, k).exact(), eval(&y, k).exact(), eval(c, k).exact()) {
            (Some(a), Some(b), Some(z)) => (a * b - z).is_zero(),
            _ => true,
        }
    });
    let structural = product(&x, &y) == *c;
    let dx = dominated(&x, &ni, n, cfg);
    let dy = dominated(&y, &nj, n, cfg);
    let tol = 0.0;
    let passed = max_err <= tol && exact_ok && dx.is_ok() && dy.is_ok();
    let msg = |r: &std::result::Result<String, String>| match r {
        Ok(s) | Err(s) => s.clone(),
    };
    Ok(OracleReport {
        check: format!("product_split(c={c}, I={i}, J={j})"),
        window: IndexRange { start: 1, end: n },
        observed: observe(&sample_indices(1, n), Some(worst), err),
        target: 0.0,
        tolerance: tol,
        passed,
        detail: format!(
            "X = diag({x}), Y = diag({y}); reconstruction error {max_err:e}; symbolic product {}; X: {}; Y: {}",
            if structural { "matches" } else { "differs" },
            msg(&dx),
            msg(&dy)
        ),
    })
}

/// Checks `s_n <= C D_k(s)_n T_n` on `1..=n` for an issued softness witness.
pub fn verify_softness_witness(s: &SeqExpr, res: &SoftnessResult, n: u64) -> Result<OracleReport> {
    let (w, detail) = match (res.verdict.witness(), &res.witness_detail) {
        (Some(w), Some(d)) if res.verdict.is_yes() => (w, d),
        _ => return Err(Error::Precondition("softness witness check needs a Yes verdict with a witness".into())),
    };
    if n == 0 {
        return Err(Error::Argument("window bound must be >= 1".into()));
    }
    let c = w.constant.clone().unwrap_or_else(|| rational::int(1));
    if !c.is_positive() {
        return Err(Error::Argument("witness constant must be positive".into()));
    }
    let lc = rational::ln(&c);
    let dk = ampliate(s, detail.k);
    let excess = |k: u64| {
        let ls = log_eval(s, k);
        if ls == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        (ls - log_eval(&dk, k) - log_eval(&detail.t_witness, k) - lc) / std::f64::consts::LN_10
    };
    let tol = 1e-9;
    let (worst, max) = (1..=n).map(|k| (k, excess(k))).fold((1, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    Ok(OracleReport {
        check: format!("softness_witness(S={s}, k={}, T={})", detail.k, detail.t_witness),
        window: IndexRange { start: 1, end: n },
        observed: observe(&sample_indices(1, n), Some(worst), excess),
        target: 0.0,
        tolerance: tol,
        passed: max <= tol,
        detail: format!("log10 of s_n / (C D_k(s)_n T_n) peaks at {max:.3e} (index {worst}), C = {}", rational::render(&c)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::is_soft;
    use crate::rational::{int, ratio};

    fn pow(p: i64) -> SeqExpr {
        SeqExpr::power(int(p)).unwrap()
    }

    #[test]
    fn diagonal_singular_values() {
        let op = TruncatedOperator::diagonal(vec![
            Complex64::new(0.0, 1.0),
            Complex64::new(-0.5, 0.0),
            Complex64::new(0.0, 1.0 / 3.0),
        ])
        .unwrap();
        assert_eq!(singular_values(&op), vec![1.0, 0.5, 1.0 / 3.0]);
        let op = TruncatedOperator::from_seq(&pow(1), 5).unwrap();
        let sv = singular_values(&op);
        assert!(sv.iter().zip(1..).all(|(s, k)| (s - 1.0 / k as f64).abs() < 1e-15));
    }

    #[test]
    fn dense_singular_values() {
        let m = DMatrix::from_row_slice(2, 2, &[Complex64::zero(), Complex64::new(1.0, 0.0), Complex64::zero(), Complex64::zero()]);
        let sv = singular_values(&TruncatedOperator::dense(m).unwrap());
        assert!((sv[0] - 1.0).abs() < 1e-12 && sv[1].abs() < 1e-12);
        assert!(TruncatedOperator::diagonal(vec![Complex64::new(f64::NAN, 0.0)]).is_err());
        assert!(TruncatedOperator::dense(DMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn ratio_checks() {
        assert!(verify_ratio_1_over_m(2, 10_000, 1e-3).unwrap().passed);
        assert!(verify_ratio_1_over_m(1, 100, 1e-12).unwrap().passed);
        assert!(!verify_divergence_e2(1, 10, 1e3).unwrap().passed);
        assert!(verify_divergence_e2(1, 100_000, 1e3).unwrap().passed);
    }

    #[test]
    fn split_examples() {
        let cfg = EngineConfig::default();
        let g = |n, d| SeqExpr::geometric(ratio(n, d)).unwrap();
        let i = IdealDesc::principal(g(1, 2));
        let r = verify_product_split(&g(1, 4), &i, &i, 1000, &cfg).unwrap();
        assert!(r.passed, "{}", r.detail);
        let r = verify_product_split(&pow(3), &IdealDesc::principal(pow(1)), &IdealDesc::principal(pow(2)), 1000, &cfg).unwrap();
        assert!(r.passed, "{}", r.detail);
        let r = verify_product_split(&pow(1), &IdealDesc::KH, &IdealDesc::KH, 100_000, &cfg).unwrap();
        assert!(r.passed, "{}", r.detail);
    }

    #[test]
    fn softness_witness_check() {
        let cfg = EngineConfig::default();
        let g = SeqExpr::geometric(ratio(1, 2)).unwrap();
        let res = is_soft(&g, &IdealDesc::KH, &cfg).unwrap();
        assert!(verify_softness_witness(&g, &res, 10_000).unwrap().passed);
        let res = is_soft(&pow(1), &IdealDesc::KH, &cfg).unwrap();
        assert!(verify_softness_witness(&pow(1), &res, 100).is_err());
    }
}
