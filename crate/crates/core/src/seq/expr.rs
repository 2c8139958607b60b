use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};
use crate::rational::{self, Rational};

/// `2 ln 2`: a `PowerLog(p, q)` with negative `q` is non-increasing from
/// `n = 1` on as long as `-q <= 2 ln 2 * p`.
const LOG_GROWTH_LIMIT: f64 = 2.0 * std::f64::consts::LN_2;

/// One node of a sequence expression. Every node denotes a non-negative,
/// non-increasing sequence indexed from 1 that tends to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqNode {
    /// `n^(-p) * log(n+1)^(-q)`
    PowerLog { p: Rational, q: Rational },
    /// `r^n` with `0 < r < 1`
    Geometric { r: Rational },
    /// Explicit prefix, zero afterwards.
    Finite { values: Vec<Rational> },
    Scale { c: Rational, inner: SeqExpr },
    /// Each entry repeated `m` times.
    Ampliate { m: u64, inner: SeqExpr },
    /// `n -> inner(k n)`
    Decimate { k: u64, inner: SeqExpr },
    Sum(SeqExpr, SeqExpr),
    Max(SeqExpr, SeqExpr),
    Product(SeqExpr, SeqExpr),
}

/// Immutable, cheaply clonable sequence expression.
#[derive(Clone, PartialEq, Eq)]
pub struct SeqExpr(Arc<SeqNode>);

impl fmt::Debug for SeqExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeqExpr({self})")
    }
}

impl SeqExpr {
    fn wrap(node: SeqNode) -> Self {
        SeqExpr(Arc::new(node))
    }

    pub fn node(&self) -> &SeqNode {
        &self.0
    }

    pub fn power_log(p: Rational, q: Rational) -> Result<Self> {
        if p.is_negative() {
            return Err(domain(format!("pow: exponent p = {} must be >= 0", rational::render(&p))));
        }
        if p.is_zero() && !q.is_positive() {
            return Err(domain("pow(0, q) needs q > 0 to tend to zero"));
        }
        if q.is_negative() && rational::to_f64(&(-&q)) > LOG_GROWTH_LIMIT * rational::to_f64(&p) {
            return Err(domain(format!(
                "pow({}, {}) is not non-increasing at n = 1 (need -q <= 2 ln 2 * p)",
                rational::render(&p),
                rational::render(&q)
            )));
        }
        Ok(Self::wrap(SeqNode::PowerLog { p, q }))
    }

    /// `n^(-p)`.
    pub fn power(p: Rational) -> Result<Self> {
        Self::power_log(p, Rational::zero())
    }

    pub fn geometric(r: Rational) -> Result<Self> {
        if !r.is_positive() || r >= Rational::one() {
            return Err(domain(format!("geo: ratio {} must lie in (0, 1)", rational::render(&r))));
        }
        Ok(Self::wrap(SeqNode::Geometric { r }))
    }

    pub fn finite(values: Vec<Rational>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| v.is_negative()) {
            return Err(domain(format!("fin: entry {} is negative", rational::render(v))));
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(domain("fin: entries must be non-increasing"));
        }
        Ok(Self::wrap(SeqNode::Finite { values }))
    }

    pub fn scale(c: Rational, inner: SeqExpr) -> Result<Self> {
        if !c.is_positive() {
            return Err(domain(format!("scale: factor {} must be positive", rational::render(&c))));
        }
        Ok(Self::wrap(SeqNode::Scale { c, inner }))
    }

    /// Raw ampliation node; see [`ampliate`] for the normalizing form.
    pub fn amp(m: u64, inner: SeqExpr) -> Result<Self> {
        if m == 0 {
            return Err(domain("amp: order must be >= 1"));
        }
        Ok(Self::wrap(SeqNode::Ampliate { m, inner }))
    }

    /// Raw decimation node; see [`decimate`] for the normalizing form.
    pub fn dec(k: u64, inner: SeqExpr) -> Result<Self> {
        if k == 0 {
            return Err(domain("dec: step must be >= 1"));
        }
        Ok(Self::wrap(SeqNode::Decimate { k, inner }))
    }

    pub fn sum(a: SeqExpr, b: SeqExpr) -> Self {
        Self::wrap(SeqNode::Sum(a, b))
    }

    pub fn max(a: SeqExpr, b: SeqExpr) -> Self {
        Self::wrap(SeqNode::Max(a, b))
    }

    /// Raw pointwise product node; see [`product`] for the folding form.
    pub fn prod(a: SeqExpr, b: SeqExpr) -> Self {
        Self::wrap(SeqNode::Product(a, b))
    }

    /// The identically zero sequence.
    pub fn zero() -> Self {
        Self::wrap(SeqNode::Finite { values: Vec::new() })
    }

    /// Number of leading positive entries, or `None` for infinite support.
    pub fn support(&self) -> Option<u64> {
        match self.node() {
            SeqNode::PowerLog { .. } | SeqNode::Geometric { .. } => None,
            SeqNode::Finite { values } => Some(values.iter().take_while(|v| v.is_positive()).count() as u64),
            SeqNode::Scale { inner, .. } => inner.support(),
            SeqNode::Ampliate { m, inner } => inner.support().map(|l| l.saturating_mul(*m)),
            SeqNode::Decimate { k, inner } => inner.support().map(|l| l / k),
            SeqNode::Sum(a, b) | SeqNode::Max(a, b) => match (a.support(), b.support()) {
                (Some(x), Some(y)) => Some(x.max(y)),
                _ => None,
            },
            SeqNode::Product(a, b) => match (a.support(), b.support()) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (Some(x), None) | (None, Some(x)) => Some(x),
                (None, None) => None,
            },
        }
    }

    pub fn is_finite_rank(&self) -> bool {
        self.support().is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.support() == Some(0)
    }
}

/// A sequence value: exact where the node allows it, `f64` once logarithms
/// or fractional powers are involved.
#[derive(Clone, Debug)]
pub enum Value {
    Exact(Rational),
    Approx(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => rational::to_f64(r),
            Value::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Approx(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Exact(r) => r.is_zero(),
            Value::Approx(x) => *x == 0.0,
        }
    }

    fn combine(
        &self,
        other: &Value,
        exact: impl Fn(&Rational, &Rational) -> Rational,
        approx: impl Fn(f64, f64) -> f64,
    ) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(exact(a, b)),
            _ => Value::Approx(approx(self.to_f64(), other.to_f64())),
        }
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Some(a.cmp(b)),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

fn index_f64(n: u64) -> f64 {
    n as f64
}

/// Value of `e` at index `n >= 1`.
pub fn eval(e: &SeqExpr, n: u64) -> Value {
    assert!(n >= 1, "sequences are indexed from 1");
    match e.node() {
        SeqNode::PowerLog { p, q } => {
            if q.is_zero() && p.is_integer() {
                let exp = p.to_integer().to_usize().expect("integer exponent fits usize");
                let denom = num::pow(num::BigInt::from(n), exp);
                Value::Exact(Rational::new(num::BigInt::one(), denom))
            } else {
                Value::Approx(log_eval(e, n).exp())
            }
        }
        SeqNode::Geometric { r } => {
            let exp = usize::try_from(n).expect("index fits usize");
            Value::Exact(num::pow(r.clone(), exp))
        }
        SeqNode::Finite { values } => {
            let v = usize::try_from(n - 1).ok().and_then(|i| values.get(i)).cloned().unwrap_or_else(Rational::zero);
            Value::Exact(v)
        }
        SeqNode::Scale { c, inner } => match eval(inner, n) {
            Value::Exact(v) => Value::Exact(v * c),
            Value::Approx(x) => Value::Approx(x * rational::to_f64(c)),
        },
        SeqNode::Ampliate { m, inner } => eval(inner, n.div_ceil(*m)),
        SeqNode::Decimate { k, inner } => eval(inner, n.saturating_mul(*k)),
        SeqNode::Sum(a, b) => eval(a, n).combine(&eval(b, n), |x, y| x + y, |x, y| x + y),
        SeqNode::Max(a, b) => eval(a, n).combine(&eval(b, n), |x, y| x.max(y).clone(), f64::max),
        SeqNode::Product(a, b) => eval(a, n).combine(&eval(b, n), |x, y| x * y, |x, y| x * y),
    }
}

/// Natural logarithm of the value at index `n`; `-inf` where the sequence
/// vanishes. Never underflows, so it is the workhorse of the numeric paths.
pub fn log_eval(e: &SeqExpr, n: u64) -> f64 {
    debug_assert!(n >= 1);
    match e.node() {
        SeqNode::PowerLog { p, q } => {
            let x = index_f64(n);
            let mut out = 0.0;
            if !p.is_zero() {
                out -= rational::to_f64(p) * x.ln();
            }
            if !q.is_zero() {
                out -= rational::to_f64(q) * x.ln_1p().ln();
            }
            out
        }
        SeqNode::Geometric { r } => index_f64(n) * rational::ln(r),
        SeqNode::Finite { values } => usize::try_from(n - 1)
            .ok()
            .and_then(|i| values.get(i))
            .map_or(f64::NEG_INFINITY, rational::ln),
        SeqNode::Scale { c, inner } => rational::ln(c) + log_eval(inner, n),
        SeqNode::Ampliate { m, inner } => log_eval(inner, n.div_ceil(*m)),
        SeqNode::Decimate { k, inner } => log_eval(inner, n.saturating_mul(*k)),
        SeqNode::Sum(a, b) => log_add(log_eval(a, n), log_eval(b, n)),
        SeqNode::Max(a, b) => log_eval(a, n).max(log_eval(b, n)),
        SeqNode::Product(a, b) => {
            let (x, y) = (log_eval(a, n), log_eval(b, n));
            if x == f64::NEG_INFINITY || y == f64::NEG_INFINITY {
                f64::NEG_INFINITY
            } else {
                x + y
            }
        }
    }
}

pub(crate) fn log_add(x: f64, y: f64) -> f64 {
    let (hi, lo) = if x >= y { (x, y) } else { (y, x) };
    if lo == f64::NEG_INFINITY {
        hi
    } else {
        hi + (lo - hi).exp().ln_1p()
    }
}

/// `D_m e`, normalized so that `D_1 e = e` and `D_m D_k e = D_{mk} e`.
pub fn ampliate(e: &SeqExpr, m: u64) -> SeqExpr {
    assert!(m >= 1, "ampliation order must be >= 1");
    if m == 1 {
        return e.clone();
    }
    match e.node() {
        SeqNode::Ampliate { m: k, inner } => SeqExpr::wrap(SeqNode::Ampliate { m: m.saturating_mul(*k), inner: inner.clone() }),
        _ => SeqExpr::wrap(SeqNode::Ampliate { m, inner: e.clone() }),
    }
}

/// `n -> e(k n)`, folding `dec(k, amp(k, e)) = e` and nested decimations.
pub fn decimate(e: &SeqExpr, k: u64) -> SeqExpr {
    assert!(k >= 1, "decimation step must be >= 1");
    if k == 1 {
        return e.clone();
    }
    match e.node() {
        SeqNode::Ampliate { m, inner } if *m == k => inner.clone(),
        SeqNode::Decimate { k: j, inner } => SeqExpr::wrap(SeqNode::Decimate { k: k.saturating_mul(*j), inner: inner.clone() }),
        _ => SeqExpr::wrap(SeqNode::Decimate { k, inner: e.clone() }),
    }
}

/// Pointwise product with exact folding of like atoms:
/// `pow(p1,q1) pow(p2,q2) = pow(p1+p2, q1+q2)`, `geo(r) geo(s) = geo(rs)`,
/// finite-by-finite and scale factors pulled outward.
pub fn product(a: &SeqExpr, b: &SeqExpr) -> SeqExpr {
    match (a.node(), b.node()) {
        (SeqNode::PowerLog { p: p1, q: q1 }, SeqNode::PowerLog { p: p2, q: q2 }) => {
            SeqExpr::wrap(SeqNode::PowerLog { p: p1 + p2, q: q1 + q2 })
        }
        (SeqNode::Geometric { r }, SeqNode::Geometric { r: s }) => SeqExpr::wrap(SeqNode::Geometric { r: r * s }),
        (SeqNode::Finite { values: x }, SeqNode::Finite { values: y }) => {
            SeqExpr::wrap(SeqNode::Finite { values: x.iter().zip(y).map(|(u, v)| u * v).collect() })
        }
        (SeqNode::Scale { c, inner }, _) => rescale(c, product(inner, b)),
        (_, SeqNode::Scale { c, inner }) => rescale(c, product(a, inner)),
        _ => SeqExpr::prod(a.clone(), b.clone()),
    }
}

fn rescale(c: &Rational, e: SeqExpr) -> SeqExpr {
    match e.node() {
        SeqNode::Scale { c: d, inner } => SeqExpr::wrap(SeqNode::Scale { c: c * d, inner: inner.clone() }),
        _ => SeqExpr::wrap(SeqNode::Scale { c: c.clone(), inner: e }),
    }
}

/// `n`-fold pointwise power, `n >= 1`.
pub fn pointwise_power(e: &SeqExpr, n: u32) -> SeqExpr {
    assert!(n >= 1, "power must be >= 1");
    (1..n).fold(e.clone(), |acc, _| product(&acc, e))
}

/// Sum over a non-empty list, left-associated.
pub fn sum_all(items: &[SeqExpr]) -> Option<SeqExpr> {
    let (first, rest) = items.split_first()?;
    Some(rest.iter().fold(first.clone(), |acc, x| SeqExpr::sum(acc, x.clone())))
}
