//! Asymptotic normal forms.
//!
//! Every expression of the grammar is, up to bounded factors in both
//! directions, either eventually zero or of the shape
//! `base^(n/denom) * n^(-p) * log(n)^(-q)`. These classes are totally
//! ordered by `O`, which is what makes the symbolic fast path complete.

use std::cmp::Ordering;

use num::integer::Integer;
use num::{One, Signed, Zero};

use super::expr::{SeqExpr, SeqNode};
use crate::rational::{self, Rational};

/// Largest bit size we are willing to materialize when comparing
/// exponential rates exactly. Beyond it the comparison reports `None`.
const MAX_RATE_BITS: u64 = 1 << 22;

/// Exponential decay rate `base^(1/denom)` with `0 < base <= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rate {
    base: Rational,
    denom: u64,
}

impl Rate {
    pub fn unit() -> Self {
        Rate { base: Rational::one(), denom: 1 }
    }

    pub fn of(base: Rational, denom: u64) -> Self {
        debug_assert!(base.is_positive() && denom >= 1);
        if base.is_one() {
            Self::unit()
        } else {
            Rate { base, denom }
        }
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn is_unit(&self) -> bool {
        self.base.is_one()
    }

    /// `ln(base) / denom`, the per-index log decay. Used for estimates only.
    pub fn log_rate(&self) -> f64 {
        rational::ln(&self.base) / self.denom as f64
    }

    fn raised(base: &Rational, exp: u64) -> Option<Rational> {
        let bits = base.numer().bits().max(base.denom().bits());
        if bits.saturating_mul(exp) > MAX_RATE_BITS {
            return None;
        }
        Some(num::pow(base.clone(), usize::try_from(exp).ok()?))
    }

    /// Pointwise product of two rates.
    pub fn mul(&self, other: &Rate) -> Option<Rate> {
        if self.is_unit() {
            return Some(other.clone());
        }
        if other.is_unit() {
            return Some(self.clone());
        }
        let l = self.denom.lcm(&other.denom);
        let a = Self::raised(&self.base, l / self.denom)?;
        let b = Self::raised(&other.base, l / other.denom)?;
        Some(Rate::of(a * b, l))
    }

    /// Rate after `n -> k n`.
    pub fn decimated(&self, k: u64) -> Option<Rate> {
        if self.is_unit() {
            return Some(self.clone());
        }
        let g = self.denom.gcd(&k);
        Some(Rate::of(Self::raised(&self.base, k / g)?, self.denom / g))
    }

    /// Rate after `D_m`.
    pub fn ampliated(&self, m: u64) -> Rate {
        if self.is_unit() {
            self.clone()
        } else {
            Rate { base: self.base.clone(), denom: self.denom.saturating_mul(m) }
        }
    }

    /// Quotient `self / other`; the base may exceed one.
    pub fn div(&self, other: &Rate) -> Option<Rate> {
        let l = self.denom.lcm(&other.denom);
        let a = Self::raised(&self.base, l / self.denom)?;
        let b = Self::raised(&other.base, l / other.denom)?;
        let base = a / b;
        Some(if base.is_one() { Rate::unit() } else { Rate { base, denom: l } })
    }

    /// Orders by magnitude: `Less` means `self` decays strictly faster.
    pub fn cmp_rate(&self, other: &Rate) -> Option<Ordering> {
        if self.denom == other.denom {
            return Some(self.base.cmp(&other.base));
        }
        let l = self.denom.lcm(&other.denom);
        let a = Self::raised(&self.base, l / self.denom)?;
        let b = Self::raised(&other.base, l / other.denom)?;
        Some(a.cmp(&b))
    }
}

/// Asymptotic class of a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Class {
    /// Eventually zero, with this many positive entries.
    Finite { support: u64 },
    /// `rate^n * n^(-p) * log(n)^(-q)` up to bounded factors.
    Decay { rate: Rate, p: Rational, q: Rational },
}

impl Class {
    pub fn is_finite(&self) -> bool {
        matches!(self, Class::Finite { .. })
    }

    /// Magnitude order under `O` on all indices: `Less` means `self = o(other)`
    /// for decaying classes, and strictly smaller support for finite ones.
    pub fn cmp_size(&self, other: &Class) -> Option<Ordering> {
        match (self, other) {
            (Class::Finite { support: a }, Class::Finite { support: b }) => Some(a.cmp(b)),
            (Class::Finite { .. }, Class::Decay { .. }) => Some(Ordering::Less),
            (Class::Decay { .. }, Class::Finite { .. }) => Some(Ordering::Greater),
            (Class::Decay { rate: ra, p: pa, q: qa }, Class::Decay { rate: rb, p: pb, q: qb }) => {
                Some(ra.cmp_rate(rb)?.then_with(|| pb.cmp(pa)).then_with(|| qb.cmp(qa)))
            }
        }
    }

    pub fn mul(&self, other: &Class) -> Option<Class> {
        Some(match (self, other) {
            (Class::Finite { support: a }, Class::Finite { support: b }) => Class::Finite { support: *a.min(b) },
            (Class::Finite { support }, Class::Decay { .. }) | (Class::Decay { .. }, Class::Finite { support }) => {
                Class::Finite { support: *support }
            }
            (Class::Decay { rate: ra, p: pa, q: qa }, Class::Decay { rate: rb, p: pb, q: qb }) => {
                Class::Decay { rate: ra.mul(rb)?, p: pa + pb, q: qa + qb }
            }
        })
    }

    fn larger(self, other: Class) -> Option<Class> {
        Some(match self.cmp_size(&other)? {
            Ordering::Less => other,
            _ => self,
        })
    }

    /// `self / other` for decaying classes (used to size witness factors).
    pub fn gap(&self, other: &Class) -> Option<(Rate, Rational, Rational)> {
        match (self, other) {
            (Class::Decay { rate: ra, p: pa, q: qa }, Class::Decay { rate: rb, p: pb, q: qb }) => {
                Some((ra.div(rb)?, pa - pb, qa - qb))
            }
            _ => None,
        }
    }

    /// A grammar expression in this class (decaying classes with a valid
    /// power-log part only).
    pub fn representative(&self) -> Option<SeqExpr> {
        match self {
            Class::Finite { support } => {
                SeqExpr::finite(vec![Rational::one(); usize::try_from(*support).ok()?]).ok()
            }
            Class::Decay { rate, p, q } => {
                let exp = if rate.is_unit() {
                    None
                } else if rate.base() < &Rational::one() {
                    let g = SeqExpr::geometric(rate.base().clone()).ok()?;
                    Some(super::expr::ampliate(&g, rate.denom()))
                } else {
                    return None;
                };
                let pl = if p.is_zero() && q.is_zero() {
                    None
                } else {
                    Some(SeqExpr::power_log(p.clone(), q.clone()).ok()?)
                };
                match (exp, pl) {
                    (Some(a), Some(b)) => Some(super::expr::product(&a, &b)),
                    (Some(a), None) | (None, Some(a)) => Some(a),
                    (None, None) => None,
                }
            }
        }
    }
}

/// Normal form of `e`, or `None` when an exact rate would be too large.
pub fn classify(e: &SeqExpr) -> Option<Class> {
    Some(match e.node() {
        SeqNode::PowerLog { p, q } => Class::Decay { rate: Rate::unit(), p: p.clone(), q: q.clone() },
        SeqNode::Geometric { r } => Class::Decay { rate: Rate::of(r.clone(), 1), p: Rational::zero(), q: Rational::zero() },
        SeqNode::Finite { .. } => Class::Finite { support: e.support().unwrap_or(0) },
        SeqNode::Scale { inner, .. } => classify(inner)?,
        SeqNode::Ampliate { m, inner } => match classify(inner)? {
            Class::Finite { support } => Class::Finite { support: support.saturating_mul(*m) },
            Class::Decay { rate, p, q } => Class::Decay { rate: rate.ampliated(*m), p, q },
        },
        SeqNode::Decimate { k, inner } => match classify(inner)? {
            Class::Finite { support } => Class::Finite { support: support / k },
            Class::Decay { rate, p, q } => Class::Decay { rate: rate.decimated(*k)?, p, q },
        },
        SeqNode::Sum(a, b) | SeqNode::Max(a, b) => classify(a)?.larger(classify(b)?)?,
        SeqNode::Product(a, b) => classify(a)?.mul(&classify(b)?)?,
    })
}
