//! Exact rational helpers shared by the sequence and ideal layers.

use num::bigint::{BigInt, Sign};
use num::{BigRational, One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `a/b`, a plain integer, or a decimal such as `-0.25`.
pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{whole}{frac}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let den = num::pow(BigInt::from(10), frac.len());
    let value = Rational::new(num, den);
    Some(if neg { -value } else { value })
}

/// Canonical text form: `n` for integers, `a/b` otherwise.
pub fn render(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Natural logarithm of a positive big integer, accurate for any magnitude.
pub fn ln_bigint(n: &BigInt) -> f64 {
    debug_assert!(n.sign() == Sign::Plus);
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().map_or(f64::NAN, f64::ln);
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().map_or(f64::NAN, f64::ln) + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational; `-inf` for zero.
pub fn ln(r: &Rational) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    ln_bigint(&r.numer().abs()) - ln_bigint(r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    let v = r.to_f64().unwrap_or(f64::NAN);
    if v.is_finite() && (v != 0.0 || r.is_zero()) {
        v
    } else {
        // Out of f64 range: go through the logarithm.
        let s = if r.is_negative() { -1.0 } else { 1.0 };
        s * ln(&r.abs()).exp()
    }
}

/// Smallest "round" rational (four significant digits) that is at least `x`.
pub fn ceil_from_f64(x: f64) -> Rational {
    if !(x > 0.0) {
        return Rational::zero();
    }
    if !x.is_finite() {
        return Rational::from_float(f64::MAX).unwrap_or_else(Rational::one);
    }
    let exp = x.log10().floor() as i32 - 3;
    let scale = 10f64.powi(exp);
    // absorb rounding noise in x before taking the ceiling
    let mantissa = (x / scale * (1.0 - 1e-9)).ceil();
    let m = Rational::from_float(mantissa).unwrap_or_else(Rational::one);
    let out = if exp >= 0 {
        m * Rational::from_integer(num::pow(BigInt::from(10), exp as usize))
    } else {
        m / Rational::from_integer(num::pow(BigInt::from(10), (-exp) as usize))
    };
    if to_f64(&out) < x * (1.0 - 1e-9) {
        // Guard against the rounding in `x / scale`.
        out * ratio(10001, 10000)
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse("3/6"), Some(ratio(1, 2)));
        assert_eq!(parse("0.25"), Some(ratio(1, 4)));
        assert_eq!(parse("-1.5"), Some(ratio(-3, 2)));
        assert_eq!(parse("7"), Some(int(7)));
        assert_eq!(parse(".5"), Some(ratio(1, 2)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("abc"), None);
        assert_eq!(parse("-"), None);
    }

    #[test]
    fn renders_canonically() {
        assert_eq!(render(&ratio(2, 4)), "1/2");
        assert_eq!(render(&int(-3)), "-3");
    }

    #[test]
    fn ln_handles_huge_values() {
        let big = Rational::from_integer(num::pow(BigInt::from(2), 5000));
        let expected = 5000.0 * std::f64::consts::LN_2;
        assert!((ln(&big) - expected).abs() < 1e-9 * expected);
        assert!((ln(&ratio(1, 4)) + 4f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn ceil_is_an_upper_bound() {
        for x in [1e-300, 0.1234567, 1.0, 2.0000001, 3.5e7, 1e300] {
            let c = ceil_from_f64(x);
            assert!(to_f64(&c) >= x * (1.0 - 1e-9), "{x}");
            assert!(to_f64(&c) <= x * 1.002, "{x}");
        }
    }
}
