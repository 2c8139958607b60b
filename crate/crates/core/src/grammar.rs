//! Text grammar for sequences and ideals.
//!
//! ```text
//! E := pow(p) | pow(p,q) | geo(r) | fin(v,...) | scale(c,E) | amp(m,E)
//!    | dec(k,E) | sum(E,E) | max(E,E) | prod(E,E)
//! I := prin(E) | KH | FH | prod(I,I) | sum(I,I) | pow(I,n)
//! ```
//!
//! Rationals are written `a/b`, as integers, or as decimals. Parsing builds
//! the tree as written, so rendering a parsed canonical string gives it back.

use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::ideal::IdealDesc;
use crate::rational::{self, Rational};
use crate::seq::{SeqExpr, SeqNode};

impl fmt::Display for SeqExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = rational::render;
        match self.node() {
            SeqNode::PowerLog { p, q } if q.is_zero() => write!(f, "pow({})", r(p)),
            SeqNode::PowerLog { p, q } => write!(f, "pow({},{})", r(p), r(q)),
            SeqNode::Geometric { r: ratio } => write!(f, "geo({})", r(ratio)),
            SeqNode::Finite { values } => {
                f.write_str("fin(")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    f.write_str(&r(v))?;
                }
                f.write_str(")")
            }
            SeqNode::Scale { c, inner } => write!(f, "scale({},{inner})", r(c)),
            SeqNode::Ampliate { m, inner } => write!(f, "amp({m},{inner})"),
            SeqNode::Decimate { k, inner } => write!(f, "dec({k},{inner})"),
            SeqNode::Sum(a, b) => write!(f, "sum({a},{b})"),
            SeqNode::Max(a, b) => write!(f, "max({a},{b})"),
            SeqNode::Product(a, b) => write!(f, "prod({a},{b})"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(x) => self.err(self.pos, format!("expected '{c}', found '{x}'")),
            None => self.err(self.pos, format!("expected '{c}', found end of input")),
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].find(|c: char| !c.is_ascii_alphanumeric() && c != '_').unwrap_or(self.src.len() - start);
        if len == 0 {
            return match self.peek() {
                Some(c) => self.err(start, format!("expected a name, found '{c}'")),
                None => self.err(start, "expected a name, found end of input"),
            };
        }
        self.pos += len;
        Ok((start, &self.src[start..start + len]))
    }

    fn number_text(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !(c.is_ascii_digit() || matches!(c, '/' | '.' | '-' | '+')))
            .unwrap_or(self.src.len() - start);
        self.pos += len;
        (start, &self.src[start..start + len])
    }

    fn rational(&mut self) -> Result<(usize, Rational)> {
        let (start, text) = self.number_text();
        if text.is_empty() {
            return self.err(start, "expected a number");
        }
        match rational::parse(text) {
            Some(r) => Ok((start, r)),
            None => self.err(start, format!("malformed number '{text}'")),
        }
    }

    fn integer(&mut self, what: &str) -> Result<(usize, u64)> {
        let (start, text) = self.number_text();
        match text.parse::<u64>() {
            Ok(n) => Ok((start, n)),
            Err(_) => self.err(start, format!("{what} must be a non-negative integer, found '{text}'")),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(self.pos, format!("unexpected trailing '{c}'")),
        }
    }

    fn seq(&mut self) -> Result<SeqExpr> {
        let (start, name) = self.ident()?;
        self.expect('(')?;
        let at = |e: Error| match e {
            Error::Domain(msg) => Error::Domain(format!("{msg} (at byte {start})")),
            e => e,
        };
        let out = match name {
            "pow" => {
                let (_, p) = self.rational()?;
                let q = if self.peek() == Some(',') {
                    self.expect(',')?;
                    self.rational()?.1
                } else {
                    Rational::zero()
                };
                SeqExpr::power_log(p, q).map_err(at)?
            }
            "geo" => SeqExpr::geometric(self.rational()?.1).map_err(at)?,
            "fin" => {
                let mut values = Vec::new();
                if self.peek() != Some(')') {
                    values.push(self.rational()?.1);
                    while self.peek() == Some(',') {
                        self.expect(',')?;
                        values.push(self.rational()?.1);
                    }
                }
                SeqExpr::finite(values).map_err(at)?
            }
            "scale" => {
                let (_, c) = self.rational()?;
                self.expect(',')?;
                SeqExpr::scale(c, self.seq()?).map_err(at)?
            }
            "amp" | "dec" => {
                let (_, n) = self.integer(if name == "amp" { "ampliation order" } else { "decimation step" })?;
                self.expect(',')?;
                let inner = self.seq()?;
                if name == "amp" { SeqExpr::amp(n, inner) } else { SeqExpr::dec(n, inner) }.map_err(at)?
            }
            "sum" | "max" | "prod" => {
                let a = self.seq()?;
                self.expect(',')?;
                let b = self.seq()?;
                match name {
                    "sum" => SeqExpr::sum(a, b),
                    "max" => SeqExpr::max(a, b),
                    _ => SeqExpr::prod(a, b),
                }
            }
            other => return self.err(start, format!("unknown sequence constructor '{other}'")),
        };
        self.expect(')')?;
        Ok(out)
    }

    fn ideal(&mut self) -> Result<IdealDesc> {
        let (start, name) = self.ident()?;
        match name {
            "KH" => return Ok(IdealDesc::KH),
            "FH" => return Ok(IdealDesc::FH),
            _ => {}
        }
        self.expect('(')?;
        let out = match name {
            "prin" => IdealDesc::principal(self.seq()?),
            "prod" | "sum" => {
                let a = self.ideal()?;
                self.expect(',')?;
                let b = self.ideal()?;
                if name == "prod" { IdealDesc::product(a, b) } else { IdealDesc::sum(a, b) }
            }
            "pow" => {
                let base = self.ideal()?;
                self.expect(',')?;
                let (npos, n) = self.integer("ideal power")?;
                let n = u32::try_from(n).or_else(|_| self.err(npos, "ideal power too large"))?;
                IdealDesc::power(base, n).map_err(|e| match e {
                    Error::Domain(msg) => Error::Domain(format!("{msg} (at byte {npos})")),
                    e => e,
                })?
            }
            other => return self.err(start, format!("unknown ideal constructor '{other}'")),
        };
        self.expect(')')?;
        Ok(out)
    }
}

pub fn parse_seq(text: &str) -> Result<SeqExpr> {
    let mut p = Parser::new(text);
    let e = p.seq()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_ideal(text: &str) -> Result<IdealDesc> {
    let mut p = Parser::new(text);
    let i = p.ideal()?;
    p.finish()?;
    Ok(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn parses_examples() {
        let e = parse_seq("amp(2,pow(1))").unwrap();
        assert_eq!(e, SeqExpr::amp(2, SeqExpr::power(int(1)).unwrap()).unwrap());
        let i = parse_ideal("prod(prin(pow(1)),KH)").unwrap();
        assert_eq!(i, IdealDesc::product(IdealDesc::principal(SeqExpr::power(int(1)).unwrap()), IdealDesc::KH));
        assert!(matches!(parse_seq("geo(3/2)"), Err(Error::Domain(_))));
        assert!(matches!(parse_seq("geo(2)"), Err(Error::Domain(_))));
    }

    #[test]
    fn decimals_and_whitespace() {
        let e = parse_seq(" geo( 0.5 ) ").unwrap();
        assert_eq!(e, SeqExpr::geometric(ratio(1, 2)).unwrap());
        assert_eq!(parse_seq("pow(1, -1/2)").unwrap().to_string(), "pow(1,-1/2)");
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_seq("sum(pow(1),") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 11),
            other => panic!("{other:?}"),
        }
        match parse_seq("pow(1) x") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_seq("foo(1)"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_ideal("pow(KH,0)"), Err(Error::Domain(_))));
        assert!(matches!(parse_seq("amp(0,pow(1))"), Err(Error::Domain(_))));
    }

    #[test]
    fn round_trip() {
        for s in [
            "pow(1)",
            "pow(3/2,2)",
            "geo(1/2)",
            "fin(3,1)",
            "fin()",
            "scale(2,geo(1/3))",
            "amp(2,pow(1))",
            "dec(3,amp(2,geo(1/2)))",
            "sum(pow(1),geo(1/2))",
            "max(pow(2),fin(1,1))",
            "prod(pow(1),geo(1/2))",
        ] {
            assert_eq!(parse_seq(s).unwrap().to_string(), s);
        }
        for s in ["prin(pow(1))", "KH", "FH", "prod(prin(pow(1)),KH)", "sum(FH,prin(geo(1/2)))", "pow(prin(pow(1)),3)"] {
            assert_eq!(parse_ideal(s).unwrap().to_string(), s);
        }
    }
}
