//! Three-valued decision results.

use serde::Serialize;

use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Yes,
    No,
    Unknown,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Yes => "yes",
            Outcome::No => "no",
            Outcome::Unknown => "unknown",
        }
    }
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Symbolic,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IndexRange {
    pub start: u64,
    pub end: u64,
}

impl From<(u64, u64)> for IndexRange {
    fn from((start, end): (u64, u64)) -> Self {
        IndexRange { start, end }
    }
}

fn ser_opt_rational<S: serde::Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&rational::render(r)),
        None => s.serialize_none(),
    }
}

/// Evidence for a positive verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    /// Ampliation order applied to the sequence itself (softness searches).
    pub k: Option<u64>,
    /// Ampliation order applied to the generator.
    pub m: Option<u64>,
    /// Bound constant `C` in `a_n <= C b_n`.
    #[serde(serialize_with = "ser_opt_rational")]
    pub constant: Option<Rational>,
    pub window: IndexRange,
    pub detail: Option<String>,
}

impl Witness {
    pub fn new(window: IndexRange) -> Self {
        Witness { k: None, m: None, constant: None, window, detail: None }
    }

    pub fn with_constant(mut self, c: Rational) -> Self {
        self.constant = Some(c);
        self
    }

    pub fn with_k(mut self, k: u64) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_m(mut self, m: u64) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioSample {
    pub index: u64,
    pub log10_ratio: f64,
}

/// Evidence for a negative verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub window: IndexRange,
    pub evidence: Vec<RatioSample>,
    pub detail: String,
}

impl Certificate {
    pub fn new(window: IndexRange, detail: impl Into<String>) -> Self {
        Certificate { window, evidence: Vec::new(), detail: detail.into() }
    }

    pub fn with_evidence(mut self, evidence: Vec<RatioSample>) -> Self {
        self.evidence = evidence;
        self
    }
}

/// `Yes` always carries a witness, `No` a certificate and `Unknown` a
/// reason; the constructors are the only way to build one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    outcome: Outcome,
    route: Route,
    witness: Option<Witness>,
    certificate: Option<Certificate>,
    reason: Option<String>,
}

impl Verdict {
    pub fn yes(route: Route, witness: Witness) -> Self {
        Verdict { outcome: Outcome::Yes, route, witness: Some(witness), certificate: None, reason: None }
    }

    pub fn no(route: Route, certificate: Certificate) -> Self {
        Verdict { outcome: Outcome::No, route, witness: None, certificate: Some(certificate), reason: None }
    }

    /// Unknown verdicts only come out of numeric evidence.
    pub fn unknown(reason: impl Into<String>) -> Self {
        Verdict { outcome: Outcome::Unknown, route: Route::Numeric, witness: None, certificate: None, reason: Some(reason.into()) }
    }

    pub fn outcome(&self) -> Outcome {
        self.outcome
    }

    pub fn route(&self) -> Route {
        self.route
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        self.certificate.as_ref()
    }

    pub fn reason(&self) -> Option<&str> {
        self.reason.as_deref()
    }

    pub fn is_yes(&self) -> bool {
        self.outcome == Outcome::Yes
    }

    pub fn is_no(&self) -> bool {
        self.outcome == Outcome::No
    }

    pub fn is_unknown(&self) -> bool {
        self.outcome == Outcome::Unknown
    }

    pub(crate) fn map_witness(mut self, f: impl FnOnce(Witness) -> Witness) -> Self {
        self.witness = self.witness.map(f);
        self
    }

    pub(crate) fn map_certificate(mut self, f: impl FnOnce(Certificate) -> Certificate) -> Self {
        self.certificate = self.certificate.map(f);
        self
    }

    /// Swaps Yes and No, turning the certificate into a witness detail and
    /// vice versa. Unknown stays Unknown.
    pub(crate) fn negated(self, window: IndexRange, yes_detail: &str, no_detail: &str) -> Self {
        match self.outcome {
            Outcome::Yes => {
                let w = self.witness.expect("yes carries witness");
                let mut detail = no_detail.to_string();
                if let Some(d) = &w.detail {
                    detail = format!("{detail} ({d})");
                }
                Verdict::no(self.route, Certificate::new(w.window, detail))
            }
            Outcome::No => {
                let c = self.certificate.expect("no carries certificate");
                Verdict::yes(self.route, Witness::new(window).with_detail(format!("{yes_detail} ({})", c.detail)))
            }
            Outcome::Unknown => self,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_attach_evidence() {
        let w: IndexRange = (1, 10).into();
        let y = Verdict::yes(Route::Symbolic, Witness::new(w).with_k(2));
        assert!(y.witness().is_some() && y.certificate().is_none());
        let n = Verdict::no(Route::Symbolic, Certificate::new(w, "diverges"));
        assert!(n.certificate().is_some() && n.witness().is_none());
        let u = Verdict::unknown("inconclusive");
        assert_eq!(u.reason(), Some("inconclusive"));
        assert_eq!(u.route(), Route::Numeric);
    }

    #[test]
    fn negation_swaps_evidence() {
        let w: IndexRange = (1, 10).into();
        let n = Verdict::no(Route::Symbolic, Certificate::new(w, "not soft"));
        let y = n.negated(w, "non-linear", "linear");
        assert!(y.is_yes());
        assert!(y.witness().unwrap().detail.as_deref().unwrap().contains("not soft"));
        assert!(y.negated(w, "a", "b").is_no());
    }
}
