//! `O` / `o` comparison of sequence expressions.
//!
//! The symbolic path compares asymptotic classes and is exact. The numeric
//! path samples `ln a_n - ln b_n` on a geometric grid and reads the trend
//! of the tail; it may answer Unknown.

use std::cmp::Ordering;

use super::class::{classify, Class};
use super::expr::{log_eval, SeqExpr};
use crate::config::{ComparePolicy, EngineConfig};
use crate::rational;
use crate::verdict::{Certificate, IndexRange, RatioSample, Route, Verdict, Witness};

/// Minimum change of the tail maxima (in natural-log units) that counts as
/// a trend rather than noise.
const TREND_EPS: f64 = 1e-3;
/// Indices always probed densely when sizing witness constants.
const DENSE_PREFIX: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Strictness {
    BigO,
    LittleO,
}

/// Decides `a_n = O(b_n)`, i.e. `a_n <= C b_n` for every index.
pub fn compare_big_o(a: &SeqExpr, b: &SeqExpr, cfg: &EngineConfig) -> Verdict {
    compare(a, b, cfg, Strictness::BigO)
}

/// Decides `a_n = o(b_n)`.
pub fn compare_little_o(a: &SeqExpr, b: &SeqExpr, cfg: &EngineConfig) -> Verdict {
    compare(a, b, cfg, Strictness::LittleO)
}

fn compare(a: &SeqExpr, b: &SeqExpr, cfg: &EngineConfig, strictness: Strictness) -> Verdict {
    if cfg.policy == ComparePolicy::Auto {
        if let (Some(ca), Some(cb)) = (classify(a), classify(b)) {
            if let Some(v) = symbolic(a, b, &ca, &cb, cfg, strictness) {
                return v;
            }
        }
    }
    numeric(a, b, cfg, strictness)
}

fn symbolic(a: &SeqExpr, b: &SeqExpr, ca: &Class, cb: &Class, cfg: &EngineConfig, strictness: Strictness) -> Option<Verdict> {
    let order = ca.cmp_size(cb)?;
    let holds = match strictness {
        Strictness::BigO => order != Ordering::Greater,
        Strictness::LittleO => match (ca, cb) {
            (Class::Finite { support }, Class::Finite { .. }) => *support == 0,
            _ => order == Ordering::Less,
        },
    };
    let window = IndexRange::from(cfg.window);
    Some(if holds {
        let c = bound_constant(a, b, cfg).unwrap_or_else(|| rational::int(1));
        Verdict::yes(Route::Symbolic, Witness::new(window).with_constant(c))
    } else {
        let detail = match strictness {
            Strictness::BigO => format!("class {} of the left side dominates class {}", describe(ca), describe(cb)),
            Strictness::LittleO => format!("class {} is not negligible against {}", describe(ca), describe(cb)),
        };
        Verdict::no(Route::Symbolic, Certificate::new(window, detail).with_evidence(ratio_samples(a, b, cfg, 8)))
    })
}

pub(crate) fn describe(c: &Class) -> String {
    match c {
        Class::Finite { support } => format!("finite(support {support})"),
        Class::Decay { rate, p, q } => {
            let mut parts = Vec::new();
            if !rate.is_unit() {
                parts.push(format!("({})^(n/{})", rational::render(rate.base()), rate.denom()));
            }
            parts.push(format!("n^-{}", rational::render(p)));
            parts.push(format!("log^-{}", rational::render(q)));
            parts.join("*")
        }
    }
}

fn log_ratio(a: &SeqExpr, b: &SeqExpr, n: u64) -> Option<f64> {
    let (la, lb) = (log_eval(a, n), log_eval(b, n));
    if la == f64::NEG_INFINITY {
        Some(f64::NEG_INFINITY)
    } else if lb == f64::NEG_INFINITY {
        None
    } else {
        Some(la - lb)
    }
}

fn ratio_samples(a: &SeqExpr, b: &SeqExpr, cfg: &EngineConfig, count: usize) -> Vec<RatioSample> {
    let grid = cfg.grid();
    let step = (grid.len() / count.max(1)).max(1);
    grid.iter()
        .rev()
        .step_by(step)
        .take(count)
        .filter_map(|&n| {
            let r = log_ratio(a, b, n)?;
            r.is_finite().then(|| RatioSample { index: n, log10_ratio: r / std::f64::consts::LN_10 })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .collect()
}

/// `bound_factor` times the largest observed ratio `a_n / b_n` over a dense
/// prefix and the sampling grid. `None` when `a` vanishes everywhere sampled.
pub(crate) fn bound_constant(a: &SeqExpr, b: &SeqExpr, cfg: &EngineConfig) -> Option<rational::Rational> {
    let limit = a.support().unwrap_or(u64::MAX);
    let sup = (1..=DENSE_PREFIX.min(limit))
        .chain(cfg.grid().into_iter().filter(|&n| n <= limit))
        .filter_map(|n| log_ratio(a, b, n))
        .filter(|r| r.is_finite())
        .fold(f64::NEG_INFINITY, f64::max);
    if sup == f64::NEG_INFINITY {
        return None;
    }
    Some(rational::ceil_from_f64(cfg.bound_factor * sup.exp()))
}

fn quarter_max(xs: &[f64], q: usize) -> f64 {
    let len = xs.len();
    xs[len * q / 4..len * (q + 1) / 4].iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Indices far beyond any sampling window. A conclusive trend read on the
/// window that these contradict is downgraded to Unknown.
const FAR_PROBES: [u64; 3] = [1 << 32, 1 << 44, 1 << 56];

fn numeric(a: &SeqExpr, b: &SeqExpr, cfg: &EngineConfig, strictness: Strictness) -> Verdict {
    let v = numeric_window(a, b, cfg, strictness);
    if v.is_unknown() {
        return v;
    }
    let Some(tail) = cfg.grid().last().and_then(|&n| log_ratio(a, b, n)) else {
        return v;
    };
    if tail == f64::NEG_INFINITY {
        return v;
    }
    let far: Vec<f64> = FAR_PROBES.iter().map(|&n| log_ratio(a, b, n).unwrap_or(f64::INFINITY)).collect();
    let rising = far[2] > far[1] + TREND_EPS && far[1] > far[0] + TREND_EPS;
    let falling = far[2] < far[1] - TREND_EPS && far[1] < far[0] - TREND_EPS;
    let (lo, hi) = far.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &r| (lo.min(r), hi.max(r)));
    let contradicted = match (strictness, v.is_yes()) {
        (Strictness::BigO, true) => rising || hi > tail + 1.0,
        (Strictness::LittleO, true) => !falling || hi > tail + 1.0,
        (Strictness::BigO, false) => !rising && hi < tail + 1.0,
        (Strictness::LittleO, false) => falling || lo < tail - 1.0,
    };
    if contradicted {
        Verdict::unknown("the trend on the window is contradicted far beyond it")
    } else {
        v
    }
}

fn numeric_window(a: &SeqExpr, b: &SeqExpr, cfg: &EngineConfig, strictness: Strictness) -> Verdict {
    let window = IndexRange::from(cfg.window);
    if let (Some(sa), Some(sb)) = (a.support(), b.support()) {
        // Both vanish past a known index; the sampling grid cannot see them.
        let holds = match strictness {
            Strictness::BigO => sa <= sb,
            Strictness::LittleO => sa == 0,
        };
        return if holds {
            let c = bound_constant(a, b, cfg).unwrap_or_else(|| rational::int(1));
            Verdict::yes(Route::Numeric, Witness::new(window).with_constant(c).with_detail("finite supports"))
        } else {
            Verdict::no(Route::Numeric, Certificate::new(window, format!("left support {sa} vs right support {sb}")))
        };
    }
    let grid = cfg.grid();
    let mut ratios = Vec::with_capacity(grid.len());
    let mut last_b_zero = false;
    for &n in &grid {
        match log_ratio(a, b, n) {
            Some(r) => {
                ratios.push(r);
                last_b_zero = false;
            }
            None => last_b_zero = true,
        }
    }
    if last_b_zero {
        return Verdict::no(
            Route::Numeric,
            Certificate::new(window, "right side is eventually zero while the left side is not"),
        );
    }
    if ratios.len() < 4 || ratios.iter().all(|r| *r == f64::NEG_INFINITY) {
        if ratios.iter().all(|r| *r == f64::NEG_INFINITY) {
            let w = Witness::new(window).with_constant(rational::int(1)).with_detail("left side vanishes on the window");
            return Verdict::yes(Route::Numeric, w);
        }
        return Verdict::unknown("too few comparable sample points in the window");
    }
    let last = *ratios.last().expect("non-empty");
    if last == f64::NEG_INFINITY {
        let w = Witness::new(window).with_constant(bound_constant(a, b, cfg).unwrap_or_else(|| rational::int(1)));
        return Verdict::yes(Route::Numeric, w.with_detail("left side is eventually zero"));
    }
    let q: Vec<f64> = (0..4).map(|i| quarter_max(&ratios, i)).collect();
    let evidence = ratio_samples(a, b, cfg, 8);
    match strictness {
        Strictness::BigO => {
            if q[3] <= q[2] + TREND_EPS {
                let c = bound_constant(a, b, cfg).unwrap_or_else(|| rational::int(1));
                Verdict::yes(Route::Numeric, Witness::new(window).with_constant(c).with_detail("ratio bounded over the tail"))
            } else {
                let increasing = q.windows(2).all(|w| w[1] > w[0] + TREND_EPS);
                let floor = ratios.iter().copied().fold(f64::INFINITY, f64::min);
                if increasing && last - floor >= cfg.divergence_threshold.ln() {
                    Verdict::no(
                        Route::Numeric,
                        Certificate::new(window, "ratio grows monotonically past the divergence threshold").with_evidence(evidence),
                    )
                } else {
                    Verdict::unknown("ratio still growing on the window but below the divergence threshold")
                }
            }
        }
        Strictness::LittleO => {
            if q[3] < q[2] - TREND_EPS && last < cfg.vanishing_threshold.ln() {
                let c = bound_constant(a, b, cfg).unwrap_or_else(|| rational::int(1));
                Verdict::yes(Route::Numeric, Witness::new(window).with_constant(c).with_detail("ratio decreasing below the vanishing threshold"))
            } else if q[3] >= q[2] - TREND_EPS {
                Verdict::no(Route::Numeric, Certificate::new(window, "ratio does not decrease over the tail").with_evidence(evidence))
            } else {
                Verdict::unknown("ratio decreasing but still above the vanishing threshold")
            }
        }
    }
}
