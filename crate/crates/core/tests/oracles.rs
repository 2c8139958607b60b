//! Reference values computed independently with exact rational arithmetic,
//! plus the worked examples the engine must reproduce.

use subideal::classify::{classify_principal, LinkStatus};
use subideal::oracle::{verify_divergence_e2, verify_product_split, verify_ratio_1_over_m, verify_softness_witness, OracleReport};
use subideal::rational::{int, ratio};
use subideal::{
    compare_big_o, ideal_equal, is_soft, member, parse_ideal, parse_seq, reduce_product, EngineConfig, IdealDesc, SeqExpr,
};

fn seq(s: &str) -> SeqExpr {
    parse_seq(s).unwrap()
}

fn ideal(s: &str) -> IdealDesc {
    parse_ideal(s).unwrap()
}

fn value_at(r: &OracleReport, index: u64) -> f64 {
    r.observed.iter().find(|o| o.index == index).unwrap_or_else(|| panic!("index {index} not observed")).value
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs()
}

#[test]
fn ratio_worst_deviation_reference() {
    let frozen = [(2, 500_001, 9.99998000004e-07), (3, 500_002, 1.3333280000213333e-06), (5, 500_001, 1.5999968000064e-06)];
    for (m, k, dev) in frozen {
        let r = verify_ratio_1_over_m(m, 1_000_000, 1e-5).unwrap();
        assert!(r.passed, "m = {m}");
        assert!(r.detail.ends_with(&format!("at k = {k}")), "{}", r.detail);
        let observed = (value_at(&r, k) - 1.0 / m as f64).abs();
        assert!(close(observed, dev, 1e-9), "m = {m}: {observed:e} vs {dev:e}");
    }
}

#[test]
fn ratio_tends_to_one_over_m() {
    for m in 1..=8 {
        let r = verify_ratio_1_over_m(m, 1_000_000, 1e-5).unwrap();
        assert!(r.passed, "{}", r.detail);
        assert_eq!(r.target, 1.0 / m as f64);
    }
    assert!(!verify_ratio_1_over_m(3, 100, 1e-5).unwrap().passed);
}

#[test]
fn divergence_tail_minimum_reference() {
    for (m, n, k, min, passes) in [(1, 1_000_000, 500_000, 500000.0, true), (4, 1_000_000, 500_000, 7812.5, true), (1, 10, 5, 5.0, false)] {
        let r = verify_divergence_e2(m, n, 1e3).unwrap();
        assert_eq!(r.passed, passes, "m = {m}, N = {n}");
        assert!(r.detail.ends_with(&format!("at k = {k}")), "{}", r.detail);
        assert!(close(value_at(&r, k), min, 1e-12));
        assert_eq!(r.tolerance, 0.0);
    }
}

#[test]
fn square_is_not_dominated_by_any_ampliated_cube() {
    let cfg = EngineConfig::default();
    let (s2, s3) = (seq("pow(2)"), seq("pow(3)"));
    for m in 1..=100 {
        assert!(compare_big_o(&s2, &subideal::ampliate(&s3, m), &cfg).is_no(), "m = {m}");
    }
    assert!(member(&s2, &ideal("prin(pow(3))"), &cfg).is_no());
}

#[test]
fn cube_of_principal_ideal() {
    let cfg = EngineConfig::default();
    let j = ideal("prin(pow(1))");
    let jsj = IdealDesc::product(IdealDesc::product(j.clone(), j.clone()), j);
    assert!(ideal_equal(&jsj, &ideal("prin(pow(3))"), &cfg).is_yes());
    assert!(ideal_equal(&ideal("pow(prin(pow(1)),3)"), &ideal("prin(pow(3))"), &cfg).is_yes());
    assert!(ideal_equal(&ideal("prin(pow(2))"), &ideal("prin(pow(3))"), &cfg).is_no());
}

#[test]
fn geometric_half_is_soft_with_reference_witness() {
    let cfg = EngineConfig::default();
    let s = seq("geo(1/2)");
    let r = is_soft(&s, &IdealDesc::KH, &cfg).unwrap();
    assert!(r.verdict.is_yes());
    let w = r.witness_detail.as_ref().unwrap();
    assert_eq!(w.k, 2);
    // sup s_n / (s_ceil(n/2) T_n) = 2, doubled by the bound factor
    let c = r.verdict.witness().unwrap().constant.clone().unwrap();
    assert_eq!(c, int(4), "T = {}", w.t_witness);
    let check = verify_softness_witness(&s, &r, 1_000_000).unwrap();
    assert!(check.passed, "{}", check.detail);
}

#[test]
fn harmonic_sequence_is_not_soft() {
    let cfg = EngineConfig::default();
    let s = seq("pow(1)");
    assert!(is_soft(&s, &IdealDesc::KH, &cfg).unwrap().verdict.is_no());
    assert!(member(&s, &ideal("prod(prin(pow(1)),KH)"), &cfg).is_no());
}

#[test]
fn odd_harmonic_sequence_outside_soft_part() {
    let cfg = EngineConfig::default();
    let j = reduce_product(&ideal("prod(prin(pow(1)),KH)"));
    // 1/(2n-1) and 1/(2n) are both comparable to 1/n from above and below
    for s in ["scale(1/2,pow(1))", "dec(2,pow(1))"] {
        assert!(member(&seq(s), &j, &cfg).is_no(), "{s}");
        assert!(member(&seq(s), &ideal("prin(pow(1))"), &cfg).is_yes(), "{s}");
    }
}

#[test]
fn interleaved_generators_behave_like_their_common_rate() {
    let cfg = EngineConfig::default();
    let gens = [seq("pow(1)"), seq("dec(2,pow(1))")];
    let r = subideal::classify_finitely_generated(&gens, &IdealDesc::KH, &cfg).unwrap();
    assert!(r.softness.verdict.is_no());
    for i in 1..5 {
        assert_eq!(r.link(i), LinkStatus::Strict, "link {i}");
    }
}

#[test]
fn idempotent_ideal_collapses_first_link() {
    let cfg = EngineConfig::default();
    let r = classify_principal(&seq("pow(1)"), &IdealDesc::KH, &cfg).unwrap();
    assert_eq!(r.link(0), LinkStatus::Equal);
    let r = classify_principal(&seq("geo(1/2)"), &IdealDesc::KH, &cfg).unwrap();
    assert!((0..5).all(|i| r.link(i) == LinkStatus::Equal));
}

#[test]
fn membership_needs_large_ampliation() {
    // (1/100)^(1/m) >= 99/100 first holds at m = 459
    let cfg = EngineConfig::default();
    let v = member(&seq("geo(99/100)"), &ideal("prin(geo(1/100))"), &cfg);
    assert_eq!(v.witness().unwrap().m, Some(459));
    assert!(member(&seq("geo(99/100)"), &ideal("prin(geo(1/100))"), &EngineConfig { m_max: 64, ..cfg }).is_yes());
}

#[test]
fn softness_needs_large_ampliation() {
    // (9/10)^(1/2) <= (1/1000)^(1/m) first holds at m = 132
    let cfg = EngineConfig::default();
    let r = is_soft(&seq("geo(9/10)"), &ideal("prin(geo(1/1000))"), &cfg).unwrap();
    let w = r.witness_detail.unwrap();
    assert_eq!((w.k, w.m), (2, Some(132)));
}

#[test]
fn product_splits_reconstruct_exactly() {
    let cfg = EngineConfig::default();
    for (c, i, j) in [
        ("geo(1/4)", "prin(geo(1/2))", "prin(geo(1/2))"),
        ("pow(3)", "prin(pow(1))", "prin(pow(2))"),
        ("pow(1)", "KH", "KH"),
        ("pow(2)", "prin(pow(1))", "prin(pow(1))"),
    ] {
        let r = verify_product_split(&seq(c), &ideal(i), &ideal(j), 100_000, &cfg).unwrap();
        assert!(r.passed, "{}", r.detail);
        assert_eq!(r.tolerance, 0.0);
        assert!(r.observed.iter().all(|o| o.value == 0.0));
    }
    let half = SeqExpr::geometric(ratio(1, 2)).unwrap();
    assert!(verify_product_split(&seq("pow(1)"), &ideal("prin(pow(1))"), &ideal("prin(pow(1))"), 100, &cfg).is_err());
    assert!(verify_product_split(&half, &IdealDesc::KH, &IdealDesc::KH, 0, &cfg).is_err());
}
