#![allow(dead_code)]

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;
use subideal::rational::ratio;
use subideal::{IdealDesc, SeqExpr};

pub fn pow_log() -> impl Strategy<Value = SeqExpr> {
    prop_oneof![
        (1i64..=6, prop_oneof![Just(0i64), Just(2), Just(-1)]).prop_map(|(p2, q2)| {
            SeqExpr::power_log(ratio(p2, 2), ratio(q2, 2)).unwrap()
        }),
        (1i64..=4).prop_map(|q| SeqExpr::power_log(ratio(0, 1), ratio(q, 1)).unwrap()),
    ]
}

pub fn geometric() -> impl Strategy<Value = SeqExpr> {
    (1i64..=9, 2i64..=10)
        .prop_filter("ratio in (0, 1)", |(a, b)| a < b)
        .prop_map(|(a, b)| SeqExpr::geometric(ratio(a, b)).unwrap())
}

pub fn finite() -> impl Strategy<Value = SeqExpr> {
    prop::collection::vec(1i64..=9, 1..6).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        SeqExpr::finite(v.into_iter().map(|x| ratio(x, 1)).collect()).unwrap()
    })
}

/// Power-log and geometric atoms.
pub fn atom() -> impl Strategy<Value = SeqExpr> {
    prop_oneof![3 => pow_log(), 2 => geometric()]
}

/// Expressions over the whole grammar, depth at most 3.
pub fn expr() -> impl Strategy<Value = SeqExpr> {
    let leaf = prop_oneof![4 => pow_log(), 3 => geometric(), 1 => finite()];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (1i64..=5, 1i64..=3, inner.clone()).prop_map(|(a, b, e)| SeqExpr::scale(ratio(a, b), e).unwrap()),
            (1u64..=4, inner.clone()).prop_map(|(m, e)| SeqExpr::amp(m, e).unwrap()),
            (1u64..=4, inner.clone()).prop_map(|(k, e)| SeqExpr::dec(k, e).unwrap()),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SeqExpr::sum(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SeqExpr::max(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| SeqExpr::prod(a, b)),
        ]
    })
}

/// Principal ideals with a nonzero generator.
pub fn principal() -> impl Strategy<Value = IdealDesc> {
    prop_oneof![3 => atom(), 1 => expr()].prop_filter("nonzero generator", |g| !g.is_zero()).prop_map(IdealDesc::principal)
}

/// `count` deterministic samples of `strategy`.
pub fn sample<S: Strategy>(strategy: S, count: usize) -> Vec<S::Value> {
    let mut runner = TestRunner::deterministic();
    (0..count).map(|_| strategy.new_tree(&mut runner).expect("strategy yields values").current()).collect()
}
