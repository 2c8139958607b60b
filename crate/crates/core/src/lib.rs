//! Decision procedures for principal subideals of B(H).
//!
//! Operators are modelled by their s-number sequences, written in a small
//! grammar of power-log, geometric and finite sequences closed under
//! scaling, ampliation, decimation, sums, maxima and products. On top of
//! the sequence layer sit ideal membership, J-softness, the subideal
//! classification, and a finite-dimensional numeric oracle.

pub mod classify;
pub mod cli;
pub mod config;
pub mod error;
pub mod grammar;
pub mod ideal;
pub mod oracle;
pub mod rational;
pub mod seq;
pub mod verdict;

pub use classify::{
    classify_finitely_generated, classify_principal, nonlinearity_witness, probe_chain_link, two_generator_principality,
    LinkStatus, SubidealReport,
};
pub use config::{ComparePolicy, EngineConfig};
pub use error::{Error, Result};
pub use grammar::{parse_ideal, parse_seq};
pub use ideal::{ideal_equal, is_soft, member, reduce_product, IdealDesc, SoftnessResult, SoftnessWitness};
pub use rational::Rational;
pub use seq::{ampliate, compare_big_o, compare_little_o, decimate, eval, SeqExpr};
pub use verdict::{Outcome, Verdict};
