//! Sequence expressions over the cone of non-increasing null sequences.

pub mod class;
pub mod compare;
pub mod expr;

pub use class::{classify, Class, Rate};
pub use compare::{compare_big_o, compare_little_o};
pub use expr::{ampliate, decimate, eval, log_eval, pointwise_power, product, sum_all, SeqExpr, SeqNode, Value};
