//! Generating tree of ascending polyominoes.
//!
//! Every ascending polyomino of size `n + 1` arises from exactly one of size
//! `n` by one of six local operations. The tree can be walked on actual
//! shapes ([`children`], [`parent`]) or on labels alone ([`succ`],
//! [`count_levels`]).

mod label;
mod levels;
mod ops;
mod rules;

pub use label::{Family, TreeLabel};
pub use levels::{construct_levels, count_levels, LabelLevel};
pub use ops::{children, label_of, parent, GrowthOp};
pub use rules::{succ, succ_weighted};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GentreeError {
    #[error("polyomino {0} is not ascending")]
    NotAscending(String),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
}
