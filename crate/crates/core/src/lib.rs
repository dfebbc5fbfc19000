//! Revision of ranked belief states (total preorders over worlds) by facts and
//! by Ramsey Test conditionals, with brute-force oracles for the properties
//! these operators are expected to satisfy.

pub mod cbs;
pub mod conditional;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod logic;
pub mod oracle;
pub mod revision;
pub mod scenario;
pub mod tpo;
pub mod worlds;

pub use cbs::ConditionalBeliefSet;
pub use conditional::{
    bg_contract, bg_expand, bg_revise, circledast, d_relation, hansson_revise, BgTrace,
    CircledastTrace, Conditional, ConditionalOperator, HanssonOutcome, Operator,
};
pub use enumerate::{enumerate_tpos, ordered_bell, OrderedPartitions, DEFAULT_BOUND};
pub use error::{Error, Result};
pub use logic::{parse_formula, parse_input, Atom, ConditionalInput, Formula, Universe, Vocabulary, World};
pub use revision::{lexicographic_revise, natural_revise, restrained_revise, Elementary, Revise};
pub use tpo::{ConflictReport, Tpo};
pub use worlds::WorldSet;
pub use scenario::Scenario;
