//! Brute-force oracles: postulate checks, minimization over all TPOs, and
//! counterexample search.

pub mod corpus;
pub mod minimize;
pub mod postulates;
pub mod search;
pub mod trace;

pub use minimize::{
    characterization_candidates, closest_nat_check, flattest_oracle, oracle_minimize,
    restriction_identity, verify_characterization, verify_antecedent_minimality, verify_minimization,
    AgreementReport, ClosestReport, MinimizationReport,
};
pub use postulates::{check_postulate, check_syntactic_counterpart, recheck, PostulateId, PostulateReport, Witness};
pub use search::{search_counterexample, witness_scenario, CounterexampleQuery, Mode, Predicate, SearchOutcome, SearchWitness};
pub use trace::{Trace, TraceInput};
