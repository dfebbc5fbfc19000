//! Counterexample search over the exhaustive or a seeded random corpus.

use std::fmt;
use std::str::FromStr;

use crate::conditional::{ConditionalOperator, Operator};
use crate::enumerate::DEFAULT_BOUND;
use crate::error::{Error, Result};
use crate::logic::{Atom, Universe, Vocabulary, World};
use crate::oracle::corpus::{self, CorpusItem};
use crate::oracle::postulates::{check_postulate, PostulateId, PostulateReport};
use crate::oracle::trace::{Trace, TraceInput};
use crate::revision::Elementary;
use crate::scenario::Scenario;
use crate::tpo::Tpo;
use crate::worlds::WorldSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    /// step1, the revision by the material counterpart, accepts `A ⇒ B`.
    MaterialSuccess,
    /// Same as the `Rec` postulate.
    Recalcitrance,
    Postulate(PostulateId),
}

impl Predicate {
    fn plain_input(self) -> bool {
        matches!(
            self,
            Predicate::Recalcitrance
                | Predicate::Postulate(PostulateId::Rec | PostulateId::Beta2 | PostulateId::SR)
        )
    }

    /// The postulate that reproduces a violation when the witness is checked.
    pub fn check_postulate(self) -> PostulateId {
        match self {
            Predicate::MaterialSuccess => PostulateId::S,
            Predicate::Recalcitrance => PostulateId::Rec,
            Predicate::Postulate(p) => p,
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::MaterialSuccess => f.write_str("material-success"),
            Predicate::Recalcitrance => f.write_str("recalcitrance"),
            Predicate::Postulate(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "material-success" => Ok(Predicate::MaterialSuccess),
            "recalcitrance" => Ok(Predicate::Recalcitrance),
            _ => s.parse().map(Predicate::Postulate),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Every prior and input over 1 to `max_worlds` worlds, in canonical order.
    Exhaustive { max_worlds: usize },
    Randomized { seed: u64, trials: usize, worlds: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CounterexampleQuery {
    pub predicate: Predicate,
    pub operator: Operator,
    pub mode: Mode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchWitness {
    pub trace: Trace,
    /// Postulate report when the predicate is a postulate.
    pub report: Option<PostulateReport>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub witness: Option<SearchWitness>,
    /// Scenarios examined, including the violating one.
    pub searched: usize,
    pub seed: Option<u64>,
}

/// Errors that mean "this operator has nothing to say here" rather than a bug.
fn skippable(e: &Error) -> bool {
    matches!(e, Error::DefinitionalFailure { .. } | Error::MissingTraceField { .. })
}

fn violation(q: &CounterexampleQuery, prior: &Tpo, input: TraceInput) -> Result<Option<SearchWitness>> {
    let trace = match Trace::run(q.operator, prior, input) {
        Ok(t) => t,
        Err(e) if skippable(&e) => return Ok(None),
        Err(e) => return Err(e),
    };
    match q.predicate {
        Predicate::MaterialSuccess => {
            let TraceInput::Conditional(c) = trace.input else {
                return Ok(None);
            };
            let step1 = trace.step1.as_ref().ok_or(Error::MissingTraceField {
                postulate: "material-success",
                field: "step1",
            })?;
            Ok((!c.accepted_by(step1)?).then_some(SearchWitness { trace, report: None }))
        }
        _ => {
            let report = match check_postulate(q.predicate.check_postulate(), &trace) {
                Ok(r) => r,
                Err(e) if skippable(&e) => return Ok(None),
                Err(e) => return Err(e),
            };
            Ok((!report.holds).then_some(SearchWitness {
                trace,
                report: Some(report),
            }))
        }
    }
}

fn input_of(q: &CounterexampleQuery, item: &CorpusItem) -> TraceInput {
    if q.predicate.plain_input() {
        TraceInput::Plain(item.conditional.antecedent())
    } else {
        TraceInput::Conditional(item.conditional)
    }
}

/// Stop token threaded through the corpus callbacks.
struct Found;

fn found_err() -> Error {
    Error::Precondition("search stopped".into())
}

pub fn search_counterexample(q: &CounterexampleQuery) -> Result<SearchOutcome> {
    let mut witness = None;
    let mut searched = 0;
    match q.mode {
        Mode::Exhaustive { max_worlds } => {
            if max_worlds > DEFAULT_BOUND {
                return Err(Error::BoundExceeded {
                    worlds: max_worlds,
                    bound: DEFAULT_BOUND,
                });
            }
            let mut stop: Option<Found> = None;
            let mut visit = |prior: &Tpo, input: TraceInput| -> Result<()> {
                searched += 1;
                if let Some(w) = violation(q, prior, input)? {
                    witness = Some(w);
                    stop = Some(Found);
                    return Err(found_err());
                }
                Ok(())
            };
            let run = if q.predicate.plain_input() {
                corpus::for_each_exhaustive_plain(max_worlds, |p, s| visit(p, TraceInput::Plain(s)))
            } else {
                corpus::for_each_exhaustive(max_worlds, |item| {
                    visit(&item.prior, TraceInput::Conditional(item.conditional))
                })
            };
            match run {
                Err(_) if stop.is_some() => {}
                other => {
                    other?;
                }
            }
            Ok(SearchOutcome {
                witness,
                searched,
                seed: None,
            })
        }
        Mode::Randomized { seed, trials, worlds } => {
            if worlds == 0 || worlds > 64 {
                return Err(Error::TooManyWorlds(worlds));
            }
            let mut rng = corpus::rng(seed);
            for _ in 0..trials {
                let item = corpus::random_item(&mut rng, worlds);
                searched += 1;
                if let Some(w) = violation(q, &item.prior, input_of(q, &item))? {
                    witness = Some(w);
                    break;
                }
            }
            Ok(SearchOutcome {
                witness,
                searched,
                seed: Some(seed),
            })
        }
    }
}

/// A re-runnable scenario reproducing `witness` through the postulate
/// `predicate.check_postulate()`.
///
/// Worlds are named `1..n` over atoms `A` and `B`. For a conditional the
/// `B` worlds are those of `A ∧ B`; for a plain input they are the set the
/// postulate report singled out, if any.
pub fn witness_scenario(q: &CounterexampleQuery, witness: &SearchWitness) -> Result<Scenario> {
    let trace = &witness.trace;
    let domain = trace.domain();
    let (a, b, input) = match trace.input {
        TraceInput::Conditional(c) => (c.antecedent(), c.conjunction(), "A => B"),
        TraceInput::Plain(s) => {
            let b = witness
                .report
                .as_ref()
                .and_then(|r| r.witness)
                .and_then(|w| w.set)
                .unwrap_or(WorldSet::EMPTY);
            (s, b, "A")
        }
    };
    let vocab = Vocabulary::new(vec![Atom::new("A")?, Atom::new("B")?])?;
    let worlds = domain
        .iter()
        .map(|w| World {
            id: (w + 1).to_string(),
            valuation: vec![a.contains(w), b.contains(w)],
        })
        .collect();
    let universe = Universe::new(vocab, worlds)?;
    let operator = match (q.predicate, q.operator) {
        (Predicate::MaterialSuccess, Operator::Conditional(ConditionalOperator::Circledast(e))) => {
            Operator::Elementary(e)
        }
        (Predicate::MaterialSuccess, Operator::Conditional(_)) => Operator::Elementary(Elementary::Natural),
        (_, op) => op,
    };
    Ok(Scenario {
        universe,
        prior: trace.prior.clone(),
        operator: Some(operator),
        input: Some(input.to_string()),
        step1: None,
        result: None,
    })
}
