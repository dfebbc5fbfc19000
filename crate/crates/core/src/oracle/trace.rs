//! Revision traces: everything a postulate check may look at.

use crate::cbs::ConditionalBeliefSet;
use crate::conditional::{bg_revise, circledast, hansson_revise, Conditional, ConditionalOperator, Operator};
use crate::enumerate::DEFAULT_BOUND;
use crate::error::{Error, Result};
use crate::revision::{natural_revise, Elementary, Revise};
use crate::tpo::Tpo;
use crate::worlds::WorldSet;

/// The input of a revision, by its model sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TraceInput {
    Plain(WorldSet),
    Conditional(Conditional),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub prior: Tpo,
    pub input: TraceInput,
    /// Revision of the prior by the material counterpart of a conditional input.
    pub step1: Option<Tpo>,
    /// Posterior order; absent when the posterior belief set has no TPO.
    pub result: Option<Tpo>,
    /// Posterior conditional belief set when it is not that of `result`.
    pub beliefs: Option<ConditionalBeliefSet>,
    pub operator: Option<Operator>,
}

impl Trace {
    /// Runs `op` on `prior`.
    ///
    /// An elementary operator given a conditional revises by its material
    /// counterpart. Hansson's and the Boutilier–Goldszmidt operator read a
    /// plain input `A` as `⊤ ⇒ A`; both measure step1 against natural
    /// revision by the material counterpart, the operator they extend.
    pub fn run(op: Operator, prior: &Tpo, input: TraceInput) -> Result<Trace> {
        let domain = prior.domain();
        let mut trace = Trace {
            prior: prior.clone(),
            input,
            step1: None,
            result: None,
            beliefs: None,
            operator: Some(op),
        };
        match (op, input) {
            (Operator::Elementary(e), TraceInput::Plain(s))
            | (Operator::Conditional(ConditionalOperator::Circledast(e)), TraceInput::Plain(s)) => {
                trace.result = Some(e.revise(prior, s)?);
            }
            (Operator::Elementary(e), TraceInput::Conditional(c)) => {
                c.check_domain(prior)?;
                let step1 = e.revise(prior, c.material(domain))?;
                trace.result = Some(step1.clone());
                trace.step1 = Some(step1);
            }
            (Operator::Conditional(ConditionalOperator::Circledast(e)), TraceInput::Conditional(c)) => {
                let t = circledast(&e, prior, &c)?;
                trace.step1 = Some(t.step1);
                trace.result = Some(t.result);
            }
            (Operator::Conditional(other), TraceInput::Plain(s)) => {
                let c = Conditional::new(domain, s & domain)?;
                trace.input = TraceInput::Conditional(c);
                return Trace::run(Operator::Conditional(other), prior, trace.input);
            }
            (Operator::Conditional(ConditionalOperator::Hansson), TraceInput::Conditional(c)) => {
                trace.step1 = Some(natural_revise(prior, c.material(domain))?);
                let h = hansson_revise(prior, &c, DEFAULT_BOUND)?;
                trace.result = h.intersection.generating_tpo()?;
                trace.beliefs = Some(h.intersection);
            }
            (Operator::Conditional(ConditionalOperator::Bg), TraceInput::Conditional(c)) => {
                trace.step1 = Some(natural_revise(prior, c.material(domain))?);
                trace.result = Some(bg_revise(prior, &c)?.result);
            }
        }
        Ok(trace)
    }

    /// A trace with explicitly given orders and no operator.
    pub fn explicit(prior: Tpo, input: TraceInput, step1: Option<Tpo>, result: Tpo) -> Trace {
        Trace {
            prior,
            input,
            step1,
            result: Some(result),
            beliefs: None,
            operator: None,
        }
    }

    pub fn domain(&self) -> WorldSet {
        self.prior.domain()
    }

    /// Posterior conditional belief set.
    pub fn posterior_beliefs(&self) -> Option<ConditionalBeliefSet> {
        self.beliefs
            .clone()
            .or_else(|| self.result.as_ref().map(Tpo::conditional_belief_set))
    }

    pub(crate) fn elementary(&self, postulate: &'static str) -> Result<Elementary> {
        match self.operator {
            Some(Operator::Elementary(e))
            | Some(Operator::Conditional(ConditionalOperator::Circledast(e))) => Ok(e),
            _ => Err(Error::MissingTraceField {
                postulate,
                field: "elementary operator",
            }),
        }
    }
}
