//! Revision by Ramsey Test conditionals: the two-step ⊛ construction over an
//! elementary base operator, Hansson's distance-based operator, and the
//! Boutilier–Goldszmidt contraction/expansion pair.

use std::fmt;
use std::str::FromStr;

use crate::cbs::ConditionalBeliefSet;
use crate::enumerate::OrderedPartitions;
use crate::error::{Error, Result};
use crate::revision::{Elementary, Revise};
use crate::tpo::{kemeny_ranks, Tpo};
use crate::worlds::WorldSet;

/// A consistent conditional `A => B`, given by its model sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Conditional {
    antecedent: WorldSet,
    consequent: WorldSet,
}

impl Conditional {
    /// Rejects conditionals whose antecedent and consequent share no model.
    pub fn new(antecedent: WorldSet, consequent: WorldSet) -> Result<Self> {
        if !antecedent.intersects(consequent) {
            return Err(Error::InconsistentInput(
                "antecedent and consequent have no common model".into(),
            ));
        }
        Ok(Conditional {
            antecedent,
            consequent,
        })
    }

    pub fn antecedent(&self) -> WorldSet {
        self.antecedent
    }

    pub fn consequent(&self) -> WorldSet {
        self.consequent
    }

    /// Models of `A ∧ B`.
    pub fn conjunction(&self) -> WorldSet {
        self.antecedent & self.consequent
    }

    /// Models of `A ∧ ¬B`.
    pub fn counter(&self) -> WorldSet {
        self.antecedent.difference(self.consequent)
    }

    /// Models of `A ⊃ B` within `domain`.
    pub fn material(&self, domain: WorldSet) -> WorldSet {
        domain.difference(self.counter())
    }

    pub(crate) fn check_domain(&self, t: &Tpo) -> Result<()> {
        if self.conjunction().intersects(t.domain()) {
            Ok(())
        } else {
            Err(Error::InconsistentInput(
                "no model of the conditional's conjunction in the domain".into(),
            ))
        }
    }

    pub fn accepted_by(&self, t: &Tpo) -> Result<bool> {
        self.check_domain(t)?;
        t.accepts_conditional(self.antecedent, self.consequent)
    }
}

/// Every intermediate object of the ⊛ construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircledastTrace {
    pub material_models: WorldSet,
    pub step1: Tpo,
    pub promote: WorldSet,
    pub result: Tpo,
}

/// Revise by `A ⊃ B` with `op`, then lexicographically promote the material
/// worlds lying weakly below the new `A ∧ B` minimum.
pub fn circledast(op: &dyn Revise, prior: &Tpo, c: &Conditional) -> Result<CircledastTrace> {
    c.check_domain(prior)?;
    let material_models = c.material(prior.domain());
    let step1 = op.revise(prior, material_models)?;
    let promote = step1.down_set(c.conjunction())? & material_models;
    let result = step1.lex_revise_by_set(promote);
    Ok(CircledastTrace {
        material_models,
        step1,
        promote,
        result,
    })
}

/// The two-cell order `[promote, rest]` used to lexicographically refine step1.
pub fn d_relation(step1: &Tpo, c: &Conditional) -> Result<Tpo> {
    c.check_domain(step1)?;
    let material = c.material(step1.domain());
    let promote = step1.down_set(c.conjunction())? & material;
    let cells = [promote, step1.domain().difference(promote)]
        .into_iter()
        .filter(|c| !c.is_empty())
        .collect();
    Ok(Tpo::from_cells_unchecked(cells, step1.domain()))
}

/// Outcome of Hansson's operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HanssonOutcome {
    /// TPOs accepting the conditional at minimal distance, canonical order.
    pub minimizers: Vec<Tpo>,
    pub distance: usize,
    /// Intersection of the minimizers' conditional belief sets.
    pub intersection: ConditionalBeliefSet,
}

/// Whether the order given by `ranks` accepts `c`.
pub(crate) fn ranks_accept(ranks: &[u8; 64], c: &Conditional) -> bool {
    let min_in = |s: WorldSet| s.iter().map(|w| ranks[w]).min();
    match (min_in(c.conjunction()), min_in(c.counter())) {
        (Some(ab), Some(anb)) => ab < anb,
        (Some(_), None) => true,
        (None, _) => false,
    }
}

pub fn hansson_revise(prior: &Tpo, c: &Conditional, bound: usize) -> Result<HanssonOutcome> {
    c.check_domain(prior)?;
    let domain = prior.domain();
    let c = Conditional {
        antecedent: c.antecedent & domain,
        consequent: c.consequent & domain,
    };
    let mut best = usize::MAX;
    let mut minimizers = Vec::new();
    OrderedPartitions::new(domain, bound)?.for_each(|p| {
        if !ranks_accept(p.ranks(), &c) {
            return;
        }
        let d = kemeny_ranks(prior.rank_array(), p.ranks(), domain);
        if d < best {
            best = d;
            minimizers.clear();
        }
        if d == best {
            minimizers.push(p.to_tpo());
        }
    });
    let intersection = ConditionalBeliefSet::from_tpos(minimizers.clone());
    Ok(HanssonOutcome {
        minimizers,
        distance: best,
        intersection,
    })
}

fn rank_of_min(t: &Tpo, s: WorldSet) -> Result<usize> {
    Ok(t.rank(t.min_worlds(s)?.first().expect("nonempty minimum")))
}

/// Contraction by `A ⇒ ¬B`: the minimal `A ∧ B` worlds drop to the rank of
/// the minimal `A` worlds.
pub fn bg_contract(prior: &Tpo, c: &Conditional) -> Result<Tpo> {
    c.check_domain(prior)?;
    let m = prior.min_worlds(c.conjunction())?;
    let r = rank_of_min(prior, c.antecedent())?;
    Tpo::from_relation(prior.domain(), |x, y| match (m.contains(x), m.contains(y)) {
        (false, false) => prior.le(x, y),
        // worlds of the moved minimum stay tied with each other
        (true, true) => true,
        (true, false) => r <= prior.rank(y),
        (false, true) => prior.rank(x) <= r,
    })
    .map_err(|e| Error::DefinitionalFailure {
        operator: "bg contraction",
        reason: e.to_string(),
    })
}

/// Expansion by `A ⇒ B`: the minimal `A ∧ ¬B` worlds move up to just above
/// the rank of the minimal `A ∧ B` worlds.
pub fn bg_expand(prior: &Tpo, c: &Conditional) -> Result<Tpo> {
    c.check_domain(prior)?;
    let Ok(n) = prior.min_worlds(c.counter()) else {
        return Ok(prior.clone());
    };
    let r_ab = rank_of_min(prior, c.conjunction())?;
    Tpo::from_relation(prior.domain(), |x, y| {
        if !n.contains(x) {
            prior.le(x, y)
        } else if n.contains(y) {
            true
        } else {
            prior.le(x, y) && prior.rank(y) > r_ab
        }
    })
    .map_err(|e| Error::DefinitionalFailure {
        operator: "bg expansion",
        reason: e.to_string(),
    })
}

/// Contraction by `A ⇒ ¬B` followed by expansion by `A ⇒ B`.
pub fn bg_revise(prior: &Tpo, c: &Conditional) -> Result<BgTrace> {
    let contraction = bg_contract(prior, c)?;
    let result = bg_expand(&contraction, c)?;
    Ok(BgTrace {
        contraction,
        result,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BgTrace {
    pub contraction: Tpo,
    pub result: Tpo,
}

/// Operators accepted for conditional input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConditionalOperator {
    Circledast(Elementary),
    Hansson,
    Bg,
}

impl fmt::Display for ConditionalOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionalOperator::Circledast(base) => write!(f, "circledast:{base}"),
            ConditionalOperator::Hansson => f.write_str("hansson"),
            ConditionalOperator::Bg => f.write_str("bg"),
        }
    }
}

impl FromStr for ConditionalOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hansson" => Ok(ConditionalOperator::Hansson),
            "bg" => Ok(ConditionalOperator::Bg),
            _ => match s.strip_prefix("circledast:") {
                Some(base) => Ok(ConditionalOperator::Circledast(base.parse()?)),
                None => Err(Error::UnknownOperator(s.to_string())),
            },
        }
    }
}

/// Any operator name usable on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    Elementary(Elementary),
    Conditional(ConditionalOperator),
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::Elementary(e) => e.fmt(f),
            Operator::Conditional(c) => c.fmt(f),
        }
    }
}

impl FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<Elementary>()
            .map(Operator::Elementary)
            .or_else(|_| s.parse().map(Operator::Conditional))
    }
}
