//! Brute-force oracles: scan every TPO over the domain and compare against
//! the constructive operators.

use std::cmp::Ordering;

use crate::conditional::{circledast, ranks_accept, CircledastTrace, Conditional};
use crate::enumerate::OrderedPartitions;
use crate::error::{Error, Result};
use crate::revision::{natural_revise, Elementary, Revise};
use crate::tpo::{flatness_cells, kemeny_ranks, Tpo};
use crate::worlds::{WorldSet, MAX_WORLDS};

type Ranks = [u8; MAX_WORLDS];

#[derive(Clone, Copy)]
enum Rule {
    /// Same comparison in both orders.
    Same,
    /// Reference strict implies candidate strict.
    Strict,
    /// Reference weak implies candidate weak.
    Weak,
}

/// Ordered-pair constraints of a candidate against a reference order.
struct PairRules {
    rules: Vec<(usize, usize, Rule)>,
}

impl PairRules {
    fn holds(&self, reference: &Ranks, candidate: &Ranks) -> bool {
        self.rules.iter().all(|&(x, y, rule)| {
            let r = reference[x].cmp(&reference[y]);
            let c = candidate[x].cmp(&candidate[y]);
            match rule {
                Rule::Same => r == c,
                Rule::Strict => r != Ordering::Less || c == Ordering::Less,
                Rule::Weak => r == Ordering::Greater || c != Ordering::Greater,
            }
        })
    }
}

fn same_within(set: WorldSet, rules: &mut Vec<(usize, usize, Rule)>) {
    for x in set.iter() {
        for y in set.iter().filter(|&y| y > x) {
            rules.push((x, y, Rule::Same));
        }
    }
}

fn across(from: WorldSet, to: WorldSet, rules: &mut Vec<(usize, usize, Rule)>) {
    for x in from.iter() {
        for y in to.iter() {
            rules.push((x, y, Rule::Strict));
            rules.push((x, y, Rule::Weak));
        }
    }
}

struct Setup {
    domain: WorldSet,
    cond: Conditional,
    material: WorldSet,
    anb: WorldSet,
}

impl Setup {
    fn new(t: &Tpo, c: &Conditional) -> Result<Self> {
        c.check_domain(t)?;
        let domain = t.domain();
        let cond = Conditional::new(c.antecedent() & domain, c.consequent() & domain)?;
        Ok(Setup {
            domain,
            material: cond.material(domain),
            anb: cond.counter(),
            cond,
        })
    }

    /// P1 relative to step1.
    fn p1(&self) -> PairRules {
        let mut rules = Vec::new();
        same_within(self.material, &mut rules);
        PairRules { rules }
    }

    /// P1–P6 relative to step1.
    fn p_suite(&self, step1: &Tpo) -> Result<PairRules> {
        let mut rules = Vec::new();
        same_within(self.material, &mut rules);
        same_within(self.anb, &mut rules);
        across(self.material, self.anb, &mut rules);
        let down = step1.down_set(self.cond.conjunction())?;
        across(self.anb, self.material.difference(down), &mut rules);
        Ok(PairRules { rules })
    }
}

/// All TPOs accepting `A ⇒ B` and preserving step1's order on `A ⊃ B`, at
/// minimal Kemeny distance to step1. Canonical order.
pub fn oracle_minimize(step1: &Tpo, c: &Conditional, bound: usize) -> Result<Vec<Tpo>> {
    let setup = Setup::new(step1, c)?;
    let p1 = setup.p1();
    let reference = step1.rank_array();
    let mut best = usize::MAX;
    let mut out = Vec::new();
    OrderedPartitions::new(setup.domain, bound)?.for_each(|p| {
        let r = p.ranks();
        if !ranks_accept(r, &setup.cond) || !p1.holds(reference, r) {
            return;
        }
        let d = kemeny_ranks(reference, r, setup.domain);
        if d < best {
            best = d;
            out.clear();
        }
        if d == best {
            out.push(p.to_tpo());
        }
    });
    Ok(out)
}

/// Outcome of comparing the distance oracle with the ⊛ construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimizationReport {
    pub minimizers: Vec<Tpo>,
    pub constructive: CircledastTrace,
    /// Exactly one minimizer, equal to the constructive result.
    pub holds: bool,
}

pub fn verify_minimization(
    base: Elementary,
    prior: &Tpo,
    c: &Conditional,
    bound: usize,
) -> Result<MinimizationReport> {
    let constructive = circledast(&base, prior, c)?;
    let minimizers = oracle_minimize(&constructive.step1, c, bound)?;
    let holds = minimizers.len() == 1 && minimizers[0] == constructive.result;
    Ok(MinimizationReport {
        minimizers,
        constructive,
        holds,
    })
}

/// True iff the TPOs satisfying success and P1–P6 relative to step1 are
/// exactly `{trace.result}`.
pub fn verify_characterization(trace: &CircledastTrace, c: &Conditional, bound: usize) -> Result<bool> {
    Ok(characterization_candidates(&trace.step1, c, bound)? == vec![trace.result.clone()])
}

/// Every TPO satisfying success and P1–P6 relative to `step1`.
pub fn characterization_candidates(step1: &Tpo, c: &Conditional, bound: usize) -> Result<Vec<Tpo>> {
    let setup = Setup::new(step1, c)?;
    let rules = setup.p_suite(step1)?;
    let reference = step1.rank_array();
    let mut out = Vec::new();
    OrderedPartitions::new(setup.domain, bound)?.for_each(|p| {
        if ranks_accept(p.ranks(), &setup.cond) && rules.holds(reference, p.ranks()) {
            out.push(p.to_tpo());
        }
    });
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementReport {
    pub holds: bool,
    /// A candidate agreeing with step1 on an antecedent where ⊛ does not.
    pub witness: Option<(Tpo, WorldSet)>,
    pub searched: usize,
}

/// Whenever some success- and P1-respecting candidate agrees with step1 on
/// every conditional with antecedent `C`, so does the ⊛ result.
pub fn verify_antecedent_minimality(
    base: Elementary,
    prior: &Tpo,
    c: &Conditional,
    bound: usize,
) -> Result<AgreementReport> {
    let trace = circledast(&base, prior, c)?;
    let setup = Setup::new(&trace.step1, c)?;
    let p1 = setup.p1();
    let step1 = &trace.step1;
    let mut disagreeing = Vec::new();
    for set in setup.domain.nonempty_subsets() {
        if !trace.result.agree_on_antecedent(step1, set)? {
            disagreeing.push((set, step1.min_worlds(set)?));
        }
    }
    let mut witness = None;
    let mut searched = 0;
    OrderedPartitions::new(setup.domain, bound)?.for_each(|p| {
        let r = p.ranks();
        if witness.is_some() || !ranks_accept(r, &setup.cond) || !p1.holds(step1.rank_array(), r) {
            return;
        }
        searched += 1;
        for &(set, target) in &disagreeing {
            let min_rank = set.iter().map(|w| r[w]).min().expect("nonempty");
            let min = set.iter().filter(|&w| r[w] == min_rank).collect::<WorldSet>();
            if min == target {
                witness = Some((p.to_tpo(), set));
                return;
            }
        }
    });
    Ok(AgreementReport {
        holds: witness.is_none(),
        witness,
        searched,
    })
}

/// The ⊒-greatest TPO that keeps every strict comparison of `prior` and
/// accepts `A ⇒ B`. Requires that `prior` does not accept `A ⇒ ¬B`.
pub fn flattest_oracle(prior: &Tpo, c: &Conditional, bound: usize) -> Result<Tpo> {
    let setup = Setup::new(prior, c)?;
    if !prior.min_worlds(setup.cond.antecedent())?.intersects(setup.cond.consequent()) {
        return Err(Error::Precondition(
            "the prior already accepts the conditional with negated consequent".into(),
        ));
    }
    let mut rules = Vec::new();
    for x in setup.domain.iter() {
        for y in setup.domain.iter().filter(|&y| y != x) {
            rules.push((x, y, Rule::Strict));
        }
    }
    let lower_bound = PairRules { rules };
    let reference = prior.rank_array();
    let admissible = |p: &OrderedPartitions| {
        ranks_accept(p.ranks(), &setup.cond) && lower_bound.holds(reference, p.ranks())
    };
    let mut best: Option<Vec<WorldSet>> = None;
    OrderedPartitions::new(setup.domain, bound)?.for_each(|p| {
        if admissible(p) && best.as_ref().map_or(true, |b| flatness_cells(p.cells(), b)) {
            best = Some(p.cells().to_vec());
        }
    });
    let best = best.ok_or(Error::NonUniqueMaximum("flatness order (no admissible TPO)"))?;
    let mut greatest = true;
    OrderedPartitions::new(setup.domain, bound)?.for_each(|p| {
        if greatest && admissible(p) && !flatness_cells(&best, p.cells()) {
            greatest = false;
        }
    });
    if !greatest {
        return Err(Error::NonUniqueMaximum("flatness order"));
    }
    Ok(Tpo::from_cells_unchecked(best, setup.domain))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosestReport {
    pub holds: bool,
    pub natural: Tpo,
    pub distance: usize,
    /// Another TPO with the required first cell at distance no greater.
    pub rival: Option<Tpo>,
    pub searched: usize,
}

/// Among TPOs whose first cell is `min(prior, A)`, natural revision is the
/// unique closest one to the prior.
pub fn closest_nat_check(prior: &Tpo, a: WorldSet, bound: usize) -> Result<ClosestReport> {
    let natural = natural_revise(prior, a)?;
    let first = natural.first();
    let distance = natural.kemeny_distance(prior)?;
    let mut rival = None;
    let mut searched = 0;
    OrderedPartitions::new(prior.domain(), bound)?.for_each(|p| {
        if p.cells()[0] != first {
            return;
        }
        searched += 1;
        if rival.is_none()
            && p.cells() != natural.cells()
            && kemeny_ranks(prior.rank_array(), p.ranks(), prior.domain()) <= distance
        {
            rival = Some(p.to_tpo());
        }
    });
    Ok(ClosestReport {
        holds: rival.is_none(),
        natural,
        distance,
        rival,
        searched,
    })
}

/// Both sides of the restriction identity: the ⊛ result restricted to `A`,
/// and the base operator applied to the prior restricted to `A` with input
/// `A ∧ B`.
pub fn restriction_identity(base: Elementary, prior: &Tpo, c: &Conditional) -> Result<(Tpo, Tpo)> {
    let trace = circledast(&base, prior, c)?;
    let a = c.antecedent() & prior.domain();
    let lhs = trace.result.restrict(a)?;
    let rhs = base.revise(&prior.restrict(a)?, c.conjunction())?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(ws: &[usize]) -> WorldSet {
        WorldSet::from_indices(ws.iter().copied())
    }

    fn t(cells: &[&[usize]]) -> Tpo {
        Tpo::new(cells.iter().map(|c| s(c)).collect()).unwrap()
    }

    fn eight() -> (Tpo, Conditional) {
        (
            t(&[&[8], &[7], &[6], &[4, 5], &[1, 2, 3]]),
            Conditional::new(s(&[1, 3, 4, 8]), s(&[1, 4])).unwrap(),
        )
    }

    #[test]
    fn unique_minimizer_on_eight_worlds() {
        let (prior, c) = eight();
        let report = verify_minimization(Elementary::Restrained, &prior, &c, 8).unwrap();
        assert!(report.holds);
        assert_eq!(
            report.minimizers,
            vec![t(&[&[7], &[6], &[4, 5], &[8], &[1, 2], &[3]])]
        );
    }

    #[test]
    fn accepted_step1_is_its_own_minimizer() {
        let step1 = t(&[&[1], &[2, 3], &[0]]);
        let c = Conditional::new(s(&[0, 1]), s(&[1])).unwrap();
        assert_eq!(oracle_minimize(&step1, &c, 8).unwrap(), vec![step1]);
    }

    #[test]
    fn characterization_detects_perturbation() {
        let (prior, c) = eight();
        let mut trace = circledast(&Elementary::Natural, &prior, &c).unwrap();
        assert!(verify_characterization(&trace, &c, 8).unwrap());
        trace.result = t(&[&[6], &[7], &[4, 5], &[8], &[1, 2, 3]]);
        assert!(!verify_characterization(&trace, &c, 8).unwrap());
        let one = Tpo::flat(s(&[0]));
        let c1 = Conditional::new(s(&[0]), s(&[0])).unwrap();
        let tr = circledast(&Elementary::Natural, &one, &c1).unwrap();
        assert!(verify_characterization(&tr, &c1, 8).unwrap());
    }

    #[test]
    fn flattest_matches_natural_circledast() {
        // A∧B minimum tied with an A∧¬B world: precondition holds
        let prior = t(&[&[7], &[4, 8], &[6], &[5], &[1, 2, 3]]);
        let c = Conditional::new(s(&[1, 3, 4, 8]), s(&[1, 4])).unwrap();
        let flat = flattest_oracle(&prior, &c, 8).unwrap();
        let ours = circledast(&Elementary::Natural, &prior, &c).unwrap().result;
        assert_eq!(flat, ours);
    }

    #[test]
    fn flattest_precondition() {
        let (prior, c) = eight();
        assert!(matches!(flattest_oracle(&prior, &c, 8), Err(Error::Precondition(_))));
    }

    #[test]
    fn flattest_of_accepting_prior_is_prior() {
        let prior = t(&[&[4], &[8], &[7], &[1, 2, 3, 5, 6]]);
        let c = Conditional::new(s(&[1, 3, 4, 8]), s(&[1, 4])).unwrap();
        assert_eq!(flattest_oracle(&prior, &c, 8).unwrap(), prior);
    }

    #[test]
    fn natural_is_closest() {
        let (prior, _) = eight();
        let m = s(&[1, 2, 4, 5, 6, 7]);
        let report = closest_nat_check(&prior, m, 8).unwrap();
        assert!(report.holds);
        for other in [Elementary::Restrained, Elementary::Lexicographic] {
            let d = other.revise(&prior, m).unwrap().kemeny_distance(&prior).unwrap();
            assert!(report.distance < d);
        }
        let believed = closest_nat_check(&prior, s(&[8, 1]), 8).unwrap();
        assert!(believed.holds);
        assert_eq!(believed.distance, 0);
    }

    #[test]
    fn antecedent_minimality_and_restriction_on_eight_worlds() {
        let (prior, c) = eight();
        for base in Elementary::ALL {
            let (lhs, rhs) = restriction_identity(base, &prior, &c).unwrap();
            assert_eq!(lhs, rhs, "{base}");
        }
        let report = verify_antecedent_minimality(Elementary::Restrained, &prior, &c, 8).unwrap();
        assert!(report.holds);
    }
}
