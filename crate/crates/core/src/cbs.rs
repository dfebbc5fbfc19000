//! Conditional belief sets as "required worlds" maps.
//!
//! A conditional with antecedent models `S` and consequent models `T` is
//! accepted iff `U(S) ⊆ T`. A single TPO gives `U(S) = min(≼, S)`; an
//! intersection of such sets gives the union of the individual minima.

use crate::error::{Error, Result};
use crate::tpo::Tpo;
use crate::worlds::WorldSet;

/// Largest domain for which all antecedents are enumerated.
pub const ANTECEDENT_BOUND: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionalBeliefSet {
    domain: WorldSet,
    generators: Vec<Tpo>,
}

impl ConditionalBeliefSet {
    /// Intersection of the conditional belief sets of `tpos`.
    ///
    /// # Panics
    /// If `tpos` is empty or the domains differ.
    pub fn from_tpos(tpos: Vec<Tpo>) -> Self {
        let domain = tpos.first().expect("at least one generating TPO").domain();
        assert!(tpos.iter().all(|t| t.domain() == domain), "generators must share a domain");
        ConditionalBeliefSet {
            domain,
            generators: tpos,
        }
    }

    pub fn domain(&self) -> WorldSet {
        self.domain
    }

    pub fn generators(&self) -> &[Tpo] {
        &self.generators
    }

    /// `U(S)`: worlds every accepted consequent for antecedent `s` must contain.
    pub fn required(&self, s: WorldSet) -> Result<WorldSet> {
        let s = s & self.domain;
        if s.is_empty() {
            return Err(Error::EmptySet("required worlds"));
        }
        let mut u = WorldSet::EMPTY;
        for t in &self.generators {
            u |= t.min_worlds(s)?;
        }
        Ok(u)
    }

    pub fn accepts(&self, antecedent: WorldSet, consequent: WorldSet) -> Result<bool> {
        Ok(self.required(antecedent)?.is_subset(consequent))
    }

    fn check_bound(&self) -> Result<()> {
        if self.domain.len() > ANTECEDENT_BOUND {
            return Err(Error::BoundExceeded {
                worlds: self.domain.len(),
                bound: ANTECEDENT_BOUND,
            });
        }
        Ok(())
    }

    /// Every `(S, U(S))` pair, antecedents in increasing bitmask order.
    pub fn materialize(&self) -> Result<Vec<(WorldSet, WorldSet)>> {
        self.check_bound()?;
        self.domain
            .nonempty_subsets()
            .map(|s| Ok((s, self.required(s)?)))
            .collect()
    }

    /// A TPO with exactly this conditional belief set, if one exists.
    pub fn generating_tpo(&self) -> Result<Option<Tpo>> {
        self.check_bound()?;
        let pair = |x: usize, y: usize| WorldSet::singleton(x).with(y);
        let candidate = Tpo::from_relation(self.domain, |x, y| {
            self.required(pair(x, y)).map(|u| u.contains(x)).unwrap_or(false)
        });
        let Ok(candidate) = candidate else {
            return Ok(None);
        };
        for s in self.domain.nonempty_subsets() {
            if candidate.min_worlds(s)? != self.required(s)? {
                return Ok(None);
            }
        }
        Ok(Some(candidate))
    }

    /// First `(S', S)` with `S ⊆ S'`, `U(S') ∩ S ≠ ∅` and `U(S) ⊄ U(S')`,
    /// i.e. a failure of the semantic form of disjunctive rationality on
    /// antecedents.
    pub fn di_violation(&self) -> Result<Option<(WorldSet, WorldSet)>> {
        self.check_bound()?;
        for big in self.domain.nonempty_subsets() {
            let u_big = self.required(big)?;
            for small in big.nonempty_subsets() {
                if u_big.intersects(small) && !self.required(small)?.is_subset(u_big) {
                    return Ok(Some((big, small)));
                }
            }
        }
        Ok(None)
    }
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

    #[test]
    fn single_cell_requires_everything() {
        let cbs = Tpo::flat(s(&[0, 1, 2])).conditional_belief_set();
        for (a, u) in cbs.materialize().unwrap() {
            assert_eq!(a, u);
        }
    }

    #[test]
    fn tied_minimum() {
        // z=0, w=1, x=2, y=3
        let cbs = t(&[&[0], &[1, 2, 3]]).conditional_belief_set();
        assert_eq!(cbs.required(s(&[1, 2])).unwrap(), s(&[1, 2]));
        assert!(cbs.accepts(s(&[1, 2]), s(&[1, 2])).unwrap());
        assert!(!cbs.accepts(s(&[1, 2]), s(&[1])).unwrap());
    }

    #[test]
    fn single_tpo_is_rational() {
        let tpo = t(&[&[2], &[0, 3], &[1]]);
        let cbs = tpo.conditional_belief_set();
        assert_eq!(cbs.generating_tpo().unwrap(), Some(tpo));
        assert_eq!(cbs.di_violation().unwrap(), None);
    }

    #[test]
    fn intersection_of_two_orders() {
        // Worlds 1..=4 at indices 1..=4.
        let cbs = ConditionalBeliefSet::from_tpos(vec![
            t(&[&[1], &[4], &[2], &[3]]),
            t(&[&[1], &[2], &[3], &[4]]),
        ]);
        assert_eq!(cbs.required(s(&[2, 3, 4])).unwrap(), s(&[2, 4]));
        assert_eq!(cbs.required(s(&[3, 4])).unwrap(), s(&[3, 4]));
        assert_eq!(cbs.di_violation().unwrap(), Some((s(&[2, 3, 4]), s(&[3, 4]))));
        assert_eq!(cbs.generating_tpo().unwrap(), None);
    }
}
