//! Elementary revision of a TPO by a set of worlds.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tpo::Tpo;
use crate::worlds::WorldSet;

/// Revision of a TPO by the models of a sentence.
pub trait Revise {
    fn name(&self) -> String;

    /// Revises `t` by `s`. Worlds of `s` outside `t`'s domain are ignored;
    /// an input with no world in the domain is inconsistent.
    fn revise(&self, t: &Tpo, s: WorldSet) -> Result<Tpo>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elementary {
    Natural,
    Restrained,
    Lexicographic,
}

impl Elementary {
    pub const ALL: [Elementary; 3] = [
        Elementary::Natural,
        Elementary::Restrained,
        Elementary::Lexicographic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Elementary::Natural => "natural",
            Elementary::Restrained => "restrained",
            Elementary::Lexicographic => "lexicographic",
        }
    }
}

impl fmt::Display for Elementary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Elementary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "natural" => Ok(Elementary::Natural),
            "restrained" => Ok(Elementary::Restrained),
            "lexicographic" => Ok(Elementary::Lexicographic),
            other => Err(Error::UnknownOperator(other.to_string())),
        }
    }
}

impl Revise for Elementary {
    fn name(&self) -> String {
        self.as_str().to_string()
    }

    fn revise(&self, t: &Tpo, s: WorldSet) -> Result<Tpo> {
        match self {
            Elementary::Natural => natural_revise(t, s),
            Elementary::Restrained => restrained_revise(t, s),
            Elementary::Lexicographic => lexicographic_revise(t, s),
        }
    }
}

fn minimum(t: &Tpo, s: WorldSet) -> Result<WorldSet> {
    t.min_worlds(s)
        .map_err(|_| Error::InconsistentInput("revision by an empty set of worlds".into()))
}

/// The minimal `s`-worlds move to the front; all else keeps its order.
pub fn natural_revise(t: &Tpo, s: WorldSet) -> Result<Tpo> {
    let m = minimum(t, s)?;
    let mut cells = vec![m];
    cells.extend(t.cells().iter().map(|c| c.difference(m)).filter(|c| !c.is_empty()));
    Ok(Tpo::from_cells_unchecked(cells, t.domain()))
}

/// As natural revision, but prior ties among the rest are broken in favour
/// of `s`-worlds.
pub fn restrained_revise(t: &Tpo, s: WorldSet) -> Result<Tpo> {
    let m = minimum(t, s)?;
    let mut cells = vec![m];
    for &c in t.cells() {
        let rest = c.difference(m);
        cells.extend([rest & s, rest.difference(s)].into_iter().filter(|c| !c.is_empty()));
    }
    Ok(Tpo::from_cells_unchecked(cells, t.domain()))
}

/// Every `s`-world strictly before every other world.
pub fn lexicographic_revise(t: &Tpo, s: WorldSet) -> Result<Tpo> {
    minimum(t, s)?;
    Ok(t.lex_revise_by_set(s & t.domain()))
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

    fn prior() -> Tpo {
        t(&[&[8], &[7], &[6], &[4, 5], &[1, 2, 3]])
    }

    const MATERIAL: &[usize] = &[1, 2, 4, 5, 6, 7];

    #[test]
    fn eight_world_material_revisions() {
        assert_eq!(
            natural_revise(&prior(), s(MATERIAL)).unwrap(),
            t(&[&[7], &[8], &[6], &[4, 5], &[1, 2, 3]])
        );
        assert_eq!(
            restrained_revise(&prior(), s(MATERIAL)).unwrap(),
            t(&[&[7], &[8], &[6], &[4, 5], &[1, 2], &[3]])
        );
        assert_eq!(
            lexicographic_revise(&prior(), s(MATERIAL)).unwrap(),
            t(&[&[7], &[6], &[4, 5], &[1, 2], &[8], &[3]])
        );
    }

    #[test]
    fn full_input_is_identity() {
        for op in Elementary::ALL {
            assert_eq!(op.revise(&prior(), prior().domain()).unwrap(), prior());
        }
    }

    #[test]
    fn small_cases() {
        let ab = t(&[&[0], &[1]]);
        assert_eq!(natural_revise(&ab, s(&[1])).unwrap(), t(&[&[1], &[0]]));
        let tie = t(&[&[0, 1]]);
        assert_eq!(restrained_revise(&tie, s(&[0])).unwrap(), t(&[&[0], &[1]]));
        assert_eq!(lexicographic_revise(&tie, s(&[1])).unwrap(), t(&[&[1], &[0]]));
    }

    #[test]
    fn empty_input_is_rejected() {
        for op in Elementary::ALL {
            assert!(matches!(
                op.revise(&prior(), WorldSet::EMPTY),
                Err(Error::InconsistentInput(_))
            ));
            assert!(op.revise(&prior(), s(&[0])).is_err());
        }
    }

    #[test]
    fn names_round_trip() {
        for op in Elementary::ALL {
            assert_eq!(op.name().parse::<Elementary>().unwrap(), op);
        }
        assert!("nat".parse::<Elementary>().is_err());
    }
}
