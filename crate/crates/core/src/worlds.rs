//! Sets of worlds as bitmasks over a scenario's world list.

use std::fmt;

/// Largest number of worlds a scenario may contain.
pub const MAX_WORLDS: usize = 64;

/// A set of worlds, indexed by position in the scenario's world list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WorldSet(u64);

impl WorldSet {
    pub const EMPTY: WorldSet = WorldSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        WorldSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The first `n` worlds.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_WORLDS, "at most {MAX_WORLDS} worlds are supported");
        if n == MAX_WORLDS {
            WorldSet(u64::MAX)
        } else {
            WorldSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(world: usize) -> Self {
        assert!(world < MAX_WORLDS);
        WorldSet(1u64 << world)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(WorldSet::EMPTY, |acc, i| acc.with(i))
    }

    pub fn with(self, world: usize) -> Self {
        self | WorldSet::singleton(world)
    }

    pub fn contains(self, world: usize) -> bool {
        world < MAX_WORLDS && self.0 & (1u64 << world) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: WorldSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: WorldSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Complement relative to `domain`.
    pub fn complement_in(self, domain: WorldSet) -> WorldSet {
        WorldSet(domain.0 & !self.0)
    }

    pub fn difference(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 & !other.0)
    }

    /// Lowest-indexed member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// Every nonempty subset of `self`, in increasing bitmask order.
    pub fn nonempty_subsets(self) -> Subsets {
        Subsets {
            domain: self.0,
            next: if self.0 == 0 {
                None
            } else {
                Some(self.0 & self.0.wrapping_neg())
            },
        }
    }
}

impl std::ops::BitOr for WorldSet {
    type Output = WorldSet;
    fn bitor(self, rhs: WorldSet) -> WorldSet {
        WorldSet(self.0 | rhs.0)
    }
}

impl std::ops::BitOrAssign for WorldSet {
    fn bitor_assign(&mut self, rhs: WorldSet) {
        self.0 |= rhs.0;
    }
}

impl std::ops::BitAnd for WorldSet {
    type Output = WorldSet;
    fn bitand(self, rhs: WorldSet) -> WorldSet {
        WorldSet(self.0 & rhs.0)
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for WorldSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        WorldSet::from_indices(iter)
    }
}

impl IntoIterator for WorldSet {
    type Item = usize;
    type IntoIter = Members;
    fn into_iter(self) -> Members {
        self.iter()
    }
}

/// Iterator over the members of a [`WorldSet`], lowest index first.
#[derive(Clone)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Iterator over nonempty subsets of a domain.
#[derive(Clone)]
pub struct Subsets {
    domain: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = WorldSet;

    fn next(&mut self) -> Option<WorldSet> {
        let current = self.next?;
        // next submask in increasing numeric order
        let succ = (current | !self.domain).wrapping_add(1) & self.domain;
        self.next = (succ != 0).then_some(succ);
        Some(WorldSet(current))
    }
}
