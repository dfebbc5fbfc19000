//! Exhaustive enumeration of total preorders as ordered set partitions.
//!
//! Partitions come out in canonical order: lexicographic in the sequence of
//! cell bitmasks. The first one is the strict order by world index.

use crate::error::{Error, Result};
use crate::tpo::{Tpo, UNRANKED};
use crate::worlds::{WorldSet, MAX_WORLDS};

/// Default largest domain a single enumeration may range over.
pub const DEFAULT_BOUND: usize = 8;

/// Ordered Bell (Fubini) number: how many TPOs exist over `n` worlds.
pub fn ordered_bell(n: usize) -> u128 {
    let mut a = vec![1u128; n + 1];
    for m in 1..=n {
        let mut binom = 1u128;
        let mut sum = 0u128;
        for k in 1..=m {
            binom = binom * (m - k + 1) as u128 / k as u128;
            sum += binom * a[m - k];
        }
        a[m] = sum;
    }
    a[n]
}

/// Cursor over all ordered partitions of a domain. Accessors borrow the
/// current partition; [`OrderedPartitions::advance`] moves to the next one.
pub struct OrderedPartitions {
    domain: WorldSet,
    cells: Vec<WorldSet>,
    // remaining[i]: worlds not yet placed before cell i
    remaining: Vec<WorldSet>,
    ranks: [u8; MAX_WORLDS],
    started: bool,
    done: bool,
}

impl OrderedPartitions {
    pub fn new(domain: WorldSet, bound: usize) -> Result<Self> {
        if domain.len() > bound {
            return Err(Error::BoundExceeded {
                worlds: domain.len(),
                bound,
            });
        }
        Ok(OrderedPartitions {
            domain,
            cells: Vec::with_capacity(domain.len()),
            remaining: Vec::with_capacity(domain.len()),
            ranks: [UNRANKED; MAX_WORLDS],
            started: false,
            done: false,
        })
    }

    pub fn domain(&self) -> WorldSet {
        self.domain
    }

    pub fn cells(&self) -> &[WorldSet] {
        &self.cells
    }

    pub fn ranks(&self) -> &[u8; MAX_WORLDS] {
        &self.ranks
    }

    pub fn to_tpo(&self) -> Tpo {
        Tpo::from_cells_unchecked(self.cells.clone(), self.domain)
    }

    fn fill_from(&mut self, mut rest: WorldSet) {
        while let Some(w) = rest.first() {
            let cell = WorldSet::singleton(w);
            self.remaining.push(rest);
            self.ranks[w] = self.cells.len() as u8;
            self.cells.push(cell);
            rest = rest.difference(cell);
        }
    }

    /// Moves to the next partition; returns false once exhausted.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            // the empty domain has exactly one (empty) partition
            self.fill_from(self.domain);
            return true;
        }
        while let Some(cell) = self.cells.pop() {
            let rem = self.remaining.pop().expect("parallel stacks");
            let succ = (cell.bits() | !rem.bits()).wrapping_add(1) & rem.bits();
            if succ != 0 {
                let succ = WorldSet::from_bits(succ);
                let r = self.cells.len() as u8;
                for w in succ.iter() {
                    self.ranks[w] = r;
                }
                self.cells.push(succ);
                self.remaining.push(rem);
                self.fill_from(rem.difference(succ));
                return true;
            }
        }
        self.done = true;
        false
    }

    /// Calls `f` on every partition in canonical order.
    pub fn for_each(mut self, mut f: impl FnMut(&OrderedPartitions)) {
        while self.advance() {
            f(&self);
        }
    }
}

/// Every TPO over `domain`, canonical order.
pub fn enumerate_tpos(domain: WorldSet, bound: usize) -> Result<TpoIter> {
    Ok(TpoIter(OrderedPartitions::new(domain, bound)?))
}

pub struct TpoIter(OrderedPartitions);

impl Iterator for TpoIter {
    type Item = Tpo;

    fn next(&mut self) -> Option<Tpo> {
        self.0.advance().then(|| self.0.to_tpo())
    }
}
