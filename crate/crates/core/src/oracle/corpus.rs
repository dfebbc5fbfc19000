//! Scenario corpora for the oracles: exhaustive over small world sets, and
//! seeded random ones.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::conditional::Conditional;
use crate::enumerate::{enumerate_tpos, DEFAULT_BOUND};
use crate::error::Result;
use crate::tpo::Tpo;
use crate::worlds::WorldSet;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5EED_2024;

/// Largest world count for corpus-wide exhaustive sweeps.
pub const CORPUS_BOUND: usize = 4;

/// A prior together with a conditional over the same worlds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusItem {
    pub prior: Tpo,
    pub conditional: Conditional,
}

/// Every `(A, A∧B)` pair of world sets with `∅ ≠ A∧B ⊆ A` over `domain`.
///
/// Over two atoms with repeated valuations allowed, a conditional `A ⇒ B` is
/// determined up to equivalence by these two sets, since which `¬A` worlds
/// satisfy `B` plays no role anywhere.
pub fn conditionals(domain: WorldSet) -> Vec<Conditional> {
    let mut out = Vec::new();
    for a in domain.nonempty_subsets() {
        for ab in a.nonempty_subsets() {
            out.push(Conditional::new(a, ab).expect("nonempty conjunction"));
        }
    }
    out
}

/// Calls `f` on every prior and conditional over 1 to `max_worlds` worlds.
pub fn for_each_exhaustive(max_worlds: usize, mut f: impl FnMut(&CorpusItem) -> Result<()>) -> Result<usize> {
    let mut count = 0;
    for n in 1..=max_worlds {
        let domain = WorldSet::full(n);
        let conds = conditionals(domain);
        for prior in enumerate_tpos(domain, DEFAULT_BOUND)? {
            for &conditional in &conds {
                count += 1;
                f(&CorpusItem {
                    prior: prior.clone(),
                    conditional,
                })?;
            }
        }
    }
    Ok(count)
}

/// Calls `f` on every prior and nonempty input set over 1 to `max_worlds` worlds.
pub fn for_each_exhaustive_plain(
    max_worlds: usize,
    mut f: impl FnMut(&Tpo, WorldSet) -> Result<()>,
) -> Result<usize> {
    let mut count = 0;
    for n in 1..=max_worlds {
        let domain = WorldSet::full(n);
        for prior in enumerate_tpos(domain, DEFAULT_BOUND)? {
            for input in domain.nonempty_subsets() {
                count += 1;
                f(&prior, input)?;
            }
        }
    }
    Ok(count)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A TPO over `domain` from independent uniform ranks.
pub fn random_tpo(rng: &mut impl Rng, domain: WorldSet) -> Tpo {
    let n = domain.len().max(1);
    let ranks: Vec<usize> = (0..64).map(|_| rng.gen_range(0..n)).collect();
    Tpo::from_keys(domain, |w| ranks[w])
}

/// Random valuations over `{A, B}` for `n` worlds and a random prior; the
/// conditional is `A ⇒ B`. Valuations are redrawn until `A ∧ B` has a model.
pub fn random_item(rng: &mut impl Rng, n: usize) -> CorpusItem {
    let domain = WorldSet::full(n);
    loop {
        let mut a = WorldSet::EMPTY;
        let mut b = WorldSet::EMPTY;
        for w in 0..n {
            if rng.gen_bool(0.5) {
                a = a.with(w);
            }
            if rng.gen_bool(0.5) {
                b = b.with(w);
            }
        }
        if let Ok(conditional) = Conditional::new(a, b) {
            return CorpusItem {
                prior: random_tpo(rng, domain),
                conditional,
            };
        }
    }
}
