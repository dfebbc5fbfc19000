//! Total preorders over worlds, stored as ordered partitions.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::cbs::ConditionalBeliefSet;
use crate::error::{Error, Result};
use crate::logic::Universe;
use crate::worlds::{WorldSet, MAX_WORLDS};

/// Rank value for worlds outside a TPO's domain.
pub const UNRANKED: u8 = u8::MAX;

/// A total preorder over `domain`. Cells are listed most plausible first;
/// `x ≼ y` iff `rank(x) <= rank(y)`.
#[derive(Clone)]
pub struct Tpo {
    cells: Vec<WorldSet>,
    domain: WorldSet,
    ranks: [u8; MAX_WORLDS],
}

/// Pairwise disagreements between two TPOs over the same domain.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConflictReport {
    /// Pairs ordered strictly and oppositely.
    pub hard: Vec<(usize, usize)>,
    /// Pairs tied in exactly one of the two TPOs.
    pub soft: Vec<(usize, usize)>,
}

impl ConflictReport {
    pub fn distance(&self) -> usize {
        2 * self.hard.len() + self.soft.len()
    }
}

impl Tpo {
    /// Builds a TPO whose domain is the union of `cells`.
    pub fn new(cells: Vec<WorldSet>) -> Result<Self> {
        let mut domain = WorldSet::EMPTY;
        for &c in &cells {
            if c.is_empty() {
                return Err(Error::EmptyCell);
            }
            if c.intersects(domain) {
                return Err(Error::OverlappingCells);
            }
            domain |= c;
        }
        Ok(Self::from_cells_unchecked(cells, domain))
    }

    /// Builds a TPO that must cover exactly `domain`.
    pub fn from_partition(cells: Vec<WorldSet>, domain: WorldSet) -> Result<Self> {
        let t = Tpo::new(cells)?;
        let outside = t.domain.difference(domain);
        if !outside.is_empty() {
            return Err(Error::UnknownWorld(format!("{outside:?}")));
        }
        let missing = domain.difference(t.domain);
        if !missing.is_empty() {
            return Err(Error::MissingWorlds(missing.iter().collect()));
        }
        Ok(t)
    }

    pub(crate) fn from_cells_unchecked(cells: Vec<WorldSet>, domain: WorldSet) -> Self {
        let mut ranks = [UNRANKED; MAX_WORLDS];
        for (r, c) in cells.iter().enumerate() {
            for w in c.iter() {
                ranks[w] = r as u8;
            }
        }
        Tpo {
            cells,
            domain,
            ranks,
        }
    }

    /// Everything tied.
    pub fn flat(domain: WorldSet) -> Self {
        let cells = if domain.is_empty() { vec![] } else { vec![domain] };
        Self::from_cells_unchecked(cells, domain)
    }

    /// Orders `domain` by an arbitrary key; equal keys tie.
    pub fn from_keys<K: Ord>(domain: WorldSet, key: impl Fn(usize) -> K) -> Self {
        let mut keyed: Vec<(K, usize)> = domain.iter().map(|w| (key(w), w)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let mut cells: Vec<WorldSet> = Vec::new();
        let mut prev: Option<&K> = None;
        for (k, w) in &keyed {
            if prev == Some(k) {
                let last = cells.last_mut().expect("cell exists");
                *last = last.with(*w);
            } else {
                cells.push(WorldSet::singleton(*w));
            }
            prev = Some(k);
        }
        Self::from_cells_unchecked(cells, domain)
    }

    /// Builds a TPO from a binary relation, rejecting it unless it is a
    /// reflexive, total and transitive relation on `domain`.
    pub fn from_relation(domain: WorldSet, le: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let worlds: Vec<usize> = domain.iter().collect();
        let n = worlds.len();
        let mut m = vec![false; n * n];
        for (i, &x) in worlds.iter().enumerate() {
            for (j, &y) in worlds.iter().enumerate() {
                m[i * n + j] = le(x, y);
            }
        }
        for (i, &x) in worlds.iter().enumerate() {
            for (j, &y) in worlds.iter().enumerate() {
                if !m[i * n + j] && !m[j * n + i] {
                    let what = if i == j { "reflexive" } else { "total" };
                    return Err(Error::NotATotalPreorder(format!(
                        "not {what} on worlds {x} and {y}"
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !m[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    if m[j * n + k] && !m[i * n + k] {
                        return Err(Error::NotATotalPreorder(format!(
                            "not transitive on worlds {}, {}, {}",
                            worlds[i], worlds[j], worlds[k]
                        )));
                    }
                }
            }
        }
        // in a total preorder, the number of worlds weakly below x orders x
        let below: Vec<usize> = (0..n).map(|i| (0..n).filter(|&j| m[j * n + i]).count()).collect();
        Ok(Self::from_keys(domain, |w| {
            below[worlds.iter().position(|&v| v == w).expect("member")]
        }))
    }

    pub fn cells(&self) -> &[WorldSet] {
        &self.cells
    }

    pub fn domain(&self) -> WorldSet {
        self.domain
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub(crate) fn rank_array(&self) -> &[u8; MAX_WORLDS] {
        &self.ranks
    }

    /// Cell index of `w`.
    ///
    /// # Panics
    /// If `w` is outside the domain.
    pub fn rank(&self, w: usize) -> usize {
        assert!(self.domain.contains(w), "world {w} outside TPO domain");
        self.ranks[w] as usize
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.rank(x) <= self.rank(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.rank(x) < self.rank(y)
    }

    pub fn equiv(&self, x: usize, y: usize) -> bool {
        self.rank(x) == self.rank(y)
    }

    /// The most plausible cell (empty only for an empty domain).
    pub fn first(&self) -> WorldSet {
        self.cells.first().copied().unwrap_or(WorldSet::EMPTY)
    }

    fn min_rank(&self, s: WorldSet) -> Option<usize> {
        self.cells.iter().position(|c| c.intersects(s))
    }

    /// Members of `s` of minimal rank. Worlds of `s` outside the domain are ignored.
    pub fn min_worlds(&self, s: WorldSet) -> Result<WorldSet> {
        self.min_rank(s)
            .map(|r| self.cells[r] & s)
            .ok_or(Error::EmptySet("min_worlds"))
    }

    pub fn believes(&self, models: WorldSet) -> bool {
        self.first().is_subset(models)
    }

    /// Ramsey Test acceptance of a conditional given by its model sets.
    pub fn accepts_conditional(&self, antecedent: WorldSet, consequent: WorldSet) -> Result<bool> {
        Ok(self.min_worlds(antecedent)?.is_subset(consequent))
    }

    fn same_domain(&self, other: &Tpo) -> Result<()> {
        if self.domain == other.domain {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    pub fn kemeny_distance(&self, other: &Tpo) -> Result<usize> {
        self.same_domain(other)?;
        Ok(kemeny_ranks(&self.ranks, &other.ranks, self.domain))
    }

    pub fn conflicts(&self, other: &Tpo) -> Result<ConflictReport> {
        self.same_domain(other)?;
        let mut report = ConflictReport::default();
        for x in self.domain.iter() {
            for y in self.domain.iter().filter(|&y| y > x) {
                let a = self.ranks[x].cmp(&self.ranks[y]);
                let b = other.ranks[x].cmp(&other.ranks[y]);
                if a == b {
                    continue;
                }
                if a == Ordering::Equal || b == Ordering::Equal {
                    report.soft.push((x, y));
                } else {
                    report.hard.push((x, y));
                }
            }
        }
        Ok(report)
    }

    /// Worlds weakly below some minimal member of `s`.
    pub fn down_set(&self, s: WorldSet) -> Result<WorldSet> {
        let r = self.min_rank(s).ok_or(Error::EmptySet("down_set"))?;
        Ok(self.cells[..=r]
            .iter()
            .fold(WorldSet::EMPTY, |acc, &c| acc | c))
    }

    /// `x ≼ y` iff `x ≺₁ y`, or `x ∼₁ y` and `x ≼₂ y`.
    pub fn lex_combination(&self, other: &Tpo) -> Result<Tpo> {
        self.same_domain(other)?;
        let mut cells = Vec::with_capacity(self.cells.len().max(other.cells.len()));
        for &c1 in &self.cells {
            for &c2 in &other.cells {
                let c = c1 & c2;
                if !c.is_empty() {
                    cells.push(c);
                }
            }
        }
        Ok(Self::from_cells_unchecked(cells, self.domain))
    }

    /// Moves every member of `s` strictly below every non-member, keeping
    /// the order inside both groups.
    pub fn lex_revise_by_set(&self, s: WorldSet) -> Tpo {
        let inside = self.cells.iter().map(|&c| c & s);
        let outside = self.cells.iter().map(|&c| c.difference(s));
        let cells = inside.chain(outside).filter(|c| !c.is_empty()).collect();
        Self::from_cells_unchecked(cells, self.domain)
    }

    /// The order restricted to `s ∩ domain`.
    pub fn restrict(&self, s: WorldSet) -> Result<Tpo> {
        let sub = s & self.domain;
        if sub.is_empty() {
            return Err(Error::EmptySet("restrict"));
        }
        let cells = self
            .cells
            .iter()
            .map(|&c| c & sub)
            .filter(|c| !c.is_empty())
            .collect();
        Ok(Self::from_cells_unchecked(cells, sub))
    }

    /// Comparative flatness `self ⊒ other`.
    pub fn flatness_at_least(&self, other: &Tpo) -> Result<bool> {
        self.same_domain(other)?;
        Ok(flatness_cells(&self.cells, &other.cells))
    }

    pub fn agree_on_antecedent(&self, other: &Tpo, s: WorldSet) -> Result<bool> {
        Ok(self.min_worlds(s)? == other.min_worlds(s)?)
    }

    pub fn conditional_belief_set(&self) -> ConditionalBeliefSet {
        ConditionalBeliefSet::from_tpos(vec![self.clone()])
    }

    /// Text form, e.g. `7 < 8 < 6 < 4,5`.
    pub fn render(&self, universe: &Universe) -> String {
        self.cells
            .iter()
            .map(|c| c.iter().map(|w| universe.label(w)).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(" < ")
    }

    /// World labels per cell.
    pub fn labels(&self, universe: &Universe) -> Vec<Vec<String>> {
        self.cells
            .iter()
            .map(|c| c.iter().map(|w| universe.label(w).to_string()).collect())
            .collect()
    }

    /// Parses the text form; the result must cover every world of `universe`.
    pub fn parse(text: &str, universe: &Universe) -> Result<Tpo> {
        let mut cells = Vec::new();
        for part in text.split('<') {
            let mut cell = WorldSet::EMPTY;
            for label in part.split(',').map(str::trim) {
                if label.is_empty() {
                    return Err(Error::EmptyCell);
                }
                let w = universe
                    .world_index(label)
                    .ok_or_else(|| Error::UnknownWorld(label.to_string()))?;
                if cell.contains(w) {
                    return Err(Error::OverlappingCells);
                }
                cell = cell.with(w);
            }
            cells.push(cell);
        }
        Tpo::from_partition(cells, universe.all())
    }
}

/// Kemeny distance between two rank vectors over `domain`.
pub(crate) fn kemeny_ranks(a: &[u8; MAX_WORLDS], b: &[u8; MAX_WORLDS], domain: WorldSet) -> usize {
    let mut d = 0;
    let mut rest = domain;
    while let Some(x) = rest.first() {
        rest = rest.difference(WorldSet::singleton(x));
        for y in rest.iter() {
            let p = a[x].cmp(&a[y]);
            let q = b[x].cmp(&b[y]);
            if p != q {
                d += if p == Ordering::Equal || q == Ordering::Equal { 1 } else { 2 };
            }
        }
    }
    d
}

pub(crate) fn flatness_cells(a: &[WorldSet], b: &[WorldSet]) -> bool {
    for i in 0..a.len().max(b.len()) {
        let c1 = a.get(i).copied().unwrap_or(WorldSet::EMPTY);
        let c2 = b.get(i).copied().unwrap_or(WorldSet::EMPTY);
        if c1 != c2 {
            return c2.is_subset(c1);
        }
    }
    true
}

impl PartialEq for Tpo {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.cells == other.cells
    }
}

impl Eq for Tpo {}

impl Hash for Tpo {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.domain.hash(state);
        self.cells.hash(state);
    }
}

impl PartialOrd for Tpo {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by domain, then lexicographically by cell bitmasks.
impl Ord for Tpo {
    fn cmp(&self, other: &Self) -> Ordering {
        self.domain
            .cmp(&other.domain)
            .then_with(|| self.cells.cmp(&other.cells))
    }
}

impl fmt::Debug for Tpo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.cells).finish()
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

    // Worlds 1..=8 of the running eight-world example live at indices 1..=8.
    fn prior() -> Tpo {
        t(&[&[8], &[7], &[6], &[4, 5], &[1, 2, 3]])
    }

    fn step1_restrained() -> Tpo {
        t(&[&[7], &[8], &[6], &[4, 5], &[1, 2], &[3]])
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Tpo::new(vec![s(&[0]), s(&[0, 1])]), Err(Error::OverlappingCells));
        assert_eq!(Tpo::new(vec![s(&[0]), WorldSet::EMPTY]), Err(Error::EmptyCell));
        assert_eq!(
            Tpo::from_partition(vec![s(&[0])], s(&[0, 1])),
            Err(Error::MissingWorlds(vec![1]))
        );
        let ok = Tpo::from_partition(vec![s(&[0, 1]), s(&[2, 3])], WorldSet::full(4)).unwrap();
        assert_eq!(ok.rank(0), 0);
        assert_eq!(ok.rank(3), 1);
    }

    #[test]
    fn minima() {
        assert_eq!(step1_restrained().min_worlds(s(&[1, 3, 4, 8])).unwrap(), s(&[8]));
        assert_eq!(step1_restrained().min_worlds(s(&[1, 4])).unwrap(), s(&[4]));
        assert_eq!(prior().min_worlds(prior().domain()).unwrap(), s(&[8]));
        assert!(prior().min_worlds(WorldSet::EMPTY).is_err());
    }

    #[test]
    fn kemeny_examples() {
        let ab = t(&[&[0], &[1]]);
        let ba = t(&[&[1], &[0]]);
        let tie = t(&[&[0, 1]]);
        assert_eq!(ab.kemeny_distance(&ab).unwrap(), 0);
        assert_eq!(ab.kemeny_distance(&ba).unwrap(), 2);
        assert_eq!(ab.kemeny_distance(&tie).unwrap(), 1);
        let c = ab.conflicts(&ba).unwrap();
        assert_eq!((c.hard, c.soft), (vec![(0, 1)], vec![]));
        let c = ab.conflicts(&tie).unwrap();
        assert_eq!((c.hard, c.soft), (vec![], vec![(0, 1)]));
        assert!(ab.kemeny_distance(&t(&[&[0], &[2]])).is_err());
    }

    #[test]
    fn down_set_examples() {
        let t1 = step1_restrained();
        assert_eq!(t1.down_set(s(&[1, 4])).unwrap(), s(&[4, 5, 6, 7, 8]));
        assert_eq!(t1.down_set(t1.first()).unwrap(), t1.first());
        assert_eq!(t1.down_set(t1.domain()).unwrap(), t1.first());
    }

    #[test]
    fn lex_combination_examples() {
        // a=0, b=1, c=2
        let t1 = t(&[&[0, 1], &[2]]);
        let t2 = t(&[&[1], &[0, 2]]);
        assert_eq!(t1.lex_combination(&t2).unwrap(), t(&[&[1], &[0], &[2]]));
        assert_eq!(t1.lex_combination(&t1).unwrap(), t1);
        assert_eq!(Tpo::flat(t2.domain()).lex_combination(&t2).unwrap(), t2);
    }

    #[test]
    fn lex_revise_by_set_examples() {
        let t1 = step1_restrained();
        assert_eq!(
            t1.lex_revise_by_set(s(&[4, 5, 6, 7])),
            t(&[&[7], &[6], &[4, 5], &[8], &[1, 2], &[3]])
        );
        assert_eq!(t1.lex_revise_by_set(t1.domain()), t1);
        assert_eq!(t1.lex_revise_by_set(WorldSet::EMPTY), t1);
    }

    #[test]
    fn restriction() {
        let p = prior();
        assert_eq!(p.restrict(p.domain()).unwrap(), p);
        assert_eq!(p.restrict(s(&[1, 3, 4, 8])).unwrap(), t(&[&[8], &[4], &[1, 3]]));
        assert_eq!(p.restrict(s(&[6])).unwrap().num_cells(), 1);
        assert!(p.restrict(WorldSet::EMPTY).is_err());
    }

    #[test]
    fn flatness() {
        let coarse = t(&[&[0, 1], &[2]]);
        let fine = t(&[&[0], &[1], &[2]]);
        assert!(coarse.flatness_at_least(&coarse).unwrap());
        assert!(coarse.flatness_at_least(&fine).unwrap());
        assert!(!fine.flatness_at_least(&coarse).unwrap());
    }

    #[test]
    fn antecedent_agreement() {
        let (p, r) = (prior(), step1_restrained());
        assert!(p.agree_on_antecedent(&r, s(&[2, 5, 6, 7])).unwrap());
        assert!(!p.agree_on_antecedent(&r, p.domain()).unwrap());
    }

    #[test]
    fn relation_round_trip() {
        let p = prior();
        assert_eq!(Tpo::from_relation(p.domain(), |x, y| p.le(x, y)).unwrap(), p);
        let cyclic = Tpo::from_relation(s(&[0, 1, 2]), |x, y| x == y || (y == (x + 1) % 3));
        assert!(matches!(cyclic, Err(Error::NotATotalPreorder(_))));
        let partial = Tpo::from_relation(s(&[0, 1]), |x, y| x == y);
        assert!(matches!(partial, Err(Error::NotATotalPreorder(_))));
    }

    #[test]
    fn keys() {
        let k = Tpo::from_keys(s(&[0, 1, 2, 3]), |w| [5, 1, 5, 0][w]);
        assert_eq!(k, t(&[&[3], &[1], &[0, 2]]));
    }
}
