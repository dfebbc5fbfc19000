//! Postulates as predicates over revision traces, checked exhaustively over
//! the finite domain.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::conditional::{circledast, Conditional};
use crate::error::{Error, Result};
use crate::logic::Universe;
use crate::oracle::trace::{Trace, TraceInput};
use crate::revision::{Elementary, Revise};
use crate::tpo::Tpo;
use crate::worlds::WorldSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PostulateId {
    C1,
    C2,
    C3,
    C4,
    S,
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P1p,
    P2p,
    P3p,
    P4p,
    KI1,
    KI2,
    KI3,
    DE,
    V,
    Eq,
    Rec,
    Beta2,
    SR,
    DI,
}

use PostulateId::*;

impl PostulateId {
    pub const ALL: [PostulateId; 25] = [
        C1, C2, C3, C4, S, P1, P2, P3, P4, P5, P6, P1p, P2p, P3p, P4p, KI1, KI2, KI3, DE, V, Eq,
        Rec, Beta2, SR, DI,
    ];

    pub fn name(self) -> &'static str {
        match self {
            C1 => "C1",
            C2 => "C2",
            C3 => "C3",
            C4 => "C4",
            S => "S",
            P1 => "P1",
            P2 => "P2",
            P3 => "P3",
            P4 => "P4",
            P5 => "P5",
            P6 => "P6",
            P1p => "P1'",
            P2p => "P2'",
            P3p => "P3'",
            P4p => "P4'",
            KI1 => "KI1",
            KI2 => "KI2",
            KI3 => "KI3",
            DE => "DE",
            V => "V",
            Eq => "Eq",
            Rec => "Rec",
            Beta2 => "Beta2",
            SR => "SR",
            DI => "DI",
        }
    }

    /// Postulates that can be evaluated on `trace`.
    pub fn applicable(trace: &Trace) -> Vec<PostulateId> {
        let has_result = trace.result.is_some();
        let elementary = trace.elementary("").is_ok();
        let mut ids = vec![C1, C2, C3, C4];
        match trace.input {
            TraceInput::Conditional(_) => {
                if has_result {
                    ids.extend([S, P1, P2, P3, P4, P5, P6, P1p, P2p, P3p, P4p, KI1, KI2, KI3, DE, V]);
                }
            }
            TraceInput::Plain(_) => {
                if has_result {
                    ids.push(S);
                }
                if elementary {
                    ids.extend([Rec, Beta2, SR]);
                }
            }
        }
        if trace.operator.is_some() {
            ids.push(Eq);
        }
        ids.push(DI);
        ids
    }
}

impl fmt::Display for PostulateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PostulateId {
    type Err = Error;

    /// Accepts `P3'` and `P3p` alike, case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('\'', "p");
        PostulateId::ALL
            .into_iter()
            .find(|p| p.name().to_ascii_lowercase().replace('\'', "p") == norm)
            .ok_or_else(|| Error::UnknownPostulate(s.to_string()))
    }
}

/// Where a postulate fails: some of a quantified set, a second set, and worlds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Witness {
    pub set: Option<WorldSet>,
    pub set2: Option<WorldSet>,
    pub x: Option<usize>,
    pub y: Option<usize>,
}

impl Witness {
    fn pair(x: usize, y: usize) -> Self {
        Witness {
            x: Some(x),
            y: Some(y),
            ..Default::default()
        }
    }

    pub fn worlds(&self) -> Option<(usize, usize)> {
        Some((self.x?, self.y?))
    }

    pub fn render(&self, universe: &Universe) -> String {
        let mut parts = Vec::new();
        if let Some(s) = self.set {
            parts.push(format!("set={}", universe.render_set(s)));
        }
        if let Some(s) = self.set2 {
            parts.push(format!("subset={}", universe.render_set(s)));
        }
        match (self.x, self.y) {
            (Some(x), Some(y)) => parts.push(format!("pair=({},{})", universe.label(x), universe.label(y))),
            (Some(x), None) => parts.push(format!("world={}", universe.label(x))),
            _ => {}
        }
        parts.join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PostulateReport {
    pub postulate: PostulateId,
    pub holds: bool,
    pub witness: Option<Witness>,
    /// Number of instances evaluated.
    pub searched: usize,
}

/// Model sets of a conditional input, relative to the trace domain.
#[derive(Clone, Copy)]
struct Parts {
    a: WorldSet,
    b: WorldSet,
    ab: WorldSet,
    anb: WorldSet,
    not_a: WorldSet,
    material: WorldSet,
}

impl Parts {
    fn new(c: &Conditional, domain: WorldSet) -> Self {
        let a = c.antecedent() & domain;
        Parts {
            a,
            b: c.consequent() & domain,
            ab: c.conjunction() & domain,
            anb: c.counter() & domain,
            not_a: domain.difference(a),
            material: c.material(domain),
        }
    }
}

struct Ctx<'a> {
    trace: &'a Trace,
    domain: WorldSet,
    memo: RefCell<HashMap<(u8, WorldSet), Tpo>>,
}

impl<'a> Ctx<'a> {
    fn new(trace: &'a Trace) -> Self {
        Ctx {
            trace,
            domain: trace.domain(),
            memo: RefCell::new(HashMap::new()),
        }
    }

    fn result(&self, p: PostulateId) -> Result<&'a Tpo> {
        self.trace.result.as_ref().ok_or(Error::MissingTraceField {
            postulate: p.name(),
            field: "result",
        })
    }

    fn step1(&self, p: PostulateId) -> Result<&'a Tpo> {
        self.trace.step1.as_ref().ok_or(Error::MissingTraceField {
            postulate: p.name(),
            field: "step1",
        })
    }

    fn conditional(&self, p: PostulateId) -> Result<Parts> {
        match self.trace.input {
            TraceInput::Conditional(c) => Ok(Parts::new(&c, self.domain)),
            TraceInput::Plain(_) => Err(Error::MissingTraceField {
                postulate: p.name(),
                field: "conditional input",
            }),
        }
    }

    fn plain(&self, p: PostulateId) -> Result<WorldSet> {
        match self.trace.input {
            TraceInput::Plain(s) => Ok(s & self.domain),
            TraceInput::Conditional(_) => Err(Error::MissingTraceField {
                postulate: p.name(),
                field: "plain input",
            }),
        }
    }

    /// Orders and input set for the DP postulates.
    fn dp(&self, p: PostulateId) -> Result<(&'a Tpo, &'a Tpo, WorldSet)> {
        match self.trace.input {
            TraceInput::Plain(s) => Ok((&self.trace.prior, self.result(p)?, s & self.domain)),
            TraceInput::Conditional(c) => Ok((
                &self.trace.prior,
                self.step1(p)?,
                c.material(self.domain),
            )),
        }
    }

    fn memo(&self, key: (u8, WorldSet), f: impl FnOnce() -> Result<Tpo>) -> Result<Tpo> {
        if let Some(t) = self.memo.borrow().get(&key) {
            return Ok(t.clone());
        }
        let t = f()?;
        self.memo.borrow_mut().insert(key, t.clone());
        Ok(t)
    }

    /// Reference and compared order, for ranking pair witnesses.
    fn pair_orders(&self, p: PostulateId) -> Option<(&'a Tpo, &'a Tpo)> {
        match p {
            C1 | C2 | C3 | C4 => self.dp(p).ok().map(|(r, n, _)| (r, n)),
            P1 | P2 | P3 | P4 | P5 | P6 | V => Some((self.step1(p).ok()?, self.result(p).ok()?)),
            P1p | P2p | P3p | P4p | KI1 | KI2 | KI3 => {
                Some((&self.trace.prior, self.result(p).ok()?))
            }
            _ => None,
        }
    }
}

fn iff(a: bool, b: bool) -> bool {
    a == b
}

fn implies(a: bool, b: bool) -> bool {
    !a || b
}

fn pairs(domain: WorldSet) -> Vec<Witness> {
    let mut out = Vec::new();
    for x in domain.iter() {
        for y in domain.iter().filter(|&y| y != x) {
            out.push(Witness::pair(x, y));
        }
    }
    out
}

fn instances(p: PostulateId, ctx: &Ctx) -> Result<Vec<Witness>> {
    let d = ctx.domain;
    Ok(match p {
        S | DE => d
            .iter()
            .map(|x| Witness {
                x: Some(x),
                ..Default::default()
            })
            .collect(),
        Eq => vec![Witness::default()],
        Rec => {
            let a = ctx.plain(p)?;
            let mut out = Vec::new();
            for set in d.nonempty_subsets().filter(|b| b.intersects(a)) {
                out.extend(d.iter().map(|x| Witness {
                    set: Some(set),
                    x: Some(x),
                    ..Default::default()
                }));
            }
            out
        }
        Beta2 | SR => {
            let mut out = Vec::new();
            for set in d.nonempty_subsets() {
                let worlds = if p == SR { set } else { d };
                out.extend(pairs(worlds).into_iter().map(|w| Witness { set: Some(set), ..w }));
            }
            out
        }
        DI => {
            let mut out = Vec::new();
            for big in d.nonempty_subsets() {
                out.extend(big.nonempty_subsets().map(|small| Witness {
                    set: Some(big),
                    set2: Some(small),
                    ..Default::default()
                }));
            }
            out
        }
        _ => pairs(d),
    })
}

fn world(w: &Witness) -> usize {
    w.x.expect("witness world")
}

fn pair(w: &Witness) -> (usize, usize) {
    w.worlds().expect("witness pair")
}

/// Whether `p` holds at the single instance `w`.
fn eval(p: PostulateId, ctx: &Ctx, w: &Witness) -> Result<bool> {
    let t = ctx.trace;
    match p {
        C1 | C2 | C3 | C4 => {
            let (old, new, input) = ctx.dp(p)?;
            let (x, y) = pair(w);
            let (xi, yi) = (input.contains(x), input.contains(y));
            Ok(match p {
                C1 if xi && yi => iff(new.le(x, y), old.le(x, y)),
                C2 if !xi && !yi => iff(new.le(x, y), old.le(x, y)),
                C3 if xi && !yi => implies(old.lt(x, y), new.lt(x, y)),
                C4 if xi && !yi => implies(old.le(x, y), new.le(x, y)),
                _ => true,
            })
        }
        S => {
            let r = ctx.result(p)?;
            let x = world(w);
            match t.input {
                TraceInput::Plain(s) => Ok(implies(r.first().contains(x), s.contains(x))),
                TraceInput::Conditional(_) => {
                    let c = ctx.conditional(p)?;
                    Ok(implies(r.min_worlds(c.a)?.contains(x), c.b.contains(x)))
                }
            }
        }
        P1 | P2 | P3 | P4 | P5 | P6 | P1p | P2p | P3p | P4p => {
            let c = ctx.conditional(p)?;
            let r = ctx.result(p)?;
            let reference = match p {
                P1p | P2p | P3p | P4p => &t.prior,
                _ => ctx.step1(p)?,
            };
            let (x, y) = pair(w);
            let (xm, ym) = (c.material.contains(x), c.material.contains(y));
            let (xn, yn) = (c.anb.contains(x), c.anb.contains(y));
            Ok(match p {
                P1 | P1p if xm && ym => iff(r.le(x, y), reference.le(x, y)),
                P2 | P2p if xn && yn => iff(r.le(x, y), reference.le(x, y)),
                P3 | P3p if xm && yn => implies(reference.lt(x, y), r.lt(x, y)),
                P4 | P4p if xm && yn => implies(reference.le(x, y), r.le(x, y)),
                P5 | P6 if xn && ym => {
                    let s1 = ctx.step1(p)?;
                    if s1.down_set(c.ab)?.contains(y) {
                        true
                    } else if p == P5 {
                        implies(s1.lt(x, y), r.lt(x, y))
                    } else {
                        implies(s1.le(x, y), r.le(x, y))
                    }
                }
                _ => true,
            })
        }
        KI1 | KI2 | KI3 => {
            let c = ctx.conditional(p)?;
            let r = ctx.result(p)?;
            let (x, y) = pair(w);
            let both = |s: WorldSet| s.contains(x) && s.contains(y);
            Ok(match p {
                KI1 if both(c.ab) || both(c.not_a) || both(c.anb) => iff(t.prior.le(x, y), r.le(x, y)),
                KI2 if c.ab.contains(x) && c.anb.contains(y) => implies(t.prior.lt(x, y), r.lt(x, y)),
                KI3 if c.ab.contains(x) && c.anb.contains(y) => implies(t.prior.le(x, y), r.le(x, y)),
                _ => true,
            })
        }
        DE => {
            let x = world(w);
            Ok(iff(ctx.result(p)?.first().contains(x), ctx.step1(p)?.first().contains(x)))
        }
        V => {
            let c = ctx.conditional(p)?;
            let (s1, r) = (ctx.step1(p)?, ctx.result(p)?);
            let (x, y) = pair(w);
            Ok(implies(s1.accepts_conditional(c.a, c.b)?, iff(s1.le(x, y), r.le(x, y))))
        }
        Eq => {
            let op = t.operator.ok_or(Error::MissingTraceField {
                postulate: p.name(),
                field: "operator",
            })?;
            let again = Trace::run(op, &t.prior, t.input)?;
            Ok(again.result == t.result && again.posterior_beliefs() == t.posterior_beliefs())
        }
        Rec => {
            let op = t.elementary(p.name())?;
            let a = ctx.plain(p)?;
            let set = w.set.expect("witness set");
            let r = ctx.result(p)?;
            let again = ctx.memo((0, set), || op.revise(r, set))?;
            Ok(implies(again.first().contains(world(w)), a.contains(world(w))))
        }
        Beta2 => {
            let op = t.elementary(p.name())?;
            let a = ctx.plain(p)?;
            let r = ctx.result(p)?;
            let set = w.set.expect("witness set");
            let (x, y) = pair(w);
            let premise = !t.prior.min_worlds(set)?.contains(x)
                && a.contains(x)
                && !a.contains(y)
                && r.lt(y, x);
            if !premise {
                return Ok(true);
            }
            let by_c = ctx.memo((1, set), || op.revise(&t.prior, set))?;
            Ok(by_c.lt(y, x))
        }
        SR => {
            let op = t.elementary(p.name())?;
            let b = ctx.plain(p)?;
            let r = ctx.result(p)?;
            let sub = w.set.expect("witness set") & ctx.domain;
            if !b.intersects(sub) {
                return Ok(true);
            }
            let restricted = t.prior.restrict(sub)?;
            let revised = ctx.memo((2, sub), || op.revise(&restricted, b))?;
            let minimal = restricted.min_worlds(b)?;
            let (x, y) = pair(w);
            if minimal.contains(x) && !b.contains(y) {
                Ok(revised.lt(x, y))
            } else if minimal.contains(y) && !b.contains(x) {
                Ok(revised.lt(y, x))
            } else {
                Ok(iff(revised.le(x, y), r.le(x, y)))
            }
        }
        DI => {
            let beliefs = t.posterior_beliefs().ok_or(Error::MissingTraceField {
                postulate: p.name(),
                field: "result",
            })?;
            let (big, small) = (w.set.expect("set"), w.set2.expect("subset"));
            let u_big = beliefs.required(big)?;
            Ok(implies(u_big.intersects(small), beliefs.required(small)?.is_subset(u_big)))
        }
    }
}

/// Evaluates `p` at every instance. Among failing world pairs the witness
/// is the one whose two orders disagree most (summed rank gaps), ties going
/// to the first in enumeration order; otherwise the first failure.
pub fn check_postulate(p: PostulateId, trace: &Trace) -> Result<PostulateReport> {
    let ctx = Ctx::new(trace);
    let all = instances(p, &ctx)?;
    let orders = ctx.pair_orders(p);
    let severity = |w: &Witness| -> usize {
        match (orders, w.worlds()) {
            (Some((a, b)), Some((x, y))) => {
                a.rank(x).abs_diff(a.rank(y)) + b.rank(x).abs_diff(b.rank(y))
            }
            _ => 0,
        }
    };
    let mut witness: Option<(usize, Witness)> = None;
    for w in &all {
        if eval(p, &ctx, w)? {
            continue;
        }
        let sev = severity(w);
        if witness.map_or(true, |(best, _)| sev > best) {
            witness = Some((sev, *w));
        }
        if orders.is_none() {
            break;
        }
    }
    Ok(PostulateReport {
        postulate: p,
        holds: witness.is_none(),
        witness: witness.map(|(_, w)| w),
        searched: all.len(),
    })
}

/// Re-evaluates `p` at a reported witness; true iff it is a genuine violation.
pub fn recheck(p: PostulateId, trace: &Trace, witness: &Witness) -> Result<bool> {
    Ok(!eval(p, &Ctx::new(trace), witness)?)
}

/// Belief-level counterparts of P1–P4: compare beliefs after one more
/// revision by every nonempty `C`, starting from the ⊛ result and from step1.
pub fn check_syntactic_counterpart(
    p: PostulateId,
    base: Elementary,
    prior: &Tpo,
    c: &Conditional,
) -> Result<PostulateReport> {
    if !matches!(p, P1 | P2 | P3 | P4) {
        return Err(Error::UnknownPostulate(format!("{p} has no belief-level counterpart here")));
    }
    let trace = circledast(&base, prior, c)?;
    let domain = prior.domain();
    let parts = Parts::new(c, domain);
    let mut searched = 0;
    for set in domain.nonempty_subsets() {
        searched += 1;
        let after_result = base.revise(&trace.result, set)?.first();
        let after_step1 = base.revise(&trace.step1, set)?.first();
        let holds = match p {
            P1 => implies(set.is_subset(parts.material), after_result == after_step1),
            P2 => implies(set.is_subset(parts.anb), after_result == after_step1),
            P3 => implies(
                after_step1.is_subset(parts.material),
                after_result.is_subset(parts.material),
            ),
            _ => implies(
                !after_step1.is_subset(parts.anb),
                !after_result.is_subset(parts.anb),
            ),
        };
        if !holds {
            return Ok(PostulateReport {
                postulate: p,
                holds: false,
                witness: Some(Witness {
                    set: Some(set),
                    ..Default::default()
                }),
                searched,
            });
        }
    }
    Ok(PostulateReport {
        postulate: p,
        holds: true,
        witness: None,
        searched,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditional::Operator;

    fn s(ws: &[usize]) -> WorldSet {
        WorldSet::from_indices(ws.iter().copied())
    }

    fn t(cells: &[&[usize]]) -> Tpo {
        Tpo::new(cells.iter().map(|c| s(c)).collect()).unwrap()
    }

    #[test]
    fn names_parse() {
        for p in PostulateId::ALL {
            assert_eq!(p.name().parse::<PostulateId>().unwrap(), p);
        }
        assert_eq!("P3p".parse::<PostulateId>().unwrap(), P3p);
        assert_eq!("ki2".parse::<PostulateId>().unwrap(), KI2);
        assert!("P7".parse::<PostulateId>().is_err());
    }

    // Worlds 1..=8 at indices 1..=8: A∧B = {1,5}, ¬A = {2,3,6,7}, A∧¬B = {4,8}.
    fn primed_countermodel() -> Trace {
        let c = Conditional::new(s(&[1, 4, 5, 8]), s(&[1, 5])).unwrap();
        Trace::explicit(
            t(&[&[8], &[5, 6, 7], &[4], &[1, 2, 3]]),
            TraceInput::Conditional(c),
            Some(t(&[&[5, 6, 7], &[8], &[1, 2, 3], &[4]])),
            t(&[&[5, 6, 7], &[8], &[4], &[1, 2, 3]]),
        )
    }

    #[test]
    fn primed_postulates_hold_where_unprimed_fail() {
        let trace = primed_countermodel();
        for p in [P3p, P4p, S, P1, P2, C1, C2, C3, C4] {
            assert!(check_postulate(p, &trace).unwrap().holds, "{p}");
        }
        for p in [P3, P4] {
            let r = check_postulate(p, &trace).unwrap();
            assert!(!r.holds);
            let w = r.witness.unwrap();
            assert_eq!(w.worlds(), Some((1, 4)));
            assert!(recheck(p, &trace, &w).unwrap());
        }
    }

    #[test]
    fn identical_step1_and_result_satisfy_p_postulates() {
        let mut trace = primed_countermodel();
        trace.result = trace.step1.clone();
        for p in [P1, P2, P3, P4, P5, P6] {
            assert!(check_postulate(p, &trace).unwrap().holds, "{p}");
        }
    }

    #[test]
    fn missing_fields_are_reported() {
        let mut trace = primed_countermodel();
        trace.step1 = None;
        assert!(matches!(
            check_postulate(P1, &trace),
            Err(Error::MissingTraceField { field: "step1", .. })
        ));
        assert!(matches!(
            check_postulate(Rec, &trace),
            Err(Error::MissingTraceField { .. })
        ));
    }

    #[test]
    fn rec_separates_lexicographic_from_natural() {
        // natural puts 0 first, then B = {1,2} picks 2 over 1
        let prior = t(&[&[2], &[0], &[1]]);
        let lex = Trace::run(
            Operator::Elementary(Elementary::Lexicographic),
            &prior,
            TraceInput::Plain(s(&[0, 1])),
        )
        .unwrap();
        assert!(check_postulate(Rec, &lex).unwrap().holds);
        let nat = Trace::run(
            Operator::Elementary(Elementary::Natural),
            &prior,
            TraceInput::Plain(s(&[0, 1])),
        )
        .unwrap();
        let r = check_postulate(Rec, &nat).unwrap();
        assert!(!r.holds);
        assert!(recheck(Rec, &nat, &r.witness.unwrap()).unwrap());
    }

    #[test]
    fn elementary_operators_satisfy_dp_beta2_and_sr() {
        let prior = t(&[&[3], &[0, 2], &[1]]);
        for op in Elementary::ALL {
            for input in prior.domain().nonempty_subsets() {
                let trace = Trace::run(Operator::Elementary(op), &prior, TraceInput::Plain(input)).unwrap();
                for p in [C1, C2, C3, C4, S, Beta2, SR, Eq, DI] {
                    assert!(check_postulate(p, &trace).unwrap().holds, "{op} {p} {input:?}");
                }
            }
        }
    }

    #[test]
    fn syntactic_counterparts_hold_for_circledast() {
        let prior = t(&[&[8], &[7], &[6], &[4, 5], &[1, 2, 3]]);
        let c = Conditional::new(s(&[1, 3, 4, 8]), s(&[1, 4])).unwrap();
        for base in Elementary::ALL {
            for p in [P1, P2, P3, P4] {
                let r = check_syntactic_counterpart(p, base, &prior, &c).unwrap();
                assert!(r.holds, "{base} {p}");
                assert_eq!(r.searched, 255);
            }
        }
    }
}
