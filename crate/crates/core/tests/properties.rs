use proptest::prelude::*;

use condrev::logic::AtomId;
use condrev::oracle::{check_postulate, restriction_identity, PostulateId, Trace, TraceInput};
use condrev::{
    circledast, natural_revise, Conditional, ConditionalOperator, Elementary, Formula, Operator, Revise,
    Tpo, Universe, Vocabulary, WorldSet,
};

fn universe() -> Universe {
    Universe::all_valuations(Vocabulary::from_names(&["p", "q", "r"]).unwrap()).unwrap()
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::Top),
        Just(Formula::Bottom),
        (0..3usize).prop_map(|i| Formula::Atom(AtomId(i))),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::implies(l, r)),
        ]
    })
}

fn tpo_over(n: usize) -> impl Strategy<Value = Tpo> {
    prop::collection::vec(0..n, n).prop_map(move |ranks| Tpo::from_keys(WorldSet::full(n), |w| ranks[w]))
}

fn tpo() -> impl Strategy<Value = Tpo> {
    (1..=6usize).prop_flat_map(tpo_over)
}

fn tpo_pair() -> impl Strategy<Value = (Tpo, Tpo)> {
    (1..=6usize).prop_flat_map(|n| (tpo_over(n), tpo_over(n)))
}

fn tpo_triple() -> impl Strategy<Value = (Tpo, Tpo, Tpo)> {
    (1..=6usize).prop_flat_map(|n| (tpo_over(n), tpo_over(n), tpo_over(n)))
}

fn tpo_and_set() -> impl Strategy<Value = (Tpo, WorldSet)> {
    (1..=6usize).prop_flat_map(|n| (tpo_over(n), 1..(1u64 << n)).prop_map(|(t, s)| (t, WorldSet::from_bits(s))))
}

/// A prior and a conditional `A ⇒ B` with `A ∧ B` nonempty.
fn scenario() -> impl Strategy<Value = (Tpo, Conditional)> {
    (1..=6usize).prop_flat_map(|n| {
        (tpo_over(n), 1..(1u64 << n), 0..(1u64 << n)).prop_map(|(t, a, extra)| {
            let a = WorldSet::from_bits(a);
            let ab = a.first().map(WorldSet::singleton).unwrap() | (WorldSet::from_bits(extra) & a);
            (t, Conditional::new(a, ab).unwrap())
        })
    })
}

fn pairs(d: WorldSet) -> impl Iterator<Item = (usize, usize)> {
    d.iter().flat_map(move |x| d.iter().map(move |y| (x, y)))
}

/// Elementary operators restated as relations between worlds.
fn relational(op: Elementary, t: &Tpo, s: WorldSet) -> Tpo {
    let min = t.min_worlds(s).unwrap();
    Tpo::from_relation(t.domain(), |x, y| match op {
        Elementary::Natural => min.contains(x) || (!min.contains(y) && t.le(x, y)),
        Elementary::Restrained => {
            if min.contains(x) || min.contains(y) {
                min.contains(x)
            } else {
                t.lt(x, y) || (t.equiv(x, y) && (s.contains(x) || !s.contains(y)))
            }
        }
        Elementary::Lexicographic => match (s.contains(x), s.contains(y)) {
            (true, false) => true,
            (false, true) => false,
            _ => t.le(x, y),
        },
    })
    .expect("relation is a total preorder")
}

proptest! {
    #[test]
    fn formulas_round_trip_through_text(f in formula()) {
        let u = universe();
        let text = f.display(u.vocabulary()).to_string();
        prop_assert_eq!(u.parse_formula(&text).unwrap(), f);
    }

    #[test]
    fn models_commute_with_connectives(f in formula(), g in formula()) {
        let u = universe();
        let all = u.all();
        let (mf, mg) = (u.models(&f), u.models(&g));
        prop_assert_eq!(u.models(&Formula::and(f.clone(), g.clone())), mf & mg);
        prop_assert_eq!(u.models(&Formula::or(f.clone(), g.clone())), mf | mg);
        prop_assert_eq!(u.models(&Formula::not(f.clone())), mf.complement_in(all));
        prop_assert_eq!(u.models(&Formula::implies(f.clone(), g.clone())), mf.complement_in(all) | mg);
        prop_assert_eq!(u.entails(&f, &g), mf.is_subset(mg));
        prop_assert!(u.are_equivalent(&f, &f));
    }

    #[test]
    fn kemeny_is_a_metric((a, b, c) in tpo_triple()) {
        let d = |x: &Tpo, y: &Tpo| x.kemeny_distance(y).unwrap();
        prop_assert_eq!(d(&a, &b) == 0, a == b);
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
    }

    #[test]
    fn kemeny_counts_hard_twice((a, b) in tpo_pair()) {
        let rep = a.conflicts(&b).unwrap();
        prop_assert!(rep.hard.iter().all(|p| !rep.soft.contains(p)));
        prop_assert_eq!(a.kemeny_distance(&b).unwrap(), 2 * rep.hard.len() + rep.soft.len());
    }

    #[test]
    fn flatness_is_a_partial_order((a, b, c) in tpo_triple()) {
        let ge = |x: &Tpo, y: &Tpo| x.flatness_at_least(y).unwrap();
        prop_assert!(ge(&a, &a));
        if ge(&a, &b) && ge(&b, &a) {
            prop_assert_eq!(&a, &b);
        }
        if ge(&a, &b) && ge(&b, &c) {
            prop_assert!(ge(&a, &c));
        }
    }

    #[test]
    fn lex_revision_by_set_clauses((t, s) in tpo_and_set()) {
        let r = t.lex_revise_by_set(s);
        for (x, y) in pairs(t.domain()) {
            match (s.contains(x), s.contains(y)) {
                (true, false) => prop_assert!(r.lt(x, y)),
                (false, true) => prop_assert!(r.lt(y, x)),
                _ => prop_assert_eq!(r.le(x, y), t.le(x, y)),
            }
        }
    }

    #[test]
    fn elementary_operators_match_their_relations((t, s) in tpo_and_set()) {
        for op in Elementary::ALL {
            prop_assert_eq!(op.revise(&t, s).unwrap(), relational(op, &t, s), "{}", op);
        }
    }

    #[test]
    fn elementary_operators_satisfy_dp((t, s) in tpo_and_set()) {
        for op in Elementary::ALL {
            let trace = Trace::run(Operator::Elementary(op), &t, TraceInput::Plain(s)).unwrap();
            for p in [PostulateId::C1, PostulateId::C2, PostulateId::C3, PostulateId::C4, PostulateId::S] {
                prop_assert!(check_postulate(p, &trace).unwrap().holds, "{} {}", op, p);
            }
            prop_assert_eq!(trace.result.unwrap().first(), t.min_worlds(s).unwrap());
        }
    }

    #[test]
    fn accepting_a_tautologous_antecedent_is_belief(t in tpo(), s in 1u64..64) {
        let s = WorldSet::from_bits(s) & t.domain();
        if !s.is_empty() {
            prop_assert_eq!(t.accepts_conditional(t.domain(), s).unwrap(), t.believes(s));
        }
    }

    #[test]
    fn circledast_postulates((prior, c) in scenario()) {
        use PostulateId::*;
        for base in Elementary::ALL {
            let op = Operator::Conditional(ConditionalOperator::Circledast(base));
            let trace = Trace::run(op, &prior, TraceInput::Conditional(c)).unwrap();
            for p in [S, P1, P2, P3, P4, DE, V, KI1, KI2, KI3] {
                prop_assert!(check_postulate(p, &trace).unwrap().holds, "{} {}", base, p);
            }
            let (lhs, rhs) = restriction_identity(base, &prior, &c).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn tautologous_antecedent_reduces_to_natural_on_step1((prior, c) in scenario()) {
        let domain = prior.domain();
        let c = Conditional::new(domain, c.conjunction()).unwrap();
        for base in Elementary::ALL {
            let t = circledast(&base, &prior, &c).unwrap();
            prop_assert_eq!(&t.result, &natural_revise(&t.step1, c.consequent()).unwrap());
        }
    }
}
