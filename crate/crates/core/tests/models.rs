mod common;

use clause_cycles::models::*;
use clause_cycles::normalize::to_components;
use clause_cycles::syntax::{parse_formula, parse_term, Formula, Language, Term, ETA};
use clause_cycles::theories::{axiom_b, axioms_b, axioms_p, axioms_v, clause_set_p};
use common::random_term;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn el(ty: u64, v: i64) -> ModelElement {
    ModelElement::new(ty, v)
}

fn t(s: &str) -> Term {
    parse_term(s, &Language::default().with_function("f", 1)).unwrap()
}

fn env(pairs: &[(&str, ModelElement)]) -> Assignment {
    pairs.iter().map(|(x, e)| (x.to_string(), *e)).collect()
}

#[test]
fn uparrow_and_truncated_subtraction() {
    assert_eq!(uparrow(0, 5), 5);
    assert_eq!(uparrow(3, 5), 3);
    assert_eq!(uparrow(0, 0), 0);
    assert_eq!(trunc_sub(5, 3), 2);
    assert_eq!(trunc_sub(3, 5), 0);
    assert_eq!(trunc_sub(0, 0), 0);
}

#[test]
fn uparrow_is_associative_and_commutative_on_zero_one() {
    for a in 0..=10 {
        for b in 0..=10 {
            for c in 0..=10 {
                assert_eq!(uparrow(uparrow(a, b), c), uparrow(a, uparrow(b, c)));
            }
        }
    }
    for a in 0..=1 {
        for b in 0..=1 {
            assert_eq!(uparrow(a, b), uparrow(b, a));
        }
    }
}

#[test]
fn evaluation_tables() {
    let m1 = StructureId::M(1);
    let e = env(&[("a", el(0, 2)), ("b", el(1, 3))]);
    assert_eq!(m1.eval_term(&e, &t("a + b")).unwrap(), el(1, 5));
    assert_eq!(m1.eval_term(&e, &t("p(0)")).unwrap(), el(0, 0));
    let e = env(&[("z", el(1, 0))]);
    assert_eq!(m1.eval_term(&e, &t("p(z)")).unwrap(), el(1, -1));
    let v = StructureId::PStruct.eval_term(&Assignment::new(), &t("f(eta)")).unwrap();
    assert_eq!(v, el(1, 0));
    assert!(!StructureId::PStruct.holds_predicate("P", &[v]).unwrap());
    assert!(matches!(m1.eval_term(&Assignment::new(), &t("x")), Err(ModelError::Unbound(_))));
    assert!(matches!(m1.eval_term(&Assignment::new(), &t("f(0)")), Err(ModelError::ForeignSymbol { .. })));
    assert!(matches!(m1.eval_term(&env(&[("x", el(3, 0))]), &t("s(x)")), Err(ModelError::OutsideDomain { .. })));
}

#[test]
fn bounded_checks() {
    let n = parse_formula("s(x) = x", &Language::default()).unwrap();
    let r = holds_bounded(StructureId::N, &n, &Assignment::new(), &Bounds::new(5, 5)).unwrap();
    assert_eq!(r.outcome, Outcome::Violated { clause: None, assignment: vec![("x".into(), el(0, 0))] });

    let bounds = Bounds { value: 20, type_cap: 1, witness: 15 };
    for ax in axioms_b().axioms() {
        assert!(holds_bounded(StructureId::M(1), ax, &Assignment::new(), &bounds).unwrap().holds(), "{ax}");
    }
    let b2 = axiom_b(2);
    let r = holds_bounded(StructureId::M(2), b2.axioms().next().unwrap(), &Assignment::new(), &bounds).unwrap();
    assert_eq!(
        r.outcome,
        Outcome::Violated { clause: None, assignment: vec![("x".into(), el(1, 0)), ("y".into(), el(2, 0))] }
    );
}

#[test]
fn m1_satisfies_the_extra_axioms_except_cancellation() {
    let bounds = Bounds { value: 12, type_cap: 1, witness: 15 };
    let check = |i| {
        let th = axiom_b(i);
        let ax = th.axioms().next().unwrap().clone();
        holds_bounded(StructureId::M(1), &ax, &Assignment::new(), &bounds).unwrap()
    };
    for i in 1..=3 {
        assert!(check(i).holds(), "B{i}");
    }
    // Cancellation fails: 0^[1] + 0^[0] = 0^[1] + 0^[1].
    let r = check(4);
    assert_eq!(
        r.outcome,
        Outcome::Violated {
            clause: None,
            assignment: vec![("x".into(), el(1, 0)), ("y".into(), el(0, 0)), ("z".into(), el(1, 0))]
        }
    );
    for ax in axioms_v(5).axioms() {
        assert!(holds_bounded(StructureId::M(1), ax, &Assignment::new(), &bounds).unwrap().holds());
    }
}

#[test]
fn pair_structure_has_an_element_without_parity() {
    let r = shoenfield_oddeven_check(10).unwrap();
    assert!(r.verified(), "{:?}", r.axioms.iter().filter(|(_, r)| !r.holds()).collect::<Vec<_>>());
    assert_eq!(parity_witness(el(0, 1), 3), Some((Parity::Odd, el(0, 0))));
    assert_eq!(parity_witness(el(2, 0), 3), Some((Parity::Even, el(1, 0))));
}

#[test]
fn predicate_structure_satisfies_its_theory() {
    let bounds = Bounds::new(10, 10);
    for ax in axioms_p().axioms() {
        assert!(holds_bounded(StructureId::PStruct, ax, &Assignment::new(), &bounds).unwrap().holds(), "{ax}");
    }
    let params = env(&[(ETA, el(0, 0))]);
    // The structure is a model of the theory together with the negated goal.
    assert!(holds_bounded(StructureId::PStruct, &clause_set_p(), &params, &bounds).unwrap().holds());
}

#[test]
fn cancellation_counterexamples() {
    for (k, n, m) in [(0, 1, 2), (1, 1, 2), (0, 1, 3), (2, 2, 5)] {
        let r = counterexample_e(k, n, m).unwrap();
        assert_eq!(r.x, el(1, k as i64));
        assert!(r.verified());
        // n·k + (m-n)·k = m·k in the value coordinate.
        assert_eq!(r.lhs, el(1, (m * k) as i64));
    }
    assert!(counterexample_e(0, 2, 2).is_err());
}

#[test]
fn induction_fails_for_the_cancellation_formula() {
    let r = induction_failure_witness(1, 5, 15).unwrap();
    assert!(r.standard.iter().all(|(_, h)| *h));
    assert!(r.axiom_violated());
    assert_eq!(r.conclusion_fails_at, Some(el(1, 0)));
    let r = induction_failure_witness(2, 3, 15).unwrap();
    assert!(r.axiom_violated());
    let at = r.nonstandard.iter().find(|(x, _)| *x == el(2, 3)).unwrap();
    assert!(at.1.is_none());
    assert!(induction_failure_witness(0, 3, 15).is_err());
}

#[test]
fn embedding_commutes_with_the_operations() {
    let m1 = StructureId::M(1);
    for a in -10..=10 {
        let x = embed_iota(1, 1, a).unwrap();
        assert_eq!(m1.succ(x).unwrap(), embed_iota(1, 1, a + 1).unwrap());
        assert_eq!(m1.pred(x).unwrap(), embed_iota(1, 1, a - 1).unwrap());
        for b in -10..=10 {
            assert_eq!(m1.plus(x, embed_iota(1, 1, b).unwrap()).unwrap(), embed_iota(1, 1, a + b).unwrap());
        }
    }
}

#[test]
fn embedding_preserves_existential_solutions() {
    // 0-free: the integer solutions of s(x) = y + y map to solutions in M_1.
    let phi = parse_formula("exists y. s(x) = y + y", &Language::default()).unwrap();
    let (ys, body) = match &phi {
        Formula::Exists(y, b) => (vec![y.clone()], (**b).clone()),
        _ => unreachable!(),
    };
    assert_eq!(to_components(&phi).unwrap().len(), 1);
    let bounds = Bounds { value: 12, type_cap: 1, witness: 12 };
    for x in (-9..=9).filter(|x: &i64| (x + 1) % 2 == 0) {
        let w =
            find_witness(StructureId::M(1), &ys, &body, &env(&[("x", embed_iota(1, 1, x).unwrap())]), &bounds).unwrap();
        assert!(w.is_some(), "{x}");
    }
}

#[test]
fn standard_part_agrees_with_n() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let vars: Vec<String> = vec!["a".into(), "b".into()];
    for _ in 0..300 {
        let term = random_term(&mut rng, &vars, 3, true);
        let e = env(&[("a", el(0, 4)), ("b", el(0, 7))]);
        let n = StructureId::N.eval_term(&e, &term).unwrap();
        for s in [StructureId::M(1), StructureId::M(2), StructureId::Shoenfield] {
            assert_eq!(s.eval_term(&e, &term).unwrap(), n, "{term} in {s}");
        }
    }
}

proptest! {
    #[test]
    fn evaluation_stays_in_the_domain(seed in 0u64..10_000, a in -8i64..8, ta in 0u64..3, b in -8i64..8, tb in 0u64..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vars: Vec<String> = vec!["a".into(), "b".into()];
        let term = random_term(&mut rng, &vars, 3, true);
        for s in [StructureId::M(1), StructureId::M(2), StructureId::Shoenfield, StructureId::Z] {
            let fix = |ty: u64, v: i64| {
                let ty = if s == StructureId::Z { 0 } else { ty.min(match s { StructureId::M(i) => i, _ => 2 }) };
                el(ty, if ty == 0 && s != StructureId::Z { v.abs() } else { v })
            };
            let e = env(&[("a", fix(ta, a)), ("b", fix(tb, b))]);
            let v = s.eval_term(&e, &term).unwrap();
            prop_assert!(s.contains(&v), "{} in {}", v, s);
        }
    }
}
