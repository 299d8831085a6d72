mod common;

use clause_cycles::cycles::{
    cycle_of_inductive_formula, inductive_formula_of_cycle, inductivity_over_empty_theory, reduce_external_offset,
    reduce_param_cycle, verify_cycle, verify_param_cycle, verify_param_refutation, verify_refutation, ParamCycleSpec,
    Status,
};
use clause_cycles::entailment::{check_unsat, Budget, Inference, Verdict};
use clause_cycles::models::StructureId;
use clause_cycles::syntax::{cls_all, instantiate_eta, parse_clause_set, parse_formula, ClauseSet, Language, Term};
use clause_cycles::theories::{axioms_b, example_cycle_c, rule_closure_certificates, RuleKind, Theory};
use common::cycle_corpus;

fn la() -> Language {
    Language::default()
}

fn set(text: &str) -> ClauseSet {
    parse_clause_set(text, &la()).unwrap()
}

fn with_b(text: &str) -> ClauseSet {
    cls_all(axioms_b().axioms()).unwrap().union(&set(text))
}

#[test]
fn example_cycle_refutes_itself() {
    let c = example_cycle_c();
    let cert = verify_refutation(&c, &c, &Budget::default()).unwrap();
    assert_eq!(cert.valid, Status::Yes);
    let base = &cert.report.c2[0];
    let trace = base.trace().unwrap();
    let grounds_at_zero = trace.refutations[0].steps.iter().any(|s| match &s.inference {
        Inference::Instance { substitution, .. } => substitution.values().any(|t| *t == Term::zero()),
        _ => false,
    });
    assert!(grounds_at_zero);
    for v in cert.report.verdicts().chain([&cert.c3]) {
        v.trace().unwrap().replay().unwrap();
    }
}

#[test]
fn eta_equals_zero_is_not_a_cycle() {
    let report = verify_cycle(&set("[eta = 0]"), &Budget::default()).unwrap();
    assert!(report.c2[0].is_refuted());
    assert_eq!(report.is_cycle, Status::No);
}

#[test]
fn b_does_not_entail_the_example_cycle() {
    let c = example_cycle_c();
    let d = cls_all(axioms_b().axioms()).unwrap();
    let cert = verify_refutation(&d, &c, &Budget::default()).unwrap();
    assert_eq!(cert.c3.evidence().unwrap().structure, StructureId::N);
    assert_eq!(cert.valid, Status::No);
}

#[test]
fn plain_spec_coincides_with_plain_cycles() {
    let c = example_cycle_c();
    let budget = Budget::default();
    assert_eq!(verify_param_cycle(&c, ParamCycleSpec::PLAIN, &budget).unwrap(), verify_cycle(&c, &budget).unwrap());
}

#[test]
fn step_two_cycle_and_its_reduction() {
    let c = example_cycle_c();
    let budget = Budget::default();
    let report = verify_param_cycle(&c, ParamCycleSpec::new(2, 0, 0).unwrap(), &budget).unwrap();
    assert_eq!(report.is_cycle, Status::Yes);
    assert_eq!(report.c2.len(), 2);
    let reduced = reduce_param_cycle(&c, 2, 0).unwrap();
    assert!(reduced.contains_eta());
    assert_eq!(verify_cycle(&reduced, &budget).unwrap().is_cycle, Status::Yes);
}

#[test]
fn internal_offset_is_removed_by_shifting() {
    let c = example_cycle_c();
    let budget = Budget::default();
    let spec = ParamCycleSpec::new(1, 1, 0).unwrap();
    assert_eq!(verify_param_cycle(&c, spec, &budget).unwrap().is_cycle, Status::Yes);
    let reduced = reduce_param_cycle(&c, 1, 1).unwrap();
    assert_eq!(reduced, instantiate_eta(&c, &Term::succ(Term::eta())));
    assert_eq!(verify_cycle(&reduced, &budget).unwrap().is_cycle, Status::Yes);
}

#[test]
fn external_offset_refutation_reduces_to_plain_refutation() {
    let c = example_cycle_c();
    let budget = Budget::default();
    let spec = ParamCycleSpec::new(1, 0, 1).unwrap();
    let cert = verify_param_refutation(&c, &c, spec, &budget).unwrap();
    assert_eq!(cert.valid, Status::Yes);
    assert_eq!(cert.base.len(), 1);
    let plain = reduce_external_offset(&c, &c, 1).unwrap();
    assert_eq!(verify_refutation(&c, &plain, &budget).unwrap().valid, Status::Yes);
}

#[test]
fn external_offset_two_with_fixed_point_descent() {
    let budget = Budget::default();
    // D(0) and D(1) are unsatisfiable; from 2 on, D descends through the successor fixed point.
    let d = with_b("[eta != 0]\n[eta != s(0)]\n[eta = s(eta)]");
    let cycle = with_b("[eta = s(eta)]");
    let spec = ParamCycleSpec::new(1, 0, 2).unwrap();
    let cert = verify_param_refutation(&d, &cycle, spec, &budget).unwrap();
    assert_eq!(cert.valid, Status::Yes);
    let plain = reduce_external_offset(&d, &cycle, 2).unwrap();
    assert_eq!(verify_refutation(&d, &plain, &budget).unwrap().valid, Status::Yes);
}

#[test]
fn zero_external_offset_keeps_the_cycle() {
    let c = example_cycle_c();
    assert!(reduce_external_offset(&c, &c, 0).unwrap().equivalent_up_to_renaming(&c));
}

#[test]
fn characterization_round_trip() {
    let budget = Budget::default();
    for (name, c) in cycle_corpus() {
        assert_eq!(verify_cycle(&c, &budget).unwrap().is_cycle, Status::Yes, "{name} is a cycle");
        let cert = inductive_formula_of_cycle(&c).unwrap();
        let (base, step) = inductivity_over_empty_theory(&cert.formula, &cert.var, &budget).unwrap();
        assert!(base.is_valid() && step.is_valid(), "{name}: {base} / {step}");
        let back = cycle_of_inductive_formula(&cert.formula, &budget).unwrap();
        assert_eq!(verify_cycle(&back, &budget).unwrap().is_cycle, Status::Yes, "{name} round trip");
        if c.contains_eta() {
            assert!(back.equivalent_up_to_renaming(&c), "{name}: {back}");
        }
    }
}

#[test]
fn refutations_are_simulated_by_the_eta_rule() {
    let budget = Budget::default();
    for (name, c) in cycle_corpus().into_iter().filter(|(_, c)| c.contains_eta()) {
        let cert = inductive_formula_of_cycle(&c).unwrap();
        let (functions, predicates) = c.signature();
        let mut lang = Language::base();
        lang.functions.extend(functions.into_iter().filter(|(f, _)| f != "eta"));
        lang.predicates = predicates;
        let theory =
            rule_closure_certificates(&Theory::empty(lang), &[cert], RuleKind::RindParameterFreeEta, &budget).unwrap();
        let combined = theory.clauses().unwrap().union(&c);
        assert!(check_unsat(&combined, &budget).unwrap().is_valid(), "{name}");
    }
}

#[test]
fn inductive_formula_degenerate_cases() {
    let budget = Budget::default();
    let closed = inductive_formula_of_cycle(&set("[0 != 0]")).unwrap();
    assert!(!closed.formula.free_vars().contains(&closed.var));
    let bad = inductive_formula_of_cycle(&set("[eta = 0]")).unwrap();
    let (base, _) = inductivity_over_empty_theory(&bad.formula, &bad.var, &budget).unwrap();
    assert!(!base.is_valid());
    let trivial = parse_formula("0 = 0", &la()).unwrap();
    let c = cycle_of_inductive_formula(&trivial, &budget).unwrap();
    assert_eq!(c, set("[0 != 0]"));
    let report = verify_cycle(&c, &budget).unwrap();
    assert!(report.c1.is_valid() && report.c2[0].is_valid());
    let not_existential = parse_formula("forall y. x = y", &la()).unwrap();
    assert!(cycle_of_inductive_formula(&not_existential, &budget).is_err());
    assert!(matches!(
        cycle_of_inductive_formula(&parse_formula("x = 0", &la()).unwrap(), &budget),
        Err(clause_cycles::cycles::CycleError::NotInductive { .. })
    ));
}

#[test]
fn reports_serialize() {
    let c = set("[eta != eta]");
    let report = verify_cycle(&c, &Budget::default()).unwrap();
    let json = serde_json::to_string(&report).unwrap();
    let back: clause_cycles::cycles::CycleReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, report);
    assert!(matches!(report.c1, Verdict::Valid(_)));
}
