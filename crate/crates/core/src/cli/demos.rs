use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cycles::{
    reduce_external_offset, reduce_param_cycle, verify_cycle, verify_param_cycle, verify_param_refutation,
    verify_refutation, ParamCycleSpec, Status,
};
use crate::descent::descent_for_formula;
use crate::entailment::{Budget, Inference, Verdict};
use crate::models::{
    counterexample_e, holds_bounded, induction_failure_witness, shoenfield_oddeven_check, Assignment, Bounds,
    CheckReport, ModelElement, Outcome, StructureId,
};
use crate::normalize::shift_and_strip;
use crate::syntax::{eval_ground_nat, parse_formula, Formula, Language, Term, ETA};
use crate::theories::{
    axiom_b, axioms_b, clause_set_e, clause_set_p, e_formula, e_sides, example_cycle_c, is_inductive,
};

use super::CliError;

/// A named demonstration with the status it is expected to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DemoSpec {
    pub name: &'static str,
    pub shows: &'static str,
    pub expected: Status,
}

pub const MANIFEST: [DemoSpec; 11] = [
    DemoSpec { name: "cycle-refutation", shows: "the parity cycle refutes itself", expected: Status::Yes },
    DemoSpec { name: "step-two-cycle", shows: "a step-two cycle reduces to a plain cycle", expected: Status::Yes },
    DemoSpec {
        name: "external-offset",
        shows: "a refutation with external offset 1 reduces to a plain refutation",
        expected: Status::Yes,
    },
    DemoSpec {
        name: "predicate-unrefuted",
        shows: "the predicate structure satisfies the clauses of P and not P(f(eta))",
        expected: Status::No,
    },
    DemoSpec {
        name: "cancellation-unrefuted",
        shows: "M_1 satisfies the weak cancellation clause sets, so no cycle refutes them",
        expected: Status::No,
    },
    DemoSpec { name: "cancellation-in-n", shows: "weak cancellation holds in N on [0..50]", expected: Status::Yes },
    DemoSpec {
        name: "open-induction-cancellation",
        shows: "x + 0 = y + x -> y = 0 is B-inductive in x",
        expected: Status::Yes,
    },
    DemoSpec { name: "induction-failure", shows: "an existential induction axiom fails in M_1", expected: Status::No },
    DemoSpec { name: "commutativity-failure", shows: "M_2 satisfies B, B1 and B3 but not B2", expected: Status::No },
    DemoSpec {
        name: "parity-failure",
        shows: "the pair structure has an element that is neither even nor odd",
        expected: Status::No,
    },
    DemoSpec {
        name: "descent",
        shows: "a stripped existential formula has a descending integer solution sequence",
        expected: Status::Yes,
    },
];

pub const CANCELLATION_PARAMS: [(u64, u64, u64); 4] = [(0, 1, 2), (1, 1, 2), (0, 1, 3), (2, 2, 5)];

/// Demo parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DemoOptions {
    pub budget: Budget,
    /// Value bound of bounded model checks.
    pub bound: i64,
    pub witness_bound: i64,
    /// Weak cancellation parameters `(k, n, m)`; `None` runs the default set.
    pub cancellation: Option<(u64, u64, u64)>,
}

impl Default for DemoOptions {
    fn default() -> Self {
        DemoOptions { budget: Budget::from_env(), bound: 30, witness_bound: 15, cancellation: None }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DemoReport {
    pub name: String,
    pub shows: String,
    pub expected: Status,
    pub status: Status,
    pub matches: bool,
    pub seconds: f64,
    pub details: Vec<String>,
    pub data: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub demos: Vec<DemoReport>,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn all_match(&self) -> bool {
        self.demos.iter().all(|d| d.matches)
    }

    /// `0` if every demo matches, `2` if a mismatch involves an undetermined
    /// status and no definite mismatch exists, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        let bad: Vec<&DemoReport> = self.demos.iter().filter(|d| !d.matches).collect();
        if bad.is_empty() {
            0
        } else if bad.iter().all(|d| d.status == Status::Undetermined) {
            2
        } else {
            1
        }
    }
}

struct Run {
    status: Status,
    details: Vec<String>,
    data: Value,
}

fn from_check(r: &CheckReport) -> Status {
    match r.outcome {
        Outcome::HoldsAtBounds => Status::Yes,
        Outcome::Violated { .. } => Status::No,
        Outcome::Unknown { .. } => Status::Undetermined,
    }
}

fn verdicts(label: &str, vs: &[&Verdict]) -> String {
    format!("{label}: {}", vs.iter().map(|v| v.label()).collect::<Vec<_>>().join(", "))
}

fn cycle_refutation(o: &DemoOptions) -> Result<Run, CliError> {
    let c = example_cycle_c();
    let cert = verify_refutation(&c, &c, &o.budget)?;
    let grounds_at_zero = cert.report.c2[0].trace().is_some_and(|t| {
        t.refutations.iter().flat_map(|r| r.steps.iter()).any(|s| match &s.inference {
            Inference::Instance { substitution, .. } => substitution.values().any(|t| *t == Term::zero()),
            _ => false,
        })
    });
    let details = vec![
        format!("C = {}", c.to_string().trim_end().replace('\n', " ")),
        verdicts("C(s(eta)) |= C(eta)", &[&cert.report.c1]),
        verdicts("C(0) |= false", &[&cert.report.c2[0]]),
        verdicts("D |= C", &[&cert.c3]),
        format!("the base refutation instantiates a clause variable with 0: {grounds_at_zero}"),
    ];
    let data = json!({ "certificate": cert, "grounds_at_zero": grounds_at_zero });
    Ok(Run { status: cert.valid, details, data })
}

fn step_two_cycle(o: &DemoOptions) -> Result<Run, CliError> {
    let c = example_cycle_c();
    let report = verify_param_cycle(&c, ParamCycleSpec::new(2, 0, 0)?, &o.budget)?;
    let reduced = reduce_param_cycle(&c, 2, 0)?;
    let plain = verify_cycle(&reduced, &o.budget)?;
    let details = vec![
        format!("(2,0)-cycle: {}", report.is_cycle),
        format!("reduced cycle: {} clauses, plain cycle: {}", reduced.len(), plain.is_cycle),
    ];
    let status = report.is_cycle.and(plain.is_cycle);
    Ok(Run { status, details, data: json!({ "param": report, "reduced": reduced, "plain": plain }) })
}

fn external_offset(o: &DemoOptions) -> Result<Run, CliError> {
    let c = example_cycle_c();
    let cert = verify_param_refutation(&c, &c, ParamCycleSpec::new(1, 0, 1)?, &o.budget)?;
    let plain = reduce_external_offset(&c, &c, 1)?;
    let reduced = verify_refutation(&c, &plain, &o.budget)?;
    let details = vec![
        format!("refutation with offset 1: {}", cert.valid),
        format!("reduced plain refutation: {}", reduced.valid),
    ];
    Ok(Run { status: cert.valid.and(reduced.valid), details, data: json!({ "offset": cert, "reduced": reduced }) })
}

fn bounds(o: &DemoOptions, type_cap: u64) -> Bounds {
    Bounds { value: o.bound, type_cap, witness: o.witness_bound }
}

fn predicate_unrefuted(o: &DemoOptions) -> Result<Run, CliError> {
    let s = StructureId::PStruct;
    let params: Assignment = [(ETA.to_string(), s.zero())].into_iter().collect();
    let check = holds_bounded(s, &clause_set_p(), &params, &bounds(o, 1))?;
    let f_eta = s.eval_term(&params, &Term::app("f", vec![Term::eta()]))?;
    let in_p = s.holds_predicate("P", &[f_eta])?;
    let status = match (from_check(&check), in_p) {
        (Status::Yes, false) => Status::No,
        (Status::Undetermined, _) => Status::Undetermined,
        _ => Status::Yes,
    };
    let details = vec![format!("{check}"), format!("f(eta) = ({}, {}), in P: {in_p}", f_eta.ty, f_eta.value)];
    Ok(Run { status, details, data: json!({ "check": check, "f_eta": f_eta, "in_p": in_p }) })
}

fn cancellation_params(o: &DemoOptions) -> Vec<(u64, u64, u64)> {
    o.cancellation.map_or_else(|| CANCELLATION_PARAMS.to_vec(), |p| vec![p])
}

fn cancellation_unrefuted(o: &DemoOptions) -> Result<Run, CliError> {
    let s = StructureId::M(1);
    let mut status = Status::No;
    let mut details = Vec::new();
    let mut data = Vec::new();
    for (k, n, m) in cancellation_params(o) {
        let cex = counterexample_e(k, n, m)?;
        let params: Assignment = [(ETA.to_string(), cex.x)].into_iter().collect();
        let check = holds_bounded(s, &clause_set_e(k, n, m)?, &params, &bounds(o, 1))?;
        let run = match (from_check(&check), cex.verified()) {
            (Status::Yes, true) => Status::No,
            (Status::Undetermined, _) => Status::Undetermined,
            _ => Status::Yes,
        };
        status = status.and(run);
        details.push(format!(
            "E_{{{k},{n},{m}}} with eta = {}: {check}; {} = {} and x != {}",
            cex.x, cex.lhs, cex.rhs, cex.numeral_k
        ));
        data.push(json!({ "k": k, "n": n, "m": m, "check": check, "counterexample": cex }));
    }
    Ok(Run { status, details, data: Value::Array(data) })
}

fn cancellation_in_n(o: &DemoOptions) -> Result<Run, CliError> {
    let mut status = Status::Yes;
    let mut details = Vec::new();
    for (k, n, m) in cancellation_params(o) {
        e_formula(k, n, m)?;
        let failures: Vec<u64> = (0..=50u64)
            .filter(|&x| {
                let (lhs, rhs) = e_sides(k, n, m, &crate::syntax::numeral(x)).expect("valid parameters");
                let antecedent = eval_ground_nat(&lhs).ok() == eval_ground_nat(&rhs).ok();
                antecedent && x != k
            })
            .collect();
        if !failures.is_empty() {
            status = Status::No;
        }
        details.push(format!("E_{{{k},{n},{m}}}(x) for x in [0..50]: {} failures {failures:?}", failures.len()));
    }
    Ok(Run { status, details, data: Value::Null })
}

fn open_induction_cancellation(o: &DemoOptions) -> Result<Run, CliError> {
    let phi = parse_formula("x + 0 = y + x -> y = 0", &Language::linear_arithmetic())?;
    let (base, step) = is_inductive(&axioms_b(), &phi, "x", &o.budget)?;
    let details = vec![format!("phi = {phi}"), verdicts("base, step", &[&base, &step])];
    Ok(Run { status: Status::of([&base, &step]), details, data: json!({ "base": base, "step": step }) })
}

fn induction_failure(o: &DemoOptions) -> Result<Run, CliError> {
    let r = induction_failure_witness(1, 5, o.witness_bound)?;
    let status = if r.axiom_violated() {
        Status::No
    } else if r.base_holds && r.steps.iter().all(|s| s.holds) {
        Status::Undetermined
    } else {
        Status::Yes
    };
    let details = vec![
        format!("chi holds at sampled standard elements: {}", r.standard.iter().all(|(_, h)| *h)),
        format!("base: {}, sampled steps hold: {}", r.base_holds, r.steps.iter().all(|s| s.holds)),
        format!("conclusion fails at: {}", r.conclusion_fails_at.map_or("none found".to_string(), |e| e.to_string())),
    ];
    Ok(Run { status, details, data: serde_json::to_value(&r).expect("report serializes") })
}

fn commutativity_failure(o: &DemoOptions) -> Result<Run, CliError> {
    let s = StructureId::M(2);
    let b = Bounds { value: o.bound.min(20), type_cap: 2, witness: o.witness_bound };
    let theory = axioms_b().union(&axiom_b(1)).and_then(|t| t.union(&axiom_b(3))).expect("same language");
    let mut details = Vec::new();
    let mut status = Status::Yes;
    for (name, ax) in theory.named_axioms() {
        let r = holds_bounded(s, ax, &Assignment::new(), &b)?;
        status = status.and(from_check(&r));
        details.push(format!("{name}: {r}"));
    }
    let b2 = axiom_b(2);
    let r = holds_bounded(s, b2.axioms().next().expect("one axiom"), &Assignment::new(), &b)?;
    details.push(format!("B2: {r}"));
    let expected_witness = vec![("x".to_string(), ModelElement::new(1, 0)), ("y".to_string(), ModelElement::new(2, 0))];
    let at_witness = matches!(&r.outcome, Outcome::Violated { assignment, .. } if *assignment == expected_witness);
    let status = match status {
        Status::Yes if at_witness => Status::No,
        Status::Yes => Status::Yes,
        other => other,
    };
    Ok(Run { status, details, data: json!({ "b2": r }) })
}

fn parity_failure(o: &DemoOptions) -> Result<Run, CliError> {
    let r = shoenfield_oddeven_check(o.bound.min(10))?;
    let status = if r.verified() {
        Status::No
    } else if r.axioms.iter().any(|(_, c)| from_check(c) == Status::Undetermined) {
        Status::Undetermined
    } else {
        Status::Yes
    };
    let details = vec![
        format!("axioms of B' hold at bounds: {}", r.axioms.iter().all(|(_, c)| c.holds())),
        format!("({}, {}) even or odd: {:?}", r.element.ty, r.element.value, r.parity),
    ];
    Ok(Run { status, details, data: serde_json::to_value(&r).expect("report serializes") })
}

fn descent(_: &DemoOptions) -> Result<Run, CliError> {
    let phi: Formula = parse_formula("x = 0 | exists y. x = s(y)", &Language::linear_arithmetic())?;
    let stripped = shift_and_strip(&phi, &["x".to_string()])?;
    let d = descent_for_formula(&stripped.formula, 20, 10)?;
    let descending = d.descent.sequence.windows(2).all(|w| w[0] > w[1]);
    let details = vec![
        format!("shift {} gives {}", stripped.shift, stripped.formula),
        format!("component {}: {}", d.index, d.components[d.index]),
        format!("h0 = {:?}, m0 = {}, sequence {:?}", d.descent.h0, d.descent.m0, d.descent.sequence),
    ];
    Ok(Run { status: if descending { Status::Yes } else { Status::No }, details, data: json!({ "descent": d }) })
}

/// Runs one demo of the manifest.
pub fn run_demo(name: &str, o: &DemoOptions) -> Result<DemoReport, CliError> {
    let spec = MANIFEST.iter().find(|d| d.name == name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown demo `{name}` (available: {})",
            MANIFEST.iter().map(|d| d.name).collect::<Vec<_>>().join(", ")
        ))
    })?;
    let start = Instant::now();
    let run = match name {
        "cycle-refutation" => cycle_refutation(o),
        "step-two-cycle" => step_two_cycle(o),
        "external-offset" => external_offset(o),
        "predicate-unrefuted" => predicate_unrefuted(o),
        "cancellation-unrefuted" => cancellation_unrefuted(o),
        "cancellation-in-n" => cancellation_in_n(o),
        "open-induction-cancellation" => open_induction_cancellation(o),
        "induction-failure" => induction_failure(o),
        "commutativity-failure" => commutativity_failure(o),
        "parity-failure" => parity_failure(o),
        "descent" => descent(o),
        _ => unreachable!("manifest and dispatch agree"),
    }?;
    Ok(DemoReport {
        name: spec.name.to_string(),
        shows: spec.shows.to_string(),
        expected: spec.expected,
        status: run.status,
        matches: run.status == spec.expected,
        seconds: start.elapsed().as_secs_f64(),
        details: run.details,
        data: run.data,
    })
}

/// Every demo of the manifest with the given options.
pub fn demo_suite(o: &DemoOptions) -> Result<SuiteReport, CliError> {
    let start = Instant::now();
    let demos = MANIFEST.iter().map(|d| run_demo(d.name, o)).collect::<Result<Vec<_>, _>>()?;
    Ok(SuiteReport { schema: super::SCHEMA, demos, seconds: start.elapsed().as_secs_f64() })
}
