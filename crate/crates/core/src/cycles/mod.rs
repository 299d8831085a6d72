//! Clause set cycles: checking the cycle and refutation conditions, removing
//! step sizes and offsets, and translating between cycles and inductive
//! existential formulas.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::entailment::{check_entails, check_unsat, prove, reduce_redundancy, Budget, EngineError, Verdict};
use crate::syntax::{
    canonical_var, cls, cls_inv, disjoin_clause_sets, instantiate_eta, numeral, ClauseSet, Formula, Language,
    SyntaxError, Term, ETA,
};
use crate::theories::{is_inductive, Certificate, Theory, TheoryError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CycleError {
    #[error("the descent step size must be at least 1")]
    ZeroStep,
    #[error("`eta` must be a constant, found it with {0} arguments")]
    EtaArity(usize),
    #[error("expected a logically existential formula with at most one free variable: {0}")]
    Shape(String),
    #[error("formula is not inductive over the empty theory (base: {base}, step: {step})")]
    NotInductive { base: Box<Verdict>, step: Box<Verdict> },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Theory(#[from] TheoryError),
}

/// Summary of a list of obligations: `Yes` if all are valid, `Undetermined`
/// if any is unknown, `No` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Yes,
    No,
    Undetermined,
}

impl Status {
    pub fn of<'a>(verdicts: impl IntoIterator<Item = &'a Verdict>) -> Status {
        let mut status = Status::Yes;
        for v in verdicts {
            match v {
                Verdict::Valid(_) => {}
                Verdict::Unknown(_) => return Status::Undetermined,
                Verdict::Refuted(_) => status = Status::No,
            }
        }
        status
    }

    pub fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::Undetermined, _) | (_, Status::Undetermined) => Status::Undetermined,
            (Status::No, _) | (_, Status::No) => Status::No,
            _ => Status::Yes,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Yes => "yes",
            Status::No => "no",
            Status::Undetermined => "undetermined",
        })
    }
}

/// Step size `j`, internal offset `k` and external offset `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamCycleSpec {
    pub j: u64,
    pub k: u64,
    #[serde(default)]
    pub i: u64,
}

impl ParamCycleSpec {
    /// Plain cycles: step 1, no offsets.
    pub const PLAIN: ParamCycleSpec = ParamCycleSpec { j: 1, k: 0, i: 0 };

    pub fn new(j: u64, k: u64, i: u64) -> Result<ParamCycleSpec, CycleError> {
        if j == 0 {
            return Err(CycleError::ZeroStep);
        }
        Ok(ParamCycleSpec { j, k, i })
    }
}

/// Verdicts for the descent condition `c1` and the base conditions `c2`
/// (one per residue `m < j`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleReport {
    pub j: u64,
    pub k: u64,
    pub c1: Verdict,
    pub c2: Vec<Verdict>,
    pub is_cycle: Status,
}

impl CycleReport {
    pub fn verdicts(&self) -> impl Iterator<Item = &Verdict> {
        std::iter::once(&self.c1).chain(self.c2.iter())
    }
}

/// A candidate refutation of `D` by a cycle with its obligations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefutationCertificate {
    pub cycle: ClauseSet,
    pub report: CycleReport,
    /// External offset `i`.
    pub offset: u64,
    /// `D(s^i(eta)) ⊨ C(s^k(eta))`.
    pub c3: Verdict,
    /// `D(#m) ⊨ ⊥` for `m < i`.
    pub base: Vec<Verdict>,
    pub valid: Status,
}

fn check_eta(c: &ClauseSet) -> Result<(), CycleError> {
    match c.signature().0.get(ETA) {
        Some(&a) if a != 0 => Err(CycleError::EtaArity(a)),
        _ => Ok(()),
    }
}

fn shifted(c: &ClauseSet, n: u64) -> ClauseSet {
    if n == 0 {
        c.clone()
    } else {
        instantiate_eta(c, &Term::succ_n(n, Term::eta()))
    }
}

/// Checks `C(s(eta)) ⊨ C(eta)` and `C(0) ⊨ ⊥`.
pub fn verify_cycle(c: &ClauseSet, budget: &Budget) -> Result<CycleReport, CycleError> {
    verify_param_cycle(c, ParamCycleSpec::PLAIN, budget)
}

/// Checks `C(s^{j+k}(eta)) ⊨ C(s^k(eta))` and `C(#(m+k)) ⊨ ⊥` for `m < j`.
/// The external offset of `spec` is ignored.
pub fn verify_param_cycle(c: &ClauseSet, spec: ParamCycleSpec, budget: &Budget) -> Result<CycleReport, CycleError> {
    let ParamCycleSpec { j, k, .. } = ParamCycleSpec::new(spec.j, spec.k, spec.i)?;
    check_eta(c)?;
    let c1 = check_entails(&shifted(c, j + k), &shifted(c, k), budget)?;
    let mut c2 = Vec::new();
    for m in 0..j {
        c2.push(check_unsat(&instantiate_eta(c, &numeral(m + k)), budget)?);
    }
    let is_cycle = Status::of(std::iter::once(&c1).chain(c2.iter()));
    Ok(CycleReport { j, k, c1, c2, is_cycle })
}

fn disjoin_reduced(family: &[ClauseSet]) -> Result<ClauseSet, CycleError> {
    Ok(reduce_redundancy(&disjoin_clause_sets(family)?))
}

/// The plain cycle `C''` simulating a `(j, k)`-cycle: the disjunction of
/// `C(s^{k+m}(eta))` for `m < j`, without redundant clauses.
///
/// If `C` is a `(j, k)`-cycle then `C''` is a cycle and `C(s^k(eta)) ⊨ C''`.
pub fn reduce_param_cycle(c: &ClauseSet, j: u64, k: u64) -> Result<ClauseSet, CycleError> {
    ParamCycleSpec::new(j, k, 0)?;
    check_eta(c)?;
    let family: Vec<ClauseSet> = (0..j).map(|m| shifted(c, k + m)).collect();
    disjoin_reduced(&family)
}

/// The plain cycle refuting `D` built from a plain cycle `C'` that refutes
/// `D` with external offset `i`: the disjunction of `D(s^m(eta))` for
/// `m < i` and `C'`, without redundant clauses.
pub fn reduce_external_offset(d: &ClauseSet, cycle: &ClauseSet, i: u64) -> Result<ClauseSet, CycleError> {
    check_eta(d)?;
    check_eta(cycle)?;
    let mut family: Vec<ClauseSet> = (0..i).map(|m| shifted(d, m)).collect();
    family.push(cycle.clone());
    disjoin_reduced(&family)
}

/// Checks that `D` is refuted by the cycle `C`: the cycle conditions and
/// `D ⊨ C`.
pub fn verify_refutation(d: &ClauseSet, c: &ClauseSet, budget: &Budget) -> Result<RefutationCertificate, CycleError> {
    verify_param_refutation(d, c, ParamCycleSpec::PLAIN, budget)
}

/// Checks that `D` is refuted by the `(j, k)`-cycle `C` with external
/// offset `i`: `D(s^i(eta)) ⊨ C(s^k(eta))` and `D(#m) ⊨ ⊥` for `m < i`.
pub fn verify_param_refutation(
    d: &ClauseSet,
    c: &ClauseSet,
    spec: ParamCycleSpec,
    budget: &Budget,
) -> Result<RefutationCertificate, CycleError> {
    check_eta(d)?;
    let report = verify_param_cycle(c, spec, budget)?;
    let c3 = check_entails(&shifted(d, spec.i), &shifted(c, spec.k), budget)?;
    let mut base = Vec::new();
    for m in 0..spec.i {
        base.push(check_unsat(&instantiate_eta(d, &numeral(m)), budget)?);
    }
    let valid = report.is_cycle.and(Status::of(std::iter::once(&c3).chain(base.iter())));
    Ok(RefutationCertificate { cycle: c.clone(), report, offset: spec.i, c3, base, valid })
}

/// `¬cls⁻¹(C)` with `eta` replaced by the first canonical variable not bound
/// in `cls⁻¹(C)`.
pub fn inductive_formula_of_cycle(c: &ClauseSet) -> Result<Certificate, CycleError> {
    check_eta(c)?;
    let sentence = cls_inv(c);
    let used = sentence.all_vars();
    let x = (0..).map(canonical_var).find(|v| !used.contains(v)).expect("unbounded supply");
    let formula = Formula::not(sentence).replace_constant(ETA, &Term::var(x.clone()));
    Ok(Certificate::new(formula, x))
}

fn language_of(phi: &Formula) -> Language {
    let (functions, predicates) = phi.signature();
    let mut lang = Language::base();
    for (f, a) in functions {
        if f != ETA {
            lang.functions.insert(f, a);
        }
    }
    lang.predicates = predicates;
    lang
}

/// Verdicts for `⊢ φ(0)` and `⊢ φ(x) -> φ(s(x))` over the empty theory of
/// the symbols of `φ`. If `x` is not free both obligations concern `φ`.
pub fn inductivity_over_empty_theory(
    phi: &Formula,
    x: &str,
    budget: &Budget,
) -> Result<(Verdict, Verdict), CycleError> {
    let theory = Theory::empty(language_of(phi));
    if phi.free_vars().iter().any(|v| v == x) {
        return Ok(is_inductive(&theory, phi, x, budget)?);
    }
    let base = prove(&theory, phi, budget)?;
    let step = prove(&theory, &Formula::implies(phi.clone(), phi.clone()), budget)?;
    Ok((base, step))
}

/// The cycle `cls(¬Ψ[x/eta])` of a formula `Ψ` that is inductive over the
/// empty theory. `Ψ` must be logically existential with at most one free
/// variable.
pub fn cycle_of_inductive_formula(psi: &Formula, budget: &Budget) -> Result<ClauseSet, CycleError> {
    let free = psi.free_vars();
    if free.len() > 1 || !psi.is_logically_existential() || psi.contains_symbol(ETA) {
        return Err(CycleError::Shape(psi.to_string()));
    }
    let x = free.first().cloned().unwrap_or_else(|| canonical_var(0));
    let (base, step) = inductivity_over_empty_theory(psi, &x, budget)?;
    if !(base.is_valid() && step.is_valid()) {
        return Err(CycleError::NotInductive { base: Box::new(base), step: Box::new(step) });
    }
    let theta = Formula::not(psi.clone()).subst1(&x, &Term::eta());
    Ok(cls(&theta)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_clause_set;

    #[test]
    fn status_summary() {
        let valid = Verdict::Valid(Default::default());
        let unknown = Verdict::Unknown("x".into());
        assert_eq!(Status::of([&valid, &valid]), Status::Yes);
        assert_eq!(Status::of([&valid, &unknown]), Status::Undetermined);
        assert_eq!(Status::Yes.and(Status::No), Status::No);
        assert_eq!(Status::No.and(Status::Undetermined), Status::Undetermined);
    }

    #[test]
    fn zero_step_is_rejected() {
        let c = parse_clause_set("[eta = 0]", &Language::default()).unwrap();
        assert_eq!(reduce_param_cycle(&c, 0, 0), Err(CycleError::ZeroStep));
        assert!(ParamCycleSpec::new(0, 1, 0).is_err());
    }

    #[test]
    fn fresh_variable_avoids_bound_ones() {
        let c = parse_clause_set("[eta != x + y]", &Language::default()).unwrap();
        let cert = inductive_formula_of_cycle(&c).unwrap();
        assert_eq!(cert.var, "z");
        assert_eq!(cert.formula.to_string(), "~(forall x. forall y. x + y != z)");
    }
}
