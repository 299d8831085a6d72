use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Theory, TheoryError};
use crate::entailment::{prove, Budget, Verdict};
use crate::syntax::{Formula, Term};

/// Conclusion of an induction axiom: `∀x φ` or the instance `φ(eta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InductionKind {
    Full,
    Eta,
}

fn check_free(phi: &Formula, x: &str) -> Result<(), TheoryError> {
    if phi.free_vars().iter().any(|v| v == x) {
        Ok(())
    } else {
        Err(TheoryError::NotFree { var: x.to_string(), formula: phi.to_string() })
    }
}

fn base_and_step(phi: &Formula, x: &str) -> (Formula, Formula) {
    let base = phi.subst1(x, &Term::zero());
    let step = Formula::implies(phi.clone(), phi.subst1(x, &Term::succ(Term::var(x))));
    (base, step)
}

/// `I_x φ` or `I_x^eta φ`, universally closed over the parameters.
pub fn induction_axiom(phi: &Formula, x: &str, kind: InductionKind) -> Result<Formula, TheoryError> {
    check_free(phi, x)?;
    let (base, step) = base_and_step(phi, x);
    let conclusion = match kind {
        InductionKind::Full => Formula::forall(x, phi.clone()),
        InductionKind::Eta => phi.subst1(x, &Term::eta()),
    };
    let hyp = Formula::and(vec![base, Formula::forall(x, step)]);
    Ok(Formula::implies(hyp, conclusion).universal_closure())
}

/// Verdicts for `T ⊢ φ(0, z)` and `T ⊢ φ(x, z) -> φ(s(x), z)`.
pub fn is_inductive(
    theory: &Theory,
    phi: &Formula,
    x: &str,
    budget: &Budget,
) -> Result<(Verdict, Verdict), TheoryError> {
    check_free(phi, x)?;
    let (base, step) = base_and_step(phi, x);
    Ok((prove(theory, &base, budget)?, prove(theory, &step, budget)?))
}

/// Conjunction of formulas sharing the induction variable. If each conjunct
/// is `T`-inductive, so is the conjunction.
pub fn fuse_inductive(phis: &[Formula]) -> Result<Formula, TheoryError> {
    if phis.is_empty() {
        return Err(TheoryError::Empty);
    }
    Ok(Formula::and(phis.to_vec()))
}

/// Induction rule families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RuleKind {
    /// `RIND`: concludes `∀z ∀x γ`.
    #[serde(rename = "RIND")]
    Rind,
    /// `RIND⁻`: as `RIND`, with `x` the only free variable.
    #[serde(rename = "RIND-")]
    RindParameterFree,
    /// `RIND_eta`: concludes `∀z γ(eta, z)`.
    #[serde(rename = "RIND_eta")]
    RindEta,
    /// `RIND⁻_eta`.
    #[serde(rename = "RIND-_eta")]
    RindParameterFreeEta,
}

impl RuleKind {
    pub fn parameter_free(self) -> bool {
        matches!(self, RuleKind::RindParameterFree | RuleKind::RindParameterFreeEta)
    }

    pub fn eta(self) -> bool {
        matches!(self, RuleKind::RindEta | RuleKind::RindParameterFreeEta)
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleKind::Rind => "RIND",
            RuleKind::RindParameterFree => "RIND-",
            RuleKind::RindEta => "RIND_eta",
            RuleKind::RindParameterFreeEta => "RIND-_eta",
        })
    }
}

/// One instance `base, step / conclusion` of an induction rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleInstance {
    pub kind: RuleKind,
    pub base: Formula,
    pub step: Formula,
    pub conclusion: Formula,
}

/// The rule instance for induction formula `φ` in `x`.
pub fn rule_instance(phi: &Formula, x: &str, kind: RuleKind) -> Result<RuleInstance, TheoryError> {
    check_free(phi, x)?;
    let params: Vec<String> = phi.free_vars().into_iter().filter(|v| v != x).collect();
    if kind.parameter_free() && !params.is_empty() {
        return Err(TheoryError::Shape { index: 0, reason: format!("parameters {params:?} in a parameter-free rule") });
    }
    let (base, step) = base_and_step(phi, x);
    let conclusion = if kind.eta() {
        Formula::forall_many(&params, phi.subst1(x, &Term::eta()))
    } else {
        Formula::forall_many(&params, Formula::forall(x, phi.clone()))
    };
    Ok(RuleInstance {
        kind,
        base: Formula::forall_many(&params, base),
        step: Formula::forall_many(&params, Formula::forall(x, step)),
        conclusion,
    })
}

/// An induction formula and its induction variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub formula: Formula,
    pub var: String,
}

impl Certificate {
    pub fn new(formula: Formula, var: impl Into<String>) -> Certificate {
        Certificate { formula, var: var.into() }
    }
}

/// Extends `T` by the conclusions of the certified `∃₁` rule instances,
/// one unnested application at a time: the `i`-th certificate is checked
/// against `[T, R]_i` and the result is `[T, R]_n`.
pub fn rule_closure_certificates(
    theory: &Theory,
    certificates: &[Certificate],
    kind: RuleKind,
    budget: &Budget,
) -> Result<Theory, TheoryError> {
    let mut current = theory.clone();
    for (index, cert) in certificates.iter().enumerate() {
        if !cert.formula.is_logically_existential() {
            return Err(TheoryError::Shape { index, reason: format!("{} is not logically existential", cert.formula) });
        }
        let instance = rule_instance(&cert.formula, &cert.var, kind).map_err(|e| match e {
            TheoryError::Shape { reason, .. } => TheoryError::Shape { index, reason },
            e => e,
        })?;
        let (base, step) = is_inductive(&current, &cert.formula, &cert.var, budget)?;
        if !(base.is_valid() && step.is_valid()) {
            return Err(TheoryError::Rejected { index, base: Box::new(base), step: Box::new(step) });
        }
        let mut next = current.clone();
        if kind.eta() {
            next.language = next.language.with_eta();
        }
        next.name = format!("[{}, {kind}]_{}", theory.name, index + 1);
        next.add(format!("R{}", index + 1), instance.conclusion)?;
        current = next;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, Language};
    use crate::theories::{axioms_b, axioms_p};

    fn f(s: &str, lang: &Language) -> Formula {
        parse_formula(s, lang).unwrap()
    }

    #[test]
    fn induction_axiom_shapes() {
        let lang = Language::induction_language();
        let full = induction_axiom(&f("P(x)", &lang), "x", InductionKind::Full).unwrap();
        assert_eq!(full, f("P(0) & (forall x. P(x) -> P(s(x))) -> forall x. P(x)", &lang));
        let eta = induction_axiom(&f("P(x)", &lang), "x", InductionKind::Eta).unwrap();
        assert_eq!(eta, f("P(0) & (forall x. P(x) -> P(s(x))) -> P(eta)", &lang));
        let with_param = induction_axiom(&f("P(x) | x = z", &lang), "x", InductionKind::Full).unwrap();
        assert!(with_param.is_sentence());
        assert!(matches!(with_param, Formula::Forall(ref z, _) if z == "z"));
        assert!(induction_axiom(&f("P(y)", &lang), "x", InductionKind::Full).is_err());
    }

    #[test]
    fn inductivity_in_p_and_b() {
        let budget = Budget::default();
        let lang = Language::induction_language();
        let (b, s) = is_inductive(&axioms_p(), &f("P(x)", &lang), "x", &budget).unwrap();
        assert!(b.is_valid() && s.is_valid(), "{b} / {s}");
        let la = Language::default();
        let phi = f("x + 0 = y + x -> y = 0", &la);
        let (b, s) = is_inductive(&axioms_b(), &phi, "x", &budget).unwrap();
        assert!(b.is_valid() && s.is_valid(), "{b} / {s}");
        b.trace().unwrap().replay().unwrap();
        s.trace().unwrap().replay().unwrap();
    }

    #[test]
    fn rule_closure_iterates() {
        let budget = Budget::default();
        let la = Language::linear_arithmetic();
        let empty = Theory::empty(la.clone());
        assert_eq!(rule_closure_certificates(&empty, &[], RuleKind::Rind, &budget).unwrap(), empty);
        let certs = vec![Certificate::new(f("x = x", &la), "x"), Certificate::new(f("s(x) != 0 | x = x", &la), "x")];
        let t = rule_closure_certificates(&empty, &certs, RuleKind::RindParameterFreeEta, &budget).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.axiom("R1").unwrap(), &f("eta = eta", &Language::default()));
        let bad = vec![Certificate::new(f("x = 0", &la), "x")];
        assert!(matches!(
            rule_closure_certificates(&empty, &bad, RuleKind::Rind, &budget),
            Err(TheoryError::Rejected { index: 0, .. })
        ));
        let param = vec![Certificate::new(f("x = z", &la), "x")];
        assert!(matches!(
            rule_closure_certificates(&empty, &param, RuleKind::RindParameterFree, &budget),
            Err(TheoryError::Shape { .. })
        ));
    }
}
