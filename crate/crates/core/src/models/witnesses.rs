use serde::{Deserialize, Serialize};

use super::check::{find_witness, holds_bounded, Bounds, CheckReport};
use super::element::ModelElement;
use super::structure::{Assignment, StructureId};
use super::ModelError;
use crate::syntax::{numeral, Formula, Term};
use crate::theories;

/// `ι_m(n) = n^[m]`, the embedding of `Z` into the `m`-th chain of `M_I`.
pub fn embed_iota(i: u64, m: u64, n: i64) -> Result<ModelElement, ModelError> {
    if m == 0 || m > i {
        return Err(ModelError::BadParameter(format!("chain {m} is not in 1..={i}")));
    }
    Ok(ModelElement::new(m, n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CancellationReport {
    pub k: u64,
    pub n: u64,
    pub m: u64,
    pub x: ModelElement,
    pub lhs: ModelElement,
    pub rhs: ModelElement,
    pub numeral_k: ModelElement,
    /// `n·x + (m-n)k = m·x` holds at `x`.
    pub antecedent_holds: bool,
    /// `x != k` holds.
    pub differs_from_numeral: bool,
}

impl CancellationReport {
    pub fn verified(&self) -> bool {
        self.antecedent_holds && self.differs_from_numeral
    }
}

/// The element `k^[1]` of `M_1` violating the weak cancellation formula
/// `E_{k,n,m}`, together with both evaluated sides.
pub fn counterexample_e(k: u64, n: u64, m: u64) -> Result<CancellationReport, ModelError> {
    let (lhs_t, rhs_t) =
        theories::e_sides(k, n, m, &Term::var("x")).map_err(|e| ModelError::BadParameter(e.to_string()))?;
    let s = StructureId::M(1);
    let x = ModelElement::new(1, k as i64);
    let env: Assignment = [("x".to_string(), x)].into_iter().collect();
    let lhs = s.eval_term(&env, &lhs_t)?;
    let rhs = s.eval_term(&env, &rhs_t)?;
    let numeral_k = s.eval_term(&env, &numeral(k))?;
    Ok(CancellationReport {
        k,
        n,
        m,
        x,
        lhs,
        rhs,
        numeral_k,
        antecedent_holds: lhs == rhs,
        differs_from_numeral: x != numeral_k,
    })
}

/// `θ(x, y1, y2, y3) = x + y1 != x + y2 & x + (y3 + y1) = x + (y3 + y2)`;
/// `χ(x)` is its existential closure over the `y`s.
pub fn chi_formula() -> (Vec<String>, Formula) {
    let v = Term::var;
    let ys: Vec<String> = ["y1", "y2", "y3"].iter().map(|s| s.to_string()).collect();
    let body = Formula::and(vec![
        Formula::neq(Term::plus(v("x"), v("y1")), Term::plus(v("x"), v("y2"))),
        Formula::eq(Term::plus(v("x"), Term::plus(v("y3"), v("y1"))), Term::plus(v("x"), Term::plus(v("y3"), v("y2")))),
    ]);
    (ys, body)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepSample {
    pub x: ModelElement,
    pub antecedent_witness: Option<Vec<ModelElement>>,
    pub consequent_witness: Option<Vec<ModelElement>>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionFailureReport {
    pub structure: StructureId,
    pub witness_bound: i64,
    /// `θ(n^[0], 0^[0], 0^[1], 0^[1])` for sampled standard `n`.
    pub standard: Vec<(ModelElement, bool)>,
    pub base_holds: bool,
    pub steps: Vec<StepSample>,
    /// Witness search results for sampled non-standard elements.
    pub nonstandard: Vec<(ModelElement, Option<Vec<ModelElement>>)>,
    /// First element in box order where `χ` has no witness.
    pub conclusion_fails_at: Option<ModelElement>,
}

impl InductionFailureReport {
    pub fn axiom_violated(&self) -> bool {
        self.base_holds && self.steps.iter().all(|s| s.holds) && self.conclusion_fails_at.is_some()
    }
}

/// Checks that the induction axiom for `χ` fails in `M_I`: `χ` holds on the
/// standard chain with explicit witnesses, steps hold on sampled elements,
/// and `χ` has no witness at some non-standard element.
pub fn induction_failure_witness(
    i: u64,
    samples: i64,
    witness_bound: i64,
) -> Result<InductionFailureReport, ModelError> {
    if i == 0 {
        return Err(ModelError::BadParameter("M_0 is the standard model".into()));
    }
    let s = StructureId::M(i);
    let bounds = Bounds { value: samples.max(1), type_cap: i, witness: witness_bound };
    bounds.validate()?;
    let (ys, body) = chi_formula();
    let at = |x: ModelElement| -> Assignment { [("x".to_string(), x)].into_iter().collect() };
    let chi = |x: ModelElement| find_witness(s, &ys, &body, &at(x), &bounds);

    let fixed = [ModelElement::new(0, 0), ModelElement::new(1, 0), ModelElement::new(1, 0)];
    let mut standard = Vec::new();
    for n in 0..=samples {
        let x = ModelElement::standard(n);
        let mut env = at(x);
        for (y, e) in ys.iter().zip(fixed) {
            env.insert(y.clone(), e);
        }
        let holds = holds_bounded(s, &body, &env, &bounds)?.holds();
        standard.push((x, holds));
    }
    let base_holds = chi(ModelElement::standard(0))?.is_some();

    let sample_box = s.domain_box(samples, i);
    let mut steps = Vec::new();
    let mut nonstandard = Vec::new();
    let mut conclusion_fails_at = None;
    for &x in &sample_box {
        let a = chi(x)?;
        let c = if a.is_some() { chi(s.succ(x)?)? } else { None };
        let holds = a.is_none() || c.is_some();
        if a.is_none() && conclusion_fails_at.is_none() {
            conclusion_fails_at = Some(x);
        }
        if !x.is_standard() {
            nonstandard.push((x, a.clone()));
        }
        steps.push(StepSample { x, antecedent_witness: a, consequent_witness: c, holds });
    }
    Ok(InductionFailureReport {
        structure: s,
        witness_bound,
        standard,
        base_holds,
        steps,
        nonstandard,
        conclusion_fails_at,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

/// A `w` with `e = w + w` (even) or `e = s(w + w)` (odd) among the pairs
/// `(m, n)` with `m <= bound` and `|n| <= bound`.
pub fn parity_witness(e: ModelElement, bound: i64) -> Option<(Parity, ModelElement)> {
    let s = StructureId::Shoenfield;
    for w in s.domain_box(bound, bound.max(0) as u64) {
        let double = s.plus(w, w).ok()?;
        if double == e {
            return Some((Parity::Even, w));
        }
        if s.succ(double).ok()? == e {
            return Some((Parity::Odd, w));
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddEvenReport {
    pub bound: i64,
    /// Bounded checks of the axioms of `B'`, in order.
    pub axioms: Vec<(String, CheckReport)>,
    pub element: ModelElement,
    pub parity: Option<(Parity, ModelElement)>,
}

impl OddEvenReport {
    pub fn verified(&self) -> bool {
        self.axioms.iter().all(|(_, r)| r.holds()) && self.parity.is_none()
    }
}

/// Checks `B'` in the pair structure and that `(1, 0)` is neither even nor odd.
pub fn shoenfield_oddeven_check(bound: i64) -> Result<OddEvenReport, ModelError> {
    let bounds = Bounds { value: bound, type_cap: 2, witness: bound };
    bounds.validate()?;
    let s = StructureId::Shoenfield;
    let mut axioms = Vec::new();
    let t = theories::axioms_bprime();
    for (name, ax) in t.named_axioms() {
        axioms.push((name, holds_bounded(s, ax, &Assignment::new(), &bounds)?));
    }
    let element = ModelElement::new(1, 0);
    Ok(OddEvenReport { bound, axioms, element, parity: parity_witness(element, bound) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_counterexamples() {
        let r = counterexample_e(0, 1, 2).unwrap();
        assert_eq!(r.x, ModelElement::new(1, 0));
        assert_eq!((r.lhs, r.rhs), (ModelElement::new(1, 0), ModelElement::new(1, 0)));
        assert!(r.verified());
        let r = counterexample_e(1, 1, 2).unwrap();
        assert_eq!((r.lhs, r.rhs), (ModelElement::new(1, 2), ModelElement::new(1, 2)));
        assert!(counterexample_e(0, 2, 2).is_err());
    }

    #[test]
    fn parities() {
        assert_eq!(parity_witness(ModelElement::new(0, 1), 3), Some((Parity::Odd, ModelElement::new(0, 0))));
        assert_eq!(parity_witness(ModelElement::new(2, 0), 3), Some((Parity::Even, ModelElement::new(1, 0))));
        assert_eq!(parity_witness(ModelElement::new(1, 0), 10), None);
    }

    #[test]
    fn iota_range() {
        assert_eq!(embed_iota(1, 1, -3).unwrap(), ModelElement::new(1, -3));
        assert!(embed_iota(1, 2, 0).is_err());
        assert!(embed_iota(1, 0, 0).is_err());
    }
}
