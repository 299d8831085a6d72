//! Components as integer linear systems, their solutions in ℕ and ℤ, and
//! infinite descending integer solution sequences.

mod linear;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::normalize::{to_components, Component, NormalizeError};
use crate::syntax::{Atom, Formula, PRED};

use linear::{linearize_literal, linearize_term};
pub use linear::{solve_z, LinSystem, NegConstraint, ZSolution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescentError {
    #[error("not a linear term or literal: {0}")]
    NotLinear(String),
    #[error("expected exactly one free variable, found {0:?}")]
    FreeVariables(Vec<String>),
    #[error("not a solution of the component: {0:?}")]
    NotASolution(Vec<i64>),
    #[error("the first solution must have the smaller first coordinate")]
    NotIncreasing,
    #[error("found {found} solutions in [0..{bound}], need {needed}")]
    Insufficient { found: usize, needed: usize, bound: u64 },
    #[error("integer overflow")]
    Overflow,
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
    #[error("{0}")]
    Internal(String),
}

/// The variable order of a component: its free variable, then the bound ones.
pub fn component_vars(chi: &Component) -> Result<Vec<String>, DescentError> {
    let mut free = chi.occurring_free();
    if free.is_empty() && chi.free.len() == 1 {
        free = chi.free.clone();
    }
    if free.len() != 1 {
        return Err(DescentError::FreeVariables(if free.is_empty() { chi.free.clone() } else { free }));
    }
    Ok(free.into_iter().chain(chi.bound.iter().cloned()).collect())
}

/// Positive literals as rows of `A x̄ = b`, negative literals as constraints.
/// Numerals are read as constants.
pub fn linearize_component(chi: &Component) -> Result<(LinSystem, Vec<NegConstraint>), DescentError> {
    let vars = component_vars(chi)?;
    let mut system = LinSystem { vars: vars.clone(), a: Vec::new(), b: Vec::new() };
    let mut negs = Vec::new();
    for l in &chi.literals {
        let lin = linearize_literal(l)?;
        if l.positive {
            system.push(&lin);
        } else {
            negs.push(NegConstraint::new(&lin, &vars));
        }
    }
    Ok((system, negs))
}

/// A solution in ℕ with the witnesses of the bound variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NSolution {
    pub value: u64,
    /// Values of `component_vars`, starting with `value`.
    pub vector: Vec<u64>,
}

/// Default witness bound for `bound`: `bound + 2 · (largest constant)`.
pub fn witness_bound(chi: &Component, bound: u64) -> u64 {
    let max_constant = chi
        .literals
        .iter()
        .flat_map(|l| match &l.atom {
            Atom::Eq(a, b) => vec![a, b],
            Atom::Pred(..) => vec![],
        })
        .filter_map(|t| linearize_term(t).ok().map(|l| l.constant.unsigned_abs()))
        .max()
        .unwrap_or(0);
    bound + 2 * max_constant
}

/// Every `d` in `[0..bound]` with `ℕ ⊨ chi(d)`, witnesses searched in
/// `[0..witness_bound(chi, bound)]`.
pub fn find_n_solutions(chi: &Component, bound: u64) -> Result<Vec<NSolution>, DescentError> {
    find_n_solutions_with(chi, bound, witness_bound(chi, bound))
}

pub fn find_n_solutions_with(chi: &Component, bound: u64, witness: u64) -> Result<Vec<NSolution>, DescentError> {
    let (system, negs) = linearize_component(chi)?;
    let n = system.vars.len();
    // Each constraint is checked at the first position where all its
    // variables are assigned.
    let last = |coeffs: &[i64]| coeffs.iter().rposition(|a| *a != 0).unwrap_or(0);
    let mut checks: Vec<Vec<Check>> = vec![Vec::new(); n];
    for (row, b) in system.a.iter().zip(&system.b) {
        checks[last(row)].push(Check { coeffs: row.clone(), constant: -b, positive: true });
    }
    for c in &negs {
        checks[last(&c.coeffs)].push(Check { coeffs: c.coeffs.clone(), constant: c.constant, positive: false });
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    for d in 0..=bound {
        x[0] = d as i64;
        if checks[0].iter().all(|c| c.holds(&x)) && extend(&checks, &mut x, 1, witness as i64) {
            out.push(NSolution { value: d, vector: x.iter().map(|v| *v as u64).collect() });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
struct Check {
    coeffs: Vec<i64>,
    constant: i64,
    positive: bool,
}

impl Check {
    fn holds(&self, x: &[i64]) -> bool {
        let v = linear::dot(&self.coeffs, x).and_then(|v| v.checked_add(self.constant));
        v.is_some_and(|v| (v == 0) == self.positive)
    }
}

fn extend(checks: &[Vec<Check>], x: &mut [i64], i: usize, witness: i64) -> bool {
    if i == x.len() {
        return true;
    }
    for v in 0..=witness {
        x[i] = v;
        if checks[i].iter().all(|c| c.holds(x)) && extend(checks, x, i + 1, witness) {
            return true;
        }
    }
    x[i] = 0;
    false
}

/// Integer solutions `m · h0 + sol1` for `m >= m0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Descent {
    pub vars: Vec<String>,
    pub system: LinSystem,
    pub negatives: Vec<NegConstraint>,
    pub h0: Vec<i64>,
    pub m0: i64,
    pub start: Vec<i64>,
    pub vectors: Vec<Vec<i64>>,
    pub sequence: Vec<i64>,
}

impl Descent {
    /// The vector `m · h0 + start`.
    pub fn vector_at(&self, m: i64) -> Option<Vec<i64>> {
        self.h0.iter().zip(&self.start).map(|(h, s)| h.checked_mul(m)?.checked_add(*s)).collect()
    }

    /// The vector at `m` satisfies every row and every negative constraint.
    pub fn holds_at(&self, m: i64) -> bool {
        self.vector_at(m)
            .is_some_and(|v| self.system.satisfied_by(&v) && self.negatives.iter().all(|c| c.satisfied_by(&v)))
    }
}

/// A strictly descending sequence of integer solutions of `chi` from two
/// solutions with `sol1[0] < sol2[0]`.
pub fn descending_sequence(
    chi: &Component,
    sol1: &[i64],
    sol2: &[i64],
    length: usize,
) -> Result<Descent, DescentError> {
    let (system, negatives) = linearize_component(chi)?;
    for s in [sol1, sol2] {
        if !system.satisfied_by(s) || !negatives.iter().all(|c| c.satisfied_by(s)) {
            return Err(DescentError::NotASolution(s.to_vec()));
        }
    }
    if sol1[0] >= sol2[0] {
        return Err(DescentError::NotIncreasing);
    }
    let h0: Vec<i64> =
        sol1.iter().zip(sol2).map(|(a, b)| a.checked_sub(*b)).collect::<Option<_>>().ok_or(DescentError::Overflow)?;
    // q(m) = slope · m + q(0) has at most one root; only roots in ℕ count.
    let mut m0 = 0;
    for c in &negatives {
        let slope = linear::dot(&c.coeffs, &h0).ok_or(DescentError::Overflow)?;
        let at0 = c.value(sol1).ok_or(DescentError::Overflow)?;
        if slope != 0 && at0 % slope == 0 && -at0 / slope >= 0 {
            m0 = m0.max(-at0 / slope + 1);
        }
    }
    let mut d = Descent {
        vars: system.vars.clone(),
        system,
        negatives,
        h0,
        m0,
        start: sol1.to_vec(),
        vectors: Vec::new(),
        sequence: Vec::new(),
    };
    for m in m0..m0 + length as i64 {
        if !d.holds_at(m) {
            return Err(DescentError::Internal(format!("the vector at m = {m} is not a solution")));
        }
        let v = d.vector_at(m).ok_or(DescentError::Overflow)?;
        d.sequence.push(v[0]);
        d.vectors.push(v);
    }
    Ok(d)
}

/// The number of ℕ-solutions that forces a component with two of them:
/// one more than the number of components.
pub fn required_solutions(components: &[Component]) -> usize {
    components.len() + 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaDescent {
    pub components: Vec<Component>,
    pub solutions: Vec<Vec<NSolution>>,
    pub index: usize,
    pub descent: Descent,
}

/// A descending integer solution sequence of a one-variable `p`-free
/// existential formula. The component is the first with two solutions in
/// `[0..bound]`.
pub fn descent_for_formula(phi: &Formula, bound: u64, length: usize) -> Result<FormulaDescent, DescentError> {
    let free = phi.free_vars();
    if free.len() != 1 {
        return Err(DescentError::FreeVariables(free));
    }
    if phi.contains_symbol(PRED) {
        return Err(NormalizeError::NotPFree(phi.to_string()).into());
    }
    let components = to_components(phi)?;
    let solutions = components.iter().map(|c| find_n_solutions(c, bound)).collect::<Result<Vec<_>, _>>()?;
    let mut values: Vec<u64> = solutions.iter().flatten().map(|s| s.value).collect();
    values.sort_unstable();
    values.dedup();
    let needed = required_solutions(&components);
    if values.len() < needed {
        return Err(DescentError::Insufficient { found: values.len(), needed, bound });
    }
    let index = solutions.iter().position(|s| s.len() >= 2).expect("pigeonhole");
    let signed = |s: &NSolution| s.vector.iter().map(|v| *v as i64).collect::<Vec<_>>();
    let descent =
        descending_sequence(&components[index], &signed(&solutions[index][0]), &signed(&solutions[index][1]), length)?;
    Ok(FormulaDescent { components, solutions, index, descent })
}

/// `ℤ ⊨ chi(d)` for a full vector, by substitution.
pub fn z_satisfies(chi: &Component, vector: &[i64]) -> Result<bool, DescentError> {
    let (system, negs) = linearize_component(chi)?;
    Ok(system.satisfied_by(vector) && negs.iter().all(|c| c.satisfied_by(vector)))
}
