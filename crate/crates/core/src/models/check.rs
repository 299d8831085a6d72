use std::fmt;

use serde::{Deserialize, Serialize};

use super::element::ModelElement;
use super::structure::{Assignment, StructureId};
use super::ModelError;
use crate::syntax::{Clause, ClauseSet, Formula};

/// Atom evaluations allowed in one bounded check before giving up.
pub const EVALUATION_CAP: u64 = 200_000_000;

/// Finite search box for bounded checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Universally quantified values range over `|n| <= value`.
    pub value: i64,
    /// Largest type enumerated in structures with unboundedly many types.
    pub type_cap: u64,
    /// Existential witnesses are searched over `|n| <= witness`.
    pub witness: i64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { value: 30, type_cap: 2, witness: 15 }
    }
}

impl Bounds {
    pub fn new(value: i64, witness: i64) -> Bounds {
        Bounds { value, witness, ..Bounds::default() }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if self.value <= 0 || self.witness <= 0 {
            return Err(ModelError::BadBounds(format!(
                "value bound {} and witness bound {} must be positive",
                self.value, self.witness
            )));
        }
        Ok(())
    }
}

/// Result of a bounded check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    /// No violation among the enumerated assignments.
    HoldsAtBounds,
    /// A definite counterexample.
    Violated {
        #[serde(skip_serializing_if = "Option::is_none")]
        clause: Option<usize>,
        assignment: Vec<(String, ModelElement)>,
    },
    /// Some needed existential witness was not found in the box.
    Unknown { reason: String, assignment: Vec<(String, ModelElement)> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub structure: StructureId,
    pub bounds: Bounds,
    pub outcome: Outcome,
    pub assignments_checked: u64,
}

impl CheckReport {
    pub fn holds(&self) -> bool {
        self.outcome == Outcome::HoldsAtBounds
    }

    pub fn violated(&self) -> bool {
        matches!(self.outcome, Outcome::Violated { .. })
    }
}

fn show_assignment(f: &mut fmt::Formatter<'_>, a: &[(String, ModelElement)]) -> fmt::Result {
    for (i, (x, e)) in a.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{x} = {e}")?;
    }
    Ok(())
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = &self.bounds;
        write!(f, "{}: ", self.structure)?;
        match &self.outcome {
            Outcome::HoldsAtBounds => write!(f, "holds at bounds")?,
            Outcome::Violated { clause, assignment } => {
                write!(f, "violated")?;
                if let Some(i) = clause {
                    write!(f, " (clause {i})")?;
                }
                write!(f, " at ")?;
                show_assignment(f, assignment)?;
            }
            Outcome::Unknown { reason, assignment } => {
                write!(f, "unknown ({reason})")?;
                if !assignment.is_empty() {
                    write!(f, " at ")?;
                    show_assignment(f, assignment)?;
                }
            }
        }
        write!(
            f,
            " [value bound {}, type cap {}, witness bound {}, {} assignments]",
            b.value, b.type_cap, b.witness, self.assignments_checked
        )
    }
}

/// What `holds_bounded` can check.
#[derive(Debug, Clone, Copy)]
pub enum Target<'a> {
    Formula(&'a Formula),
    Clauses(&'a ClauseSet),
}

impl<'a> From<&'a Formula> for Target<'a> {
    fn from(f: &'a Formula) -> Self {
        Target::Formula(f)
    }
}

impl<'a> From<&'a ClauseSet> for Target<'a> {
    fn from(c: &'a ClauseSet) -> Self {
        Target::Clauses(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tri {
    True,
    False,
    Unknown,
}

struct Checker {
    structure: StructureId,
    value_box: Vec<ModelElement>,
    witness_box: Vec<ModelElement>,
    evaluations: u64,
}

impl Checker {
    fn new(structure: StructureId, bounds: &Bounds) -> Checker {
        Checker {
            structure,
            value_box: structure.domain_box(bounds.value, bounds.type_cap),
            witness_box: structure.domain_box(bounds.witness, bounds.type_cap),
            evaluations: 0,
        }
    }

    fn tick(&mut self) -> Result<(), ModelError> {
        self.evaluations += 1;
        if self.evaluations > EVALUATION_CAP {
            return Err(ModelError::EvaluationCap);
        }
        Ok(())
    }

    /// Kleene evaluation of a formula in negation normal form.
    fn eval(&mut self, f: &Formula, env: &mut Assignment) -> Result<Tri, ModelError> {
        Ok(match f {
            Formula::True => Tri::True,
            Formula::False => Tri::False,
            Formula::Atom(a) => {
                self.tick()?;
                tri(self.structure.eval_atom(env, a)?)
            }
            Formula::Not(inner) => match &**inner {
                Formula::Atom(a) => {
                    self.tick()?;
                    tri(!self.structure.eval_atom(env, a)?)
                }
                other => return self.eval(&Formula::Not(Box::new(other.clone())).nnf(), env),
            },
            Formula::And(fs) => {
                let mut acc = Tri::True;
                for g in fs {
                    match self.eval(g, env)? {
                        Tri::False => return Ok(Tri::False),
                        Tri::Unknown => acc = Tri::Unknown,
                        Tri::True => {}
                    }
                }
                acc
            }
            Formula::Or(fs) => {
                let mut acc = Tri::False;
                for g in fs {
                    match self.eval(g, env)? {
                        Tri::True => return Ok(Tri::True),
                        Tri::Unknown => acc = Tri::Unknown,
                        Tri::False => {}
                    }
                }
                acc
            }
            Formula::Forall(x, body) => {
                let saved = env.get(x).copied();
                let mut acc = Tri::True;
                for i in 0..self.value_box.len() {
                    env.insert(x.clone(), self.value_box[i]);
                    match self.eval(body, env)? {
                        Tri::False => {
                            acc = Tri::False;
                            break;
                        }
                        Tri::Unknown => acc = Tri::Unknown,
                        Tri::True => {}
                    }
                }
                restore(env, x, saved);
                acc
            }
            Formula::Exists(x, body) => {
                let saved = env.get(x).copied();
                let mut acc = Tri::Unknown;
                for i in 0..self.witness_box.len() {
                    env.insert(x.clone(), self.witness_box[i]);
                    if self.eval(body, env)? == Tri::True {
                        acc = Tri::True;
                        break;
                    }
                }
                restore(env, x, saved);
                acc
            }
            Formula::Implies(..) | Formula::Iff(..) => return self.eval(&f.nnf(), env),
        })
    }

    fn eval_clause(&mut self, c: &Clause, env: &Assignment) -> Result<bool, ModelError> {
        for l in c.literals() {
            self.tick()?;
            if self.structure.eval_atom(env, &l.atom)? == l.positive {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn tri(b: bool) -> Tri {
    if b {
        Tri::True
    } else {
        Tri::False
    }
}

fn restore(env: &mut Assignment, x: &str, saved: Option<ModelElement>) {
    match saved {
        Some(e) => env.insert(x.to_string(), e),
        None => env.remove(x),
    };
}

/// Calls `f` on every assignment of `vars` to elements of `domain`, in
/// lexicographic order with the first variable most significant. Stops
/// when `f` returns `Some`.
pub fn for_each_assignment<T>(
    vars: &[String],
    domain: &[ModelElement],
    env: &mut Assignment,
    mut f: impl FnMut(&Assignment) -> Result<Option<T>, ModelError>,
) -> Result<Option<T>, ModelError> {
    if vars.is_empty() {
        return f(env);
    }
    if domain.is_empty() {
        return Ok(None);
    }
    let mut idx = vec![0usize; vars.len()];
    for v in vars {
        env.insert(v.clone(), domain[0]);
    }
    loop {
        if let Some(r) = f(env)? {
            return Ok(Some(r));
        }
        let mut k = vars.len();
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < domain.len() {
                env.insert(vars[k].clone(), domain[idx[k]]);
                break;
            }
            idx[k] = 0;
            env.insert(vars[k].clone(), domain[0]);
        }
    }
}

fn listed(vars: &[String], env: &Assignment) -> Vec<(String, ModelElement)> {
    vars.iter().map(|v| (v.clone(), env[v])).collect()
}

/// Bounded satisfaction check of a formula or clause set.
///
/// `params` interprets constants (such as `eta`) and free variables that
/// should not be quantified. Remaining free variables are read universally.
pub fn holds_bounded<'a>(
    structure: StructureId,
    target: impl Into<Target<'a>>,
    params: &Assignment,
    bounds: &Bounds,
) -> Result<CheckReport, ModelError> {
    bounds.validate()?;
    let mut checker = Checker::new(structure, bounds);
    let mut checked = 0u64;
    let outcome = match target.into() {
        Target::Clauses(cs) => {
            let mut outcome = Outcome::HoldsAtBounds;
            for (i, c) in cs.iter().enumerate() {
                let vars: Vec<String> = c.vars().into_iter().filter(|v| !params.contains_key(v)).collect();
                let mut env = params.clone();
                let value_box = checker.value_box.clone();
                let bad = for_each_assignment(&vars, &value_box, &mut env, |env| {
                    checked += 1;
                    Ok((!checker.eval_clause(c, env)?).then(|| listed(&vars, env)))
                });
                match bad {
                    Ok(Some(assignment)) => {
                        outcome = Outcome::Violated { clause: Some(i), assignment };
                        break;
                    }
                    Ok(None) => {}
                    Err(ModelError::EvaluationCap) => {
                        outcome = Outcome::Unknown { reason: "evaluation cap reached".into(), assignment: vec![] };
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            outcome
        }
        Target::Formula(f) => {
            let free: Vec<String> = f.free_vars().into_iter().filter(|v| !params.contains_key(v)).collect();
            let closed = Formula::forall_many(&free, f.clone()).nnf();
            let mut vars = Vec::new();
            let mut body = &closed;
            while let Formula::Forall(x, b) = body {
                vars.push(x.clone());
                body = b;
            }
            let mut env = params.clone();
            let value_box = checker.value_box.clone();
            let mut first_unknown: Option<Vec<(String, ModelElement)>> = None;
            let res = for_each_assignment(&vars, &value_box, &mut env, |env| {
                checked += 1;
                let mut local = env.clone();
                Ok(match checker.eval(body, &mut local)? {
                    Tri::False => Some(listed(&vars, env)),
                    Tri::Unknown => {
                        first_unknown.get_or_insert_with(|| listed(&vars, env));
                        None
                    }
                    Tri::True => None,
                })
            });
            match res {
                Ok(Some(assignment)) => Outcome::Violated { clause: None, assignment },
                Ok(None) => match first_unknown {
                    Some(assignment) => Outcome::Unknown {
                        reason: "no existential witness within the witness bound".into(),
                        assignment,
                    },
                    None => Outcome::HoldsAtBounds,
                },
                Err(ModelError::EvaluationCap) => {
                    Outcome::Unknown { reason: "evaluation cap reached".into(), assignment: vec![] }
                }
                Err(e) => return Err(e),
            }
        }
    };
    Ok(CheckReport { structure, bounds: *bounds, outcome, assignments_checked: checked })
}

/// Searches the witness box for values of `vars` making the quantifier-free
/// or NNF formula `body` true under `env`.
pub fn find_witness(
    structure: StructureId,
    vars: &[String],
    body: &Formula,
    env: &Assignment,
    bounds: &Bounds,
) -> Result<Option<Vec<ModelElement>>, ModelError> {
    let mut checker = Checker::new(structure, bounds);
    let body = body.nnf();
    let witness_box = checker.witness_box.clone();
    let mut env = env.clone();
    for_each_assignment(vars, &witness_box, &mut env, |env| {
        let mut local = env.clone();
        Ok((checker.eval(&body, &mut local)? == Tri::True).then(|| vars.iter().map(|v| env[v]).collect()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_clause_set, parse_formula, Language};

    #[test]
    fn successor_has_no_fixed_point_counterexample() {
        let f = parse_formula("s(x) = x", &Language::default()).unwrap();
        let r = holds_bounded(StructureId::N, &f, &Assignment::new(), &Bounds::new(5, 5)).unwrap();
        assert_eq!(
            r.outcome,
            Outcome::Violated { clause: None, assignment: vec![("x".into(), ModelElement::standard(0))] }
        );
    }

    #[test]
    fn commutativity_fails_in_m2() {
        let c = parse_clause_set("[x + y = y + x]", &Language::default()).unwrap();
        let params = Assignment::new();
        let r = holds_bounded(StructureId::M(1), &c, &params, &Bounds::new(5, 5)).unwrap();
        assert!(r.holds());
        let r = holds_bounded(StructureId::M(2), &c, &params, &Bounds::new(5, 5)).unwrap();
        match r.outcome {
            Outcome::Violated { assignment, .. } => {
                assert_eq!(assignment[0].1, ModelElement::new(1, 0));
                assert_eq!(assignment[1].1, ModelElement::new(2, 0));
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn existentials_are_three_valued() {
        let lang = Language::default();
        let even = parse_formula("exists y. x = y + y", &lang).unwrap();
        let r = holds_bounded(StructureId::N, &even, &Assignment::new(), &Bounds::new(4, 10)).unwrap();
        assert!(matches!(r.outcome, Outcome::Unknown { .. }));
        let total = parse_formula("exists y. x = y + y | x = s(y + y)", &lang).unwrap();
        let r = holds_bounded(StructureId::N, &total, &Assignment::new(), &Bounds::new(10, 10)).unwrap();
        assert!(r.holds());
        assert!(Bounds::new(0, 1).validate().is_err());
    }
}
