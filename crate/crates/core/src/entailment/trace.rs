use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{Atom, Clause, Literal, Term};

/// How a step's conclusion was obtained. Parent references are step indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Inference {
    /// An input clause of the refutation.
    Input { index: usize },
    /// `parent·σ`.
    Instance { parent: usize, substitution: BTreeMap<String, Term> },
    /// Rewrites the subterm at `position` of `literal` in `target` with the
    /// unit equation `equation`. The first position index selects the
    /// equation side or predicate argument.
    Paramodulation { equation: usize, target: usize, literal: usize, position: Vec<usize>, left_to_right: bool },
    /// Removes `literal` from `target` using the complementary unit clause.
    Resolution { unit: usize, target: usize, literal: usize },
    /// Removes a `t != t` literal.
    EqualityResolution { target: usize, literal: usize },
    /// Hypothesis of a case split branch.
    Assume { literal: Literal },
    /// Case split on `literal`: both branches derive the empty clause.
    Split { literal: Literal, positive: Vec<Step>, negative: Vec<Step> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub index: usize,
    pub inference: Inference,
    pub conclusion: Clause,
}

/// One derivation of the empty clause from `inputs`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Refutation {
    pub inputs: Vec<Clause>,
    pub steps: Vec<Step>,
}

/// Refutations backing a `Valid` verdict, one per checked obligation.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ProofTrace {
    pub refutations: Vec<Refutation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step}: {msg}")]
pub struct ReplayError {
    pub step: usize,
    pub msg: String,
}

impl ProofTrace {
    pub fn replay(&self) -> Result<(), ReplayError> {
        if self.refutations.is_empty() {
            return Err(ReplayError { step: 0, msg: "trace has no refutation".into() });
        }
        self.refutations.iter().try_for_each(Refutation::replay)
    }

    pub fn len(&self) -> usize {
        self.refutations.iter().map(Refutation::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All steps of all refutations, branches included, in order.
    pub fn all_steps(&self) -> Vec<&Step> {
        let mut out = Vec::new();
        for r in &self.refutations {
            collect(&r.steps, &mut out);
        }
        out
    }
}

fn collect<'a>(steps: &'a [Step], out: &mut Vec<&'a Step>) {
    for s in steps {
        if let Inference::Split { positive, negative, .. } = &s.inference {
            collect(positive, out);
            collect(negative, out);
        }
        out.push(s);
    }
}

impl Refutation {
    pub fn len(&self) -> usize {
        let mut out = Vec::new();
        collect(&self.steps, &mut out);
        out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-checks every step and that the last step derives the empty clause.
    pub fn replay(&self) -> Result<(), ReplayError> {
        let mut scope = BTreeMap::new();
        replay_steps(&self.inputs, &self.steps, &mut scope, None)?;
        match self.steps.last() {
            Some(s) if s.conclusion.is_empty() => Ok(()),
            Some(s) => Err(ReplayError { step: s.index, msg: "last step is not the empty clause".into() }),
            None => Err(ReplayError { step: 0, msg: "empty refutation".into() }),
        }
    }
}

fn replay_steps(
    inputs: &[Clause],
    steps: &[Step],
    scope: &mut BTreeMap<usize, Clause>,
    hypothesis: Option<&Literal>,
) -> Result<(), ReplayError> {
    for s in steps {
        let err = |msg: String| ReplayError { step: s.index, msg };
        if scope.contains_key(&s.index) {
            return Err(err("duplicate step index".into()));
        }
        let get = |i: usize| scope.get(&i).ok_or_else(|| err(format!("unknown parent {i}")));
        let expected = match &s.inference {
            Inference::Input { index } => {
                inputs.get(*index).cloned().ok_or_else(|| err(format!("no input {index}")))?
            }
            Inference::Instance { parent, substitution } => get(*parent)?.subst(substitution),
            Inference::Paramodulation { equation, target, literal, position, left_to_right } => {
                let eq = get(*equation)?;
                let (l, r) = match eq.literals() {
                    [Literal { atom: Atom::Eq(l, r), positive: true }] => (l, r),
                    _ => return Err(err(format!("step {equation} is not a unit equation"))),
                };
                let (from, to) = if *left_to_right { (l, r) } else { (r, l) };
                let tgt = get(*target)?;
                let lit = tgt.literals().get(*literal).ok_or_else(|| err("literal out of range".into()))?;
                if lit.atom.subterm(position) != Some(from) {
                    return Err(err(format!("no occurrence of {from} at {position:?} in {lit}")));
                }
                let atom = lit.atom.replace_at(position, to).expect("position checked");
                let mut lits = tgt.literals().to_vec();
                lits[*literal] = Literal { atom, positive: lit.positive };
                Clause::new(lits)
            }
            Inference::Resolution { unit, target, literal } => {
                let u = get(*unit)?;
                let tgt = get(*target)?;
                let lit = tgt.literals().get(*literal).ok_or_else(|| err("literal out of range".into()))?;
                match u.literals() {
                    [ul] if ul.complements(lit) => {}
                    _ => return Err(err(format!("step {unit} is not a unit complementary to {lit}"))),
                }
                remove(tgt, *literal)
            }
            Inference::EqualityResolution { target, literal } => {
                let tgt = get(*target)?;
                let lit = tgt.literals().get(*literal).ok_or_else(|| err("literal out of range".into()))?;
                if !lit.is_trivially_false() {
                    return Err(err(format!("{lit} is not of the form t != t")));
                }
                remove(tgt, *literal)
            }
            Inference::Assume { literal } => {
                if hypothesis != Some(literal) {
                    return Err(err(format!("assumption {literal} is not the branch hypothesis")));
                }
                Clause::unit(literal.clone())
            }
            Inference::Split { literal, positive, negative } => {
                for (branch, hyp) in [(positive, literal.clone()), (negative, literal.negated())] {
                    let mut inner = scope.clone();
                    replay_steps(inputs, branch, &mut inner, Some(&hyp))?;
                    if !branch.last().is_some_and(|b| b.conclusion.is_empty()) {
                        return Err(err(format!("branch on {hyp} does not close")));
                    }
                }
                Clause::empty()
            }
        };
        if expected != s.conclusion {
            return Err(err(format!("expected {expected}, trace says {}", s.conclusion)));
        }
        scope.insert(s.index, s.conclusion.clone());
    }
    Ok(())
}

fn remove(c: &Clause, i: usize) -> Clause {
    Clause::new(c.literals().iter().enumerate().filter(|(j, _)| *j != i).map(|(_, l)| l.clone()))
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:>4}. {}  ", self.index, self.conclusion)?;
        match &self.inference {
            Inference::Input { index } => write!(f, "input {index}"),
            Inference::Instance { parent, substitution } => {
                write!(f, "instance of {parent} with ")?;
                for (i, (x, t)) in substitution.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x} := {t}")?;
                }
                Ok(())
            }
            Inference::Paramodulation { equation, target, literal, position, left_to_right } => write!(
                f,
                "rewrite {target} with {equation}{} in literal {literal} at {position:?}",
                if *left_to_right { "" } else { " (right to left)" }
            ),
            Inference::Resolution { unit, target, literal } => {
                write!(f, "resolve {target} with {unit} on literal {literal}")
            }
            Inference::EqualityResolution { target, literal } => {
                write!(f, "equality resolution on {target}, literal {literal}")
            }
            Inference::Assume { literal } => write!(f, "assume {literal}"),
            Inference::Split { literal, .. } => write!(f, "split on {literal}"),
        }
    }
}

fn write_steps(f: &mut fmt::Formatter<'_>, steps: &[Step], indent: usize) -> fmt::Result {
    for s in steps {
        if let Inference::Split { literal, positive, negative } = &s.inference {
            writeln!(f, "{:indent$}case {literal}:", "")?;
            write_steps(f, positive, indent + 2)?;
            writeln!(f, "{:indent$}case {}:", "", literal.negated())?;
            write_steps(f, negative, indent + 2)?;
        }
        writeln!(f, "{:indent$}{s}", "")?;
    }
    Ok(())
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_steps(f, &self.steps, 0)
    }
}

impl fmt::Display for ProofTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.refutations.iter().enumerate() {
            if self.refutations.len() > 1 {
                writeln!(f, "refutation {i}:")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_clause, Language};

    fn cl(s: &str) -> Clause {
        parse_clause(s, &Language::default()).unwrap()
    }

    fn step(index: usize, inference: Inference, conclusion: &str) -> Step {
        Step { index, inference, conclusion: cl(conclusion) }
    }

    #[test]
    fn replays_small_refutation() {
        let x0: BTreeMap<String, Term> = [("x".to_string(), Term::zero())].into_iter().collect();
        let r = Refutation {
            inputs: vec![cl("[x + x != 0]"), cl("[x + 0 = x]")],
            steps: vec![
                step(0, Inference::Input { index: 0 }, "[x + x != 0]"),
                step(1, Inference::Instance { parent: 0, substitution: x0.clone() }, "[0 + 0 != 0]"),
                step(2, Inference::Input { index: 1 }, "[x + 0 = x]"),
                step(3, Inference::Instance { parent: 2, substitution: x0 }, "[0 + 0 = 0]"),
                step(
                    4,
                    Inference::Paramodulation {
                        equation: 3,
                        target: 1,
                        literal: 0,
                        position: vec![0],
                        left_to_right: true,
                    },
                    "[0 != 0]",
                ),
                step(5, Inference::EqualityResolution { target: 4, literal: 0 }, "[]"),
            ],
        };
        r.replay().unwrap();
        let mut bad = r.clone();
        bad.steps[4].conclusion = cl("[0 = 0]");
        assert_eq!(bad.replay().unwrap_err().step, 4);
    }

    #[test]
    fn split_branches_are_scoped() {
        let a = Literal::eq(Term::eta(), Term::zero());
        let r = Refutation {
            inputs: vec![cl("[eta = 0, eta != 0]")],
            steps: vec![step(
                1,
                Inference::Split {
                    literal: a.clone(),
                    positive: vec![
                        step(2, Inference::Assume { literal: a.clone() }, "[eta = 0]"),
                        step(3, Inference::Input { index: 0 }, "[eta = 0, eta != 0]"),
                        step(4, Inference::Resolution { unit: 2, target: 3, literal: 1 }, "[eta = 0]"),
                        step(5, Inference::Assume { literal: a.negated() }, "[]"),
                    ],
                    negative: vec![],
                },
                "[]",
            )],
        };
        assert!(r.replay().is_err());
    }
}
