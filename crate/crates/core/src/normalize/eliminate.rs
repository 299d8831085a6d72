use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::literals::{classify_literal, eliminate_zero_term, normal_literal, split_solutions, up_down_sides};
use super::{Component, NormalizeError};
use crate::syntax::{numeral, Atom, FreshVars, Literal, Term, PRED};

/// Largest number of components one rewriting step may produce.
pub const STEP_OUTPUT_LIMIT: usize = 4096;
/// Largest number of rewriting steps for one component.
pub const STEP_LIMIT: usize = 100_000;

/// Termination measure of the literal elimination.
///
/// Steps are compared on `(negative, bound, free, complex_positive)`. The
/// substitution of a free variable can create complex literals, so the
/// free-variable count has to be compared before the complex count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Measure {
    /// Occurrences of negative literals.
    pub negative: usize,
    /// Existentially bound variables.
    pub bound: usize,
    /// Occurrences of complex positive `↑↓` literals.
    pub complex_positive: usize,
    /// Free variables occurring in the literals.
    pub free: usize,
}

impl Measure {
    pub fn of(c: &Component) -> Result<Measure, NormalizeError> {
        let mut m = Measure { negative: 0, bound: c.bound.len(), complex_positive: 0, free: 0 };
        for l in &c.literals {
            let class = classify_literal(l)?;
            m.negative += usize::from(!l.positive);
            m.complex_positive += usize::from(class.is_complex_positive());
        }
        m.free = c.occurring_free().len();
        Ok(m)
    }

    pub fn key(&self) -> (usize, usize, usize, usize) {
        (self.negative, self.bound, self.free, self.complex_positive)
    }

    /// Strictly smaller in the lexicographic order of `key`.
    pub fn precedes(&self, other: &Measure) -> bool {
        self.key() < other.key()
    }
}

impl PartialOrd for Measure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Measure {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(#- {}, #E {}, #+c {}, #FV {})", self.negative, self.bound, self.complex_positive, self.free)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RewriteRule {
    /// `u != k` becomes `u = s^(k+1)(w)` or one of `u = 0, ..., u = k-1`.
    NegativeUpDown,
    /// A complex positive `↑↓` literal is split into simple ones.
    ComplexPositive,
    /// `x = k` with `x` free becomes a guard and is substituted.
    FreeSimple,
    /// `y = k` with `y` bound is substituted and its quantifier dropped.
    BoundSimple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteStep {
    pub rule: RewriteRule,
    pub literal: String,
    pub input: String,
    pub before: Measure,
    pub outputs: Vec<String>,
    pub after: Vec<Measure>,
}

impl RewriteStep {
    pub fn decreases(&self) -> bool {
        self.after.iter().all(|m| m.precedes(&self.before))
    }
}

/// A core component under a guard `x_1 = k_1 & ... & x_n = k_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuardedCore {
    pub guard: Vec<(String, u64)>,
    pub core: Component,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elimination {
    pub outputs: Vec<GuardedCore>,
    pub log: Vec<RewriteStep>,
}

impl Elimination {
    pub fn measures_decrease(&self) -> bool {
        self.log.iter().all(RewriteStep::decreases)
    }
}

/// Normal literals, ground literals decided, `t = t` dropped and unused
/// quantifiers removed. `None` if some literal is false.
pub(crate) fn simplify(c: &Component) -> Result<Option<Component>, NormalizeError> {
    let mut literals: Vec<Literal> = Vec::new();
    for l in &c.literals {
        let l = normal_literal(l)?;
        let Atom::Eq(a, b) = &l.atom else { unreachable!("normal literals are equations") };
        if l.is_ground() || a == b {
            if (a == b) == l.positive {
                continue;
            }
            return Ok(None);
        }
        if !literals.contains(&l) {
            literals.push(l);
        }
    }
    let mut used = Vec::new();
    literals.iter().for_each(|l| l.atom.vars_into(&mut used));
    let bound = c.bound.iter().filter(|y| used.contains(y)).cloned().collect();
    Ok(Some(Component { free: c.free.clone(), bound, literals }))
}

enum Step {
    Rewrite(RewriteRule, usize, Vec<Component>, Option<(String, u64)>),
    Done,
}

struct Eliminator {
    fresh: FreshVars,
    outputs: Vec<GuardedCore>,
    log: Vec<RewriteStep>,
}

/// Equivalent disjunction of guarded cores. Each core is 0-free and `p`-free
/// and contains only literals with variables on both sides.
pub fn eliminate_ud_literals(chi: &Component) -> Result<Elimination, NormalizeError> {
    for l in &chi.literals {
        if l.atom.terms().iter().any(|t| t.contains_symbol(PRED)) {
            return Err(NormalizeError::NotPFree(l.to_string()));
        }
    }
    let mut used = chi.to_formula().all_vars();
    used.extend(chi.free.iter().cloned());
    used.extend(chi.bound.iter().cloned());
    let mut e = Eliminator { fresh: FreshVars::new("w", used), outputs: Vec::new(), log: Vec::new() };
    if let Some(c) = simplify(chi)? {
        e.run(Vec::new(), c)?;
    }
    Ok(Elimination { outputs: e.outputs, log: e.log })
}

impl Eliminator {
    fn run(&mut self, guard: Vec<(String, u64)>, chi: Component) -> Result<(), NormalizeError> {
        let mut stack = vec![(guard, chi)];
        while let Some((guard, chi)) = stack.pop() {
            if self.log.len() >= STEP_LIMIT {
                return Err(NormalizeError::TooLarge(format!("more than {STEP_LIMIT} elimination steps")));
            }
            match self.step(&chi)? {
                Step::Done => {
                    let literals = chi
                        .literals
                        .iter()
                        .map(|l| {
                            let Atom::Eq(a, b) = &l.atom else { unreachable!() };
                            Ok(Literal {
                                atom: Atom::Eq(eliminate_zero_term(a)?, eliminate_zero_term(b)?),
                                positive: l.positive,
                            })
                        })
                        .collect::<Result<_, NormalizeError>>()?;
                    let core = Component { literals, ..chi };
                    if let Some(core) = simplify(&core)? {
                        self.outputs.push(GuardedCore { guard, core });
                    }
                }
                Step::Rewrite(rule, idx, results, new_guard) => {
                    let before = Measure::of(&chi)?;
                    let mut kept = Vec::new();
                    for r in results {
                        if let Some(r) = simplify(&r)? {
                            kept.push(r);
                        }
                    }
                    if kept.len() > STEP_OUTPUT_LIMIT {
                        return Err(NormalizeError::TooLarge(format!(
                            "one elimination step produced {} components",
                            kept.len()
                        )));
                    }
                    self.log.push(RewriteStep {
                        rule,
                        literal: chi.literals[idx].to_string(),
                        input: chi.to_string(),
                        before,
                        outputs: kept.iter().map(Component::to_string).collect(),
                        after: kept.iter().map(Measure::of).collect::<Result<_, _>>()?,
                    });
                    let mut guard = guard;
                    guard.extend(new_guard);
                    for r in kept.into_iter().rev() {
                        stack.push((guard.clone(), r));
                    }
                }
            }
        }
        Ok(())
    }

    fn step(&mut self, chi: &Component) -> Result<Step, NormalizeError> {
        let classes = chi.literals.iter().map(classify_literal).collect::<Result<Vec<_>, _>>()?;
        let pick = |p: &dyn Fn(usize) -> bool| (0..classes.len()).find(|&i| p(i));
        let without = |i: usize| {
            let mut lits = chi.literals.clone();
            lits.remove(i);
            lits
        };

        if let Some(i) = pick(&|i| classes[i].is_up_down() && !classes[i].positive) {
            let (u, k) = up_down_sides(&chi.literals[i]).expect("up-down literal");
            let rest = without(i);
            let w = self.fresh.fresh();
            let mut above = Component { literals: rest.clone(), ..chi.clone() };
            above.bound.push(w.clone());
            above.literals.push(Literal::eq(u.clone(), Term::succ_n(k + 1, Term::var(w))));
            let mut results = vec![above];
            results.extend((0..k).map(|j| {
                let mut lits = rest.clone();
                lits.push(Literal::eq(u.clone(), numeral(j)));
                Component { literals: lits, ..chi.clone() }
            }));
            if results.len() > STEP_OUTPUT_LIMIT {
                return Err(NormalizeError::TooLarge(format!(
                    "expanding {} produces more than {STEP_OUTPUT_LIMIT} components",
                    chi.literals[i]
                )));
            }
            return Ok(Step::Rewrite(RewriteRule::NegativeUpDown, i, results, None));
        }

        if let Some(i) = pick(&|i| classes[i].is_complex_positive()) {
            let (u, k) = up_down_sides(&chi.literals[i]).expect("up-down literal");
            let rest = without(i);
            let results = split_solutions(u, k)?
                .into_iter()
                .map(|sol| {
                    let mut lits = rest.clone();
                    lits.extend(sol.into_iter().map(|(z, m)| Literal::eq(Term::var(z), numeral(m))));
                    Component { literals: lits, ..chi.clone() }
                })
                .collect();
            return Ok(Step::Rewrite(RewriteRule::ComplexPositive, i, results, None));
        }

        let simple_var = |i: usize, bound: bool| {
            if !(classes[i].is_up_down() && classes[i].positive && classes[i].simple) {
                return None;
            }
            let (z, k) = up_down_sides(&chi.literals[i])?;
            let Term::Var(z) = z else { return None };
            (chi.bound.contains(z) == bound).then(|| (z.clone(), k))
        };
        for bound in [false, true] {
            if let Some((i, (z, k))) = (0..classes.len()).find_map(|i| simple_var(i, bound).map(|s| (i, s))) {
                let map = BTreeMap::from([(z.clone(), numeral(k))]);
                let literals = without(i).iter().map(|l| l.subst(&map)).collect();
                let mut c = Component { literals, ..chi.clone() };
                return Ok(if bound {
                    c.bound.retain(|y| *y != z);
                    Step::Rewrite(RewriteRule::BoundSimple, i, vec![c], None)
                } else {
                    c.free.retain(|x| *x != z);
                    Step::Rewrite(RewriteRule::FreeSimple, i, vec![c], Some((z, k)))
                });
            }
        }
        Ok(Step::Done)
    }
}
