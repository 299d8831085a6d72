//! Ground-instantiation saturation driver.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;
use std::time::Instant;

use super::ground::{Origin, Solver};
use super::trace::Refutation;
use super::verdict::Budget;
use crate::syntax::{match_literals, unify, Atom, Clause, Literal, Term, ZERO};

/// Case-split depth tried at the end of each instantiation phase.
pub const SPLIT_DEPTH: usize = 4;
/// Branches allowed per split search.
const SPLIT_BRANCHES: u64 = 64;

/// A preprocessed clause and the substitution relating it to its input.
#[derive(Debug, Clone)]
pub(crate) struct Working {
    pub clause: Clause,
    pub input: usize,
    /// Input clause variables to terms over `clause`'s variables.
    pub subst: BTreeMap<String, Term>,
}

impl Working {
    fn ground_origin(&self, tau: &BTreeMap<String, Term>) -> Origin {
        Origin { input: self.input, subst: self.subst.iter().map(|(v, t)| (v.clone(), t.subst(tau))).collect() }
    }
}

fn unify_atoms(a: &Atom, b: &Atom, flipped: bool) -> Option<BTreeMap<String, Term>> {
    let mut sigma = BTreeMap::new();
    let ok = match (a, b) {
        (Atom::Eq(l1, r1), Atom::Eq(l2, r2)) => {
            let (l2, r2) = if flipped { (r2, l2) } else { (l2, r2) };
            unify(l1, l2, &mut sigma) && unify(&r1.subst(&sigma), &r2.subst(&sigma), &mut sigma)
        }
        (Atom::Pred(p, xs), Atom::Pred(q, ys)) if p == q && xs.len() == ys.len() && !flipped => {
            let mut ok = true;
            for (x, y) in xs.iter().zip(ys) {
                if !unify(&x.subst(&sigma), &y.subst(&sigma), &mut sigma) {
                    ok = false;
                    break;
                }
            }
            ok
        }
        _ => false,
    };
    ok.then_some(sigma)
}

/// One condensation step: a factor of `w` that subsumes it.
fn condense_once(w: &Working) -> Option<Working> {
    let lits = w.clause.literals();
    for i in 0..lits.len() {
        for j in i + 1..lits.len() {
            if lits[i].positive != lits[j].positive {
                continue;
            }
            for flipped in [false, true] {
                let Some(sigma) = unify_atoms(&lits[i].atom, &lits[j].atom, flipped) else { continue };
                let raw: Vec<Literal> = lits.iter().map(|l| l.subst(&sigma)).collect();
                if match_literals(&raw, lits).is_none() {
                    continue;
                }
                let (clause, renaming) = Clause::with_renaming(raw);
                if clause.len() >= lits.len() {
                    continue;
                }
                let subst = w.subst.iter().map(|(v, t)| (v.clone(), t.subst(&sigma).rename_vars(&renaming))).collect();
                return Some(Working { clause, input: w.input, subst });
            }
        }
    }
    None
}

/// Tautology removal, condensation and subsumption among the inputs.
pub(crate) fn preprocess(inputs: &[Clause]) -> Vec<Working> {
    let mut work: Vec<Working> = Vec::new();
    for (i, c) in inputs.iter().enumerate() {
        if c.is_tautology() {
            continue;
        }
        let mut w = Working {
            clause: c.clone(),
            input: i,
            subst: c.vars().into_iter().map(|v| (v.clone(), Term::Var(v))).collect(),
        };
        while let Some(next) = condense_once(&w) {
            w = next;
        }
        work.push(w);
    }
    work.sort_by(|a, b| (a.clause.size(), &a.clause, a.input).cmp(&(b.clause.size(), &b.clause, b.input)));
    let mut kept: Vec<Working> = Vec::new();
    for w in work {
        if !kept.iter().any(|k| k.clause.subsumes(&w.clause)) {
            kept.push(w);
        }
    }
    kept
}

/// Terms available for instantiation, in creation order with their levels.
struct Pool {
    terms: Vec<Term>,
    levels: HashMap<Term, usize>,
    functions: Vec<(String, usize)>,
}

impl Pool {
    fn new(work: &[Working]) -> Pool {
        let mut ground = BTreeSet::new();
        let mut functions = BTreeMap::new();
        let mut predicates = BTreeMap::new();
        for w in work {
            for l in w.clause.literals() {
                for t in l.atom.terms() {
                    t.ground_subterms_into(&mut ground);
                    t.symbols_into(&mut functions);
                }
                if let Atom::Pred(p, args) = &l.atom {
                    predicates.insert(p.clone(), args.len());
                }
            }
        }
        for (f, &a) in &functions {
            if a == 0 {
                ground.insert(Term::constant(f.clone()));
            }
        }
        if ground.is_empty() {
            ground.insert(Term::constant(ZERO));
        }
        let terms: Vec<Term> = ground.into_iter().collect();
        let levels = terms.iter().map(|t| (t.clone(), 0)).collect();
        Pool { terms, levels, functions: functions.into_iter().filter(|(_, a)| *a > 0).collect() }
    }

    /// Adds all terms of level `d`. Returns `false` if `limit` was hit.
    fn grow(&mut self, d: usize, limit: usize) -> bool {
        let prev: Vec<usize> = (0..self.terms.len()).filter(|&i| self.levels[&self.terms[i]] < d).collect();
        let newest: Vec<bool> = prev.iter().map(|&i| self.levels[&self.terms[i]] + 1 == d).collect();
        for (f, arity) in self.functions.clone() {
            let mut idx = vec![0usize; arity];
            if prev.is_empty() {
                return true;
            }
            loop {
                if idx.iter().any(|&i| newest[i]) {
                    let t = Term::app(f.clone(), idx.iter().map(|&i| self.terms[prev[i]].clone()).collect());
                    if !self.levels.contains_key(&t) {
                        self.levels.insert(t.clone(), d);
                        self.terms.push(t);
                        if self.terms.len() > limit {
                            return false;
                        }
                    }
                }
                let mut k = arity;
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < prev.len() {
                        break;
                    }
                    idx[k] = 0;
                }
                if idx.iter().all(|&i| i == 0) {
                    break;
                }
            }
        }
        true
    }
}

pub(crate) enum Outcome {
    Refuted(Refutation),
    Unknown(String),
}

struct Limits {
    start: Instant,
    budget: Budget,
    inferences: u64,
}

impl Limits {
    fn exhausted(&mut self) -> Option<String> {
        if self.inferences >= self.budget.max_inferences {
            return Some(format!("inference budget of {} exhausted", self.budget.max_inferences));
        }
        if self.inferences.is_multiple_of(1024) && self.start.elapsed() > self.budget.time_limit() {
            return Some(format!("time cap of {}s reached", self.budget.time_cap));
        }
        None
    }
}

fn finish(inputs: &Rc<Vec<Clause>>, steps: Vec<super::trace::Step>) -> Outcome {
    Outcome::Refuted(Refutation { inputs: inputs.as_ref().clone(), steps })
}

fn try_splits(solver: &Solver, limits: &mut Limits, depth: usize) -> Option<Vec<super::trace::Step>> {
    let mut s = solver.clone();
    let found = s.refute(depth, SPLIT_BRANCHES);
    limits.inferences += s.splits;
    found
}

/// Searches for a refutation of `inputs` by ground instantiation.
pub(crate) fn refute(inputs: &[Clause], budget: &Budget) -> Outcome {
    let inputs = Rc::new(inputs.to_vec());
    let work = preprocess(&inputs);
    let mut limits = Limits { start: Instant::now(), budget: *budget, inferences: 0 };
    let mut solver = Solver::new(inputs.clone());
    for w in work.iter().filter(|w| w.clause.is_ground()) {
        solver.add_clause(w.clause.clone(), w.ground_origin(&BTreeMap::new()));
    }
    let mut pool = Pool::new(&work);
    let open: Vec<&Working> = work.iter().filter(|w| !w.clause.is_ground()).collect();
    let mut reason = String::from("no refutation up to the term depth limit");
    'phases: for d in 0..=budget.max_term_depth {
        let old = if d == 0 {
            0
        } else {
            let before = pool.terms.len();
            let remaining = (budget.max_inferences.saturating_sub(limits.inferences)) as usize;
            pool.grow(d, before + remaining.max(1));
            if pool.terms.len() == before {
                reason = "instantiation saturated without refutation".into();
                break;
            }
            before
        };
        let size = pool.terms.len();
        for w in &open {
            let vars = w.clause.vars();
            let k = vars.len();
            let mut idx = vec![0usize; k];
            let mut skipped: u64 = 0;
            'tuples: loop {
                if idx.iter().any(|&i| i >= old) {
                    if let Some(why) = limits.exhausted() {
                        reason = why;
                        solver.propagate();
                        break 'phases;
                    }
                    limits.inferences += 1;
                    let tau: BTreeMap<String, Term> =
                        vars.iter().cloned().zip(idx.iter().map(|&i| pool.terms[i].clone())).collect();
                    solver.add_clause(w.clause.subst(&tau), w.ground_origin(&tau));
                } else {
                    skipped += 1;
                    if skipped.is_multiple_of(1 << 20) && limits.start.elapsed() > budget.time_limit() {
                        reason = format!("time cap of {}s reached", budget.time_cap);
                        break 'phases;
                    }
                }
                let mut j = k;
                loop {
                    if j == 0 {
                        break 'tuples;
                    }
                    j -= 1;
                    idx[j] += 1;
                    if idx[j] < size {
                        break;
                    }
                    idx[j] = 0;
                }
            }
            solver.propagate();
            if solver.has_conflict() {
                let mut s = solver;
                let steps = s.refute(0, 0).expect("conflict yields a proof");
                return finish(&inputs, steps);
            }
        }
        if let Some(steps) = try_splits(&solver, &mut limits, SPLIT_DEPTH) {
            return finish(&inputs, steps);
        }
    }
    solver.propagate();
    if solver.has_conflict() {
        let steps = solver.refute(0, 0).expect("conflict yields a proof");
        return finish(&inputs, steps);
    }
    Outcome::Unknown(reason)
}

/// Refutes `inputs` using only the given ground instances and case splits.
pub(crate) fn refute_with_instances(
    inputs: &[Clause],
    instances: &[(usize, BTreeMap<String, Term>)],
    split_depth: usize,
) -> Option<Refutation> {
    let inputs_rc = Rc::new(inputs.to_vec());
    let mut solver = Solver::new(inputs_rc.clone());
    for (i, c) in inputs.iter().enumerate() {
        if c.is_ground() {
            solver.add_clause(c.clone(), Origin { input: i, subst: BTreeMap::new() });
        }
    }
    for (i, tau) in instances {
        solver.add_clause(inputs[*i].subst(tau), Origin { input: *i, subst: tau.clone() });
    }
    let steps = solver.refute(split_depth, 1 << split_depth.min(16))?;
    Some(Refutation { inputs: inputs.to_vec(), steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_clause, Language};

    fn cl(s: &str) -> Clause {
        parse_clause(s, &Language::default()).unwrap()
    }

    #[test]
    fn condensation_merges_variants() {
        let w = preprocess(&[cl("[x + y = y + x, z + u = u + z]")]);
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].clause, cl("[x + y = y + x]"));
        let back = Clause::new(cl("[x + y = y + x, z + u = u + z]").subst(&w[0].subst).literals().to_vec());
        assert_eq!(back, w[0].clause);
        let keep = preprocess(&[cl("[x = 0, y = #1]")]);
        assert_eq!(keep[0].clause.len(), 2);
    }

    #[test]
    fn subsumed_inputs_are_dropped() {
        let w = preprocess(&[cl("[x + 0 = x, eta = 0]"), cl("[x + 0 = x]"), cl("[x = x]")]);
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].input, 1);
    }

    #[test]
    fn refutes_ground_conflict() {
        let inputs = vec![cl("[x + x != 0]"), cl("[x + 0 = x]")];
        match refute(&inputs, &Budget::default()) {
            Outcome::Refuted(r) => r.replay().unwrap(),
            Outcome::Unknown(why) => panic!("{why}"),
        }
    }
}
