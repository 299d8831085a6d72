use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use super::evidence;
use super::instantiate::{self, Outcome};
use super::trace::ProofTrace;
use super::verdict::{Budget, Verdict};
use super::EngineError;
use crate::models::{ModelElement, StructureId};
use crate::syntax::{
    clausify_skolem, cnf_matrix, numeral, Clause, ClauseSet, Formula, Language, QuantClass, Term, PLUS, PRED, SUCC,
    ZERO,
};
use crate::theories::{axioms_b, Theory};

/// Prefix of the constants that replace negated universal variables.
pub const SKOLEM_PREFIX: &str = "sk";

fn first_free_index<'a>(symbols: impl IntoIterator<Item = &'a String>) -> usize {
    symbols
        .into_iter()
        .filter_map(|s| s.strip_prefix(SKOLEM_PREFIX).and_then(|n| n.parse::<usize>().ok()))
        .map(|n| n + 1)
        .max()
        .unwrap_or(0)
}

/// Refutation search on `inputs`, then evidence search if that fails.
fn decide(inputs: &[Clause], budget: &Budget, start: Instant) -> Verdict {
    match instantiate::refute(inputs, budget) {
        Outcome::Refuted(r) => Verdict::Valid(ProofTrace { refutations: vec![r] }),
        Outcome::Unknown(why) => match evidence::search(inputs, budget, start) {
            Some(ev) => Verdict::Refuted(ev),
            None => Verdict::Unknown(why),
        },
    }
}

/// Whether `C` is unsatisfiable.
///
/// `Valid` carries a replayable refutation, `Refuted` a structure that
/// satisfies every clause on a finite box.
pub fn check_unsat(c: &ClauseSet, budget: &Budget) -> Result<Verdict, EngineError> {
    budget.validate()?;
    Ok(decide(c.clauses(), budget, Instant::now()))
}

/// An equivalent clause set: tautologies dropped, clauses condensed and
/// subsumed clauses removed.
pub fn reduce_redundancy(c: &ClauseSet) -> ClauseSet {
    ClauseSet::new(instantiate::preprocess(c.clauses()).into_iter().map(|w| w.clause))
}

fn merged_signature(sets: &[&ClauseSet]) -> Result<(), EngineError> {
    let mut lang = Language { functions: BTreeMap::new(), predicates: BTreeMap::new(), eta: false };
    for s in sets {
        let (functions, predicates) = s.signature();
        let other = Language { functions, predicates, eta: false };
        lang = lang.merge(&other).map_err(|e| EngineError::LanguageMismatch(e.to_string()))?;
    }
    Ok(())
}

/// Ground clauses of the negation of one clause, with its variables
/// replaced by fresh constants.
fn negate_clause(c: &Clause, start: usize) -> Vec<Clause> {
    let sigma: BTreeMap<String, Term> = c
        .vars()
        .into_iter()
        .enumerate()
        .map(|(i, v)| (v, Term::constant(format!("{SKOLEM_PREFIX}{}", start + i))))
        .collect();
    c.literals().iter().map(|l| Clause::unit(l.subst(&sigma).negated())).collect()
}

/// Whether `premises ⊨ conclusion`, checked clause by clause.
pub fn check_entails(premises: &ClauseSet, conclusion: &ClauseSet, budget: &Budget) -> Result<Verdict, EngineError> {
    budget.validate()?;
    merged_signature(&[premises, conclusion])?;
    let (pf, _) = premises.signature();
    let (cf, _) = conclusion.signature();
    let start_index = first_free_index(pf.keys().chain(cf.keys()));
    let mut refutations = Vec::new();
    for c in conclusion.iter() {
        let start = Instant::now();
        let mut inputs = premises.clauses().to_vec();
        inputs.extend(negate_clause(c, start_index));
        match decide(&inputs, budget, start) {
            Verdict::Valid(mut t) => refutations.append(&mut t.refutations),
            Verdict::Unknown(why) => return Ok(Verdict::Unknown(format!("{c}: {why}"))),
            refuted => return Ok(refuted),
        }
    }
    Ok(Verdict::Valid(ProofTrace { refutations }))
}

/// Whether `T ⊢ φ`, for `φ` whose negated universal closure Skolemizes with
/// constants only (open, `∀₁`, `∃₁` formulas and implications between them).
pub fn prove(theory: &Theory, phi: &Formula, budget: &Budget) -> Result<Verdict, EngineError> {
    budget.validate()?;
    let (functions, predicates) = phi.signature();
    theory
        .language
        .clone()
        .with_eta()
        .check_symbols(&functions, &predicates)
        .map_err(|e| EngineError::LanguageMismatch(e.to_string()))?;
    let premises = theory.clauses()?;
    let (pf, _) = premises.signature();
    let start_index = first_free_index(pf.keys().chain(functions.keys()));
    let negation = Formula::not(phi.universal_closure());
    let (negated, _) = clausify_skolem(&negation, SKOLEM_PREFIX, start_index)?;
    let mut inputs = premises.clauses().to_vec();
    inputs.extend(negated);
    Ok(decide(&inputs, budget, Instant::now()))
}

/// Truth value in `N` of a ground quantifier-free `L_LA` sentence.
pub fn decide_ground(sigma: &Formula) -> Result<bool, EngineError> {
    if !sigma.is_quantifier_free() {
        return Err(EngineError::Fragment(format!("{sigma} is not quantifier-free")));
    }
    if let Some(x) = sigma.free_vars().first() {
        return Err(EngineError::NonGround(format!("free variable {x} in {sigma}")));
    }
    let (functions, predicates) = sigma.signature();
    Language::linear_arithmetic()
        .check_symbols(&functions, &predicates)
        .map_err(|e| EngineError::LanguageMismatch(e.to_string()))?;
    Ok(eval_n(sigma))
}

fn eval_n(f: &Formula) -> bool {
    let env = BTreeMap::new();
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(a) => StructureId::N.eval_atom(&env, a).expect("checked L_LA sentence"),
        Formula::Not(g) => !eval_n(g),
        Formula::And(fs) => fs.iter().all(eval_n),
        Formula::Or(fs) => fs.iter().any(eval_n),
        Formula::Implies(a, b) => !eval_n(a) || eval_n(b),
        Formula::Iff(a, b) => eval_n(a) == eval_n(b),
        Formula::Forall(..) | Formula::Exists(..) => unreachable!("quantifier-free"),
    }
}

/// Proves an `∃₁` `L_LA` sentence from `B` by finding a witness in `N` up to
/// `witness_bound` and refuting `B ∪ {¬σ}` with the witness instance.
pub fn prove_exists1_from_b(sigma: &Formula, witness_bound: u64) -> Result<Verdict, EngineError> {
    match sigma.classify() {
        QuantClass::Open | QuantClass::Exists(1) => {}
        c => return Err(EngineError::Fragment(format!("{sigma} is {c}, expected an ∃₁ sentence"))),
    }
    if let Some(x) = sigma.free_vars().first() {
        return Err(EngineError::NonGround(format!("free variable {x} in {sigma}")));
    }
    let (functions, predicates) = sigma.signature();
    Language::linear_arithmetic()
        .check_symbols(&functions, &predicates)
        .map_err(|e| EngineError::LanguageMismatch(e.to_string()))?;
    let (prefix, matrix) = sigma.strip_prefix();
    let vars: Vec<String> = prefix.into_iter().map(|(_, x)| x).collect();
    let Some(values) = scan_witness(&vars, matrix, witness_bound) else {
        return Ok(Verdict::Unknown(format!("no witness in N with values up to {witness_bound}")));
    };
    let b = axioms_b();
    let mut inputs: Vec<Clause> = b.clauses()?.clauses().to_vec();
    let mut instances = Vec::new();
    let witness: BTreeMap<String, Term> = vars.iter().cloned().zip(values.iter().map(|&v| numeral(v))).collect();
    for raw in cnf_matrix(&Formula::not(matrix.clone()).nnf())? {
        let (clause, renaming) = Clause::with_renaming(raw);
        let tau: BTreeMap<String, Term> =
            renaming.iter().map(|(orig, canon)| (canon.clone(), witness[orig].clone())).collect();
        if !clause.is_ground() {
            instances.push((inputs.len(), tau));
        }
        inputs.push(clause);
    }
    let ground_matrix = matrix.substitute(&witness);
    let mut seeds = Seeds::new(&inputs);
    for a in ground_matrix.atoms() {
        for t in a.terms() {
            seeds.eval(t);
        }
    }
    seeds.numerals();
    instances.extend(seeds.instances);
    let depth = ground_matrix.atoms().len().min(12);
    match instantiate::refute_with_instances(&inputs, &instances, depth) {
        Some(r) => Ok(Verdict::Valid(ProofTrace { refutations: vec![r] })),
        None => Ok(Verdict::Unknown("witness found but no refutation was reconstructed".into())),
    }
}

fn scan_witness(vars: &[String], matrix: &Formula, bound: u64) -> Option<Vec<u64>> {
    let domain: Vec<ModelElement> = (0..=bound as i64).map(ModelElement::standard).collect();
    let mut env = BTreeMap::new();
    crate::models::for_each_assignment(vars, &domain, &mut env, |env| {
        let sigma: BTreeMap<String, Term> = vars.iter().map(|v| (v.clone(), numeral(env[v].value as u64))).collect();
        Ok(eval_n(&matrix.substitute(&sigma)).then(|| vars.iter().map(|v| env[v].value as u64).collect()))
    })
    .ok()
    .flatten()
}

/// Instances of `p(s(x)) = x`, `x + 0 = x` and `x + s(y) = s(x + y)` that
/// evaluate ground terms to numerals.
struct Seeds {
    a3: usize,
    a4: usize,
    a5: usize,
    max: u64,
    seen: BTreeSet<(usize, Vec<u64>)>,
    instances: Vec<(usize, BTreeMap<String, Term>)>,
}

impl Seeds {
    fn new(inputs: &[Clause]) -> Seeds {
        let find = |text: &str| {
            let c = crate::syntax::parse_clause(text, &Language::linear_arithmetic()).expect("axiom clause");
            inputs.iter().position(|d| *d == c).expect("axiom of B present")
        };
        Seeds {
            a3: find("[p(s(x)) = x]"),
            a4: find("[x + 0 = x]"),
            a5: find("[x + s(y) = s(x + y)]"),
            max: 0,
            seen: BTreeSet::new(),
            instances: Vec::new(),
        }
    }

    fn add(&mut self, input: usize, values: &[u64]) {
        if self.seen.insert((input, values.to_vec())) {
            let names = ["x", "y"];
            let tau = names.iter().zip(values).map(|(x, &v)| (x.to_string(), numeral(v))).collect();
            self.instances.push((input, tau));
        }
    }

    fn eval(&mut self, t: &Term) -> u64 {
        let v = match t {
            Term::App(f, args) => match (f.as_str(), args.as_slice()) {
                (ZERO, []) => 0,
                (SUCC, [a]) => self.eval(a) + 1,
                (PRED, [a]) => {
                    let n = self.eval(a);
                    if n > 0 {
                        self.add(self.a3, &[n - 1]);
                    }
                    n.saturating_sub(1)
                }
                (PLUS, [a, b]) => {
                    let (n, m) = (self.eval(a), self.eval(b));
                    for j in 1..=m {
                        self.add(self.a5, &[n, j - 1]);
                    }
                    self.add(self.a4, &[n]);
                    n + m
                }
                _ => unreachable!("checked L_LA term"),
            },
            Term::Var(_) => unreachable!("ground term"),
        };
        self.max = self.max.max(v);
        v
    }

    /// Predecessor instances separating the numerals up to the largest value seen.
    fn numerals(&mut self) {
        for i in 0..self.max {
            self.add(self.a3, &[i]);
        }
    }
}
