//! Evaluation oracles and formula generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use clause_cycles::descent::component_vars;
use clause_cycles::models::{Assignment, ModelElement, StructureId};
use clause_cycles::normalize::Component;
use clause_cycles::syntax::{
    cls_all, instantiate_eta, numeral, parse_clause_set, Atom, ClauseSet, Formula, Language, Term,
};
use clause_cycles::theories::{axiom_b, axioms_b, example_cycle_c};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Value of a term in ℕ; `None` if a variable is unassigned.
pub fn nat(t: &Term, env: &BTreeMap<String, u64>) -> Option<u64> {
    match t {
        Term::Var(x) => env.get(x).copied(),
        Term::App(f, args) => match (f.as_str(), args.as_slice()) {
            ("0", []) => Some(0),
            ("s", [a]) => Some(nat(a, env)? + 1),
            ("p", [a]) => Some(nat(a, env)?.saturating_sub(1)),
            ("+", [a, b]) => Some(nat(a, env)? + nat(b, env)?),
            _ => panic!("unexpected symbol {f}"),
        },
    }
}

fn flatten_and<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
    match f {
        Formula::And(fs) => fs.iter().for_each(|g| flatten_and(g, out)),
        _ => out.push(f),
    }
}

fn literal_of(f: &Formula) -> Option<(&Term, &Term, bool)> {
    match f {
        Formula::Atom(Atom::Eq(a, b)) => Some((a, b, true)),
        Formula::Not(inner) => match &**inner {
            Formula::Atom(Atom::Eq(a, b)) => Some((a, b, false)),
            _ => None,
        },
        _ => None,
    }
}

/// Bounded truth in ℕ of an NNF formula. Existential witnesses are searched
/// up to `w`, except that a variable fixed by an equation with all other
/// variables assigned takes its forced value.
pub fn holds_nnf(f: &Formula, env: &mut BTreeMap<String, u64>, w: u64) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::And(fs) => fs.iter().all(|g| holds_nnf(g, env, w)),
        Formula::Or(fs) => fs.iter().any(|g| holds_nnf(g, env, w)),
        Formula::Exists(..) => {
            let mut vars = Vec::new();
            let mut body = f;
            while let Formula::Exists(x, b) = body {
                vars.push(x.clone());
                body = b;
            }
            let saved: Vec<_> = vars.iter().map(|v| (v.clone(), env.remove(v))).collect();
            let r = search(&vars, body, env, w);
            for (v, old) in saved {
                match old {
                    Some(x) => env.insert(v, x),
                    None => env.remove(&v),
                };
            }
            r
        }
        _ => {
            let (a, b, pos) = literal_of(f).unwrap_or_else(|| panic!("not an NNF literal: {f:?}"));
            (nat(a, env).expect("assigned") == nat(b, env).expect("assigned")) == pos
        }
    }
}

fn linear(t: &Term, y: &str, env: &mut BTreeMap<String, u64>) -> Option<(i64, i64)> {
    if t.contains_symbol("p") {
        return None;
    }
    env.insert(y.to_string(), 0);
    let c = nat(t, env)? as i64;
    env.insert(y.to_string(), 1);
    let a = nat(t, env)? as i64 - c;
    env.remove(y);
    Some((a, c))
}

/// Value of a p-free term with unassigned variables read as 0, which is
/// its least value since such terms are monotone.
fn least(t: &Term, env: &BTreeMap<String, u64>) -> Option<u64> {
    match t {
        Term::Var(x) => Some(env.get(x).copied().unwrap_or(0)),
        Term::App(f, args) => match (f.as_str(), args.as_slice()) {
            ("0", []) => Some(0),
            ("s", [a]) => Some(least(a, env)? + 1),
            ("+", [a, b]) => Some(least(a, env)? + least(b, env)?),
            _ => None,
        },
    }
}

struct Conjunct<'a> {
    formula: &'a Formula,
    vars: Vec<String>,
}

fn conjunct(f: &Formula) -> Conjunct<'_> {
    Conjunct { formula: f, vars: f.free_vars() }
}

fn search(vars: &[String], body: &Formula, env: &mut BTreeMap<String, u64>, w: u64) -> bool {
    let mut flat = Vec::new();
    flatten_and(body, &mut flat);
    let conj: Vec<Conjunct> = flat.into_iter().map(conjunct).collect();
    search_conj(vars, &conj, env, w)
}

fn search_conj(vars: &[String], conj: &[Conjunct], env: &mut BTreeMap<String, u64>, w: u64) -> bool {
    let open: Vec<&String> =
        vars.iter().filter(|v| !env.contains_key(*v) && conj.iter().any(|c| c.vars.contains(v))).collect();
    if open.is_empty() {
        return conj.iter().all(|c| holds_nnf(c.formula, env, w));
    }
    let mut forced: Option<(String, u64)> = None;
    for c in conj {
        let Some((a, b, pos)) = literal_of(c.formula) else { continue };
        let missing: Vec<&String> = c.vars.iter().filter(|v| !env.contains_key(*v)).collect();
        if missing.is_empty() {
            if (nat(a, env).unwrap() == nat(b, env).unwrap()) != pos {
                return false;
            }
            continue;
        }
        if !pos {
            continue;
        }
        for (one, other) in [(a, b), (b, a)] {
            if let (Some(lo), Some(v)) = (least(one, env), nat(other, env)) {
                if lo > v {
                    return false;
                }
            }
        }
        if forced.is_some() || missing.len() != 1 || !vars.contains(missing[0]) {
            continue;
        }
        let y = missing[0].clone();
        // A side without `y` may contain `p`; its value is a constant.
        let side = |t: &Term, env: &mut BTreeMap<String, u64>| {
            linear(t, &y, env).or_else(|| nat(t, env).map(|v| (0, v as i64)))
        };
        if let (Some((a1, c1)), Some((a2, c2))) = (side(a, env), side(b, env)) {
            if a1 == a2 {
                if c1 != c2 {
                    return false;
                }
                continue;
            }
            let (num, den) = (c2 - c1, a1 - a2);
            if num % den != 0 || num / den < 0 {
                return false;
            }
            forced = Some((y, (num / den) as u64));
        } else if matches!(a, Term::Var(v) if *v == y) && !b.vars().contains(&y) {
            forced = Some((y, nat(b, env).unwrap()));
        } else if matches!(b, Term::Var(v) if *v == y) && !a.vars().contains(&y) {
            forced = Some((y, nat(a, env).unwrap()));
        }
    }
    if forced.is_none() {
        if let Some(i) = conj.iter().position(|c| matches!(c.formula, Formula::Or(_))) {
            let Formula::Or(gs) = conj[i].formula else { unreachable!() };
            return gs.iter().any(|g| {
                let mut flat = Vec::new();
                flatten_and(g, &mut flat);
                let mut parts: Vec<Conjunct> = conj
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, c)| Conjunct { formula: c.formula, vars: c.vars.clone() })
                    .collect();
                parts.extend(flat.into_iter().map(conjunct));
                search_conj(vars, &parts, env, w)
            });
        }
    }
    let (y, candidates): (String, Vec<u64>) = match forced {
        Some((y, v)) => (y, vec![v]),
        None => (open[0].clone(), (0..=w).collect()),
    };
    for v in candidates {
        env.insert(y.clone(), v);
        if search_conj(vars, conj, env, w) {
            env.remove(&y);
            return true;
        }
    }
    env.remove(&y);
    false
}

pub const WITNESS: u64 = 60;

/// Bounded truth of `f` in ℕ at the given values of its free variables.
pub fn holds_n(f: &Formula, values: &[(String, u64)]) -> bool {
    let mut env: BTreeMap<String, u64> = values.iter().cloned().collect();
    holds_nnf(&f.nnf(), &mut env, WITNESS)
}

/// Truth table of `f` over `[0..=max]^n` for the variables `vars`.
pub fn table(f: &Formula, vars: &[String], max: u64) -> Vec<bool> {
    grid(vars.len(), max).iter().map(|p| holds_n(f, &zip(vars, p))).collect()
}

/// `f` with every variable of `vars` replaced by `s^shift` of itself.
pub fn shifted(f: &Formula, vars: &[String], shift: u64) -> Formula {
    let map = vars.iter().map(|x| (x.clone(), Term::succ_n(shift, Term::var(x.clone())))).collect();
    f.substitute(&map)
}

pub fn zip(vars: &[String], values: &[u64]) -> Vec<(String, u64)> {
    vars.iter().cloned().zip(values.iter().copied()).collect()
}

pub fn grid(n: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|p| (0..=max).map(move |v| [p.clone(), vec![v]].concat())).collect();
    }
    out
}

/// Brute-force truth of `f` in a structure; existentials range over `domain`.
pub fn holds_in(s: StructureId, f: &Formula, env: &mut Assignment, domain: &[ModelElement]) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(a) => s.eval_atom(env, a).unwrap(),
        Formula::Not(g) => !holds_in(s, g, env, domain),
        Formula::And(fs) => fs.iter().all(|g| holds_in(s, g, env, domain)),
        Formula::Or(fs) => fs.iter().any(|g| holds_in(s, g, env, domain)),
        Formula::Implies(a, b) => !holds_in(s, a, env, domain) || holds_in(s, b, env, domain),
        Formula::Iff(a, b) => holds_in(s, a, env, domain) == holds_in(s, b, env, domain),
        Formula::Exists(x, body) | Formula::Forall(x, body) => {
            let saved = env.remove(x);
            let exists = matches!(f, Formula::Exists(..));
            let mut r = !exists;
            for e in domain {
                env.insert(x.clone(), *e);
                if holds_in(s, body, env, domain) == exists {
                    r = exists;
                    break;
                }
            }
            match saved {
                Some(e) => env.insert(x.clone(), e),
                None => env.remove(x),
            };
            r
        }
    }
}

/// Random term over `{0, s, p, +}` with numerals up to 3.
pub fn random_term(rng: &mut ChaCha8Rng, vars: &[String], depth: u32, with_p: bool) -> Term {
    if depth == 0 || rng.gen_bool(0.4) {
        return if rng.gen_bool(0.7) {
            Term::var(vars[rng.gen_range(0..vars.len())].clone())
        } else {
            numeral(rng.gen_range(0..=3))
        };
    }
    match rng.gen_range(0..if with_p { 3 } else { 2 }) {
        0 => Term::plus(random_term(rng, vars, depth - 1, with_p), random_term(rng, vars, depth - 1, with_p)),
        1 => Term::succ(random_term(rng, vars, depth - 1, with_p)),
        _ => Term::pred(random_term(rng, vars, depth - 1, with_p)),
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng, vars: &[String], depth: u32, with_p: bool) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        let a = Formula::eq(random_term(rng, vars, 2, with_p), random_term(rng, vars, 2, with_p));
        return if rng.gen_bool(0.3) { Formula::not(a) } else { a };
    }
    let a = random_matrix(rng, vars, depth - 1, with_p);
    let b = random_matrix(rng, vars, depth - 1, with_p);
    match rng.gen_range(0..4) {
        0 => Formula::And(vec![a, b]),
        1 => Formula::Or(vec![a, b]),
        2 => Formula::implies(a, b),
        _ => Formula::not(Formula::And(vec![a, b])),
    }
}

/// Random prenex existential formula with the given free variables, at most
/// three bound variables and numerals up to 3.
pub fn random_exists_formula(rng: &mut ChaCha8Rng, free: &[String], with_p: bool) -> Formula {
    let bound: Vec<String> = (0..rng.gen_range(0..=3)).map(|i| format!("y{}", i + 1)).collect();
    let vars: Vec<String> = free.iter().chain(bound.iter()).cloned().collect();
    Formula::exists_many(&bound, random_matrix(rng, &vars, 2, with_p))
}

/// Runs every normalization stage on `phi` and compares each stage with its
/// input on `[0..=max]^n` in ℕ. Also checks the syntactic guarantees and the
/// measure log.
pub fn check_pipeline(phi: &Formula, free: &[String], max: u64) -> Result<(), String> {
    use clause_cycles::normalize::*;
    let reference = table(phi, free, max);
    let err = |e: NormalizeError| e.to_string();

    let u = unnest(phi).map_err(err)?;
    if !is_unnested(&u) {
        return Err(format!("unnest output has nested atoms: {u}"));
    }
    if table(&u, free, max) != reference {
        return Err(format!("unnest changed the meaning of {phi}: {u}"));
    }

    let e = eliminate_p(phi).map_err(err)?;
    if !is_p_free(&e) {
        return Err(format!("eliminate_p left p in {e}"));
    }
    if table(&e, free, max) != reference {
        return Err(format!("eliminate_p changed the meaning of {phi}: {e}"));
    }

    let comps = to_components(phi).map_err(err)?;
    let disj = Formula::or(comps.iter().map(Component::to_formula).collect());
    if comps.iter().any(|c| !c.is_p_free()) {
        return Err(format!("component with p: {disj}"));
    }
    if table(&disj, free, max) != reference {
        return Err(format!("components of {phi} differ: {disj}"));
    }

    let mut guarded = Vec::new();
    for c in &comps {
        let el = eliminate_ud_literals(c).map_err(err)?;
        if !el.measures_decrease() {
            return Err(format!("measure does not decrease for {c}: {:?}", el.log));
        }
        for o in &el.outputs {
            let classes = o.core.classes().map_err(err)?;
            if !o.core.is_zero_free() || !o.core.is_p_free() || classes.iter().any(|k| k.pattern != SidePattern::UpUp) {
                return Err(format!("bad core {}", o.core));
            }
            if o.guard.iter().any(|(x, _)| o.core.occurring_free().contains(x)) {
                return Err(format!("core {} mentions a guarded variable", o.core));
            }
            let mut parts: Vec<Formula> =
                o.guard.iter().map(|(x, k)| Formula::eq(Term::var(x.clone()), numeral(*k))).collect();
            parts.push(o.core.to_formula());
            guarded.push(Formula::and(parts));
        }
    }
    let guarded = Formula::or(guarded);
    if table(&guarded, free, max) != reference {
        return Err(format!("guarded cores of {phi} differ: {guarded}"));
    }

    let st = shift_and_strip(phi, free).map_err(err)?;
    let f = &st.formula;
    if !is_zero_free(f) || !is_p_free(f) {
        return Err(format!("stripped formula not 0-free and p-free: {f}"));
    }
    if !matches!(f.classify(), clause_cycles::syntax::QuantClass::Exists(_) | clause_cycles::syntax::QuantClass::Open) {
        return Err(format!("stripped formula not existential: {f}"));
    }
    let shifted_phi = shifted(phi, free, st.shift);
    if table(&shifted_phi, free, max) != table(f, free, max) {
        return Err(format!("{phi} shifted by {} differs from {f}", st.shift));
    }
    Ok(())
}

/// Value of a term in ℤ with `s` as `+1`.
pub fn z_term(t: &Term, env: &BTreeMap<&str, i64>) -> i64 {
    match t {
        Term::Var(x) => env[x.as_str()],
        Term::App(g, args) => match (g.as_str(), args.as_slice()) {
            ("0", []) => 0,
            ("s", [a]) => z_term(a, env) + 1,
            ("+", [a, b]) => z_term(a, env) + z_term(b, env),
            _ => panic!("not linear: {t}"),
        },
    }
}

/// The matrix of `chi` under a full vector, evaluated term by term.
pub fn z_holds(chi: &Component, vector: &[i64]) -> bool {
    let vars = component_vars(chi).unwrap();
    let env: BTreeMap<&str, i64> = vars.iter().map(String::as_str).zip(vector.iter().copied()).collect();
    chi.literals.iter().all(|l| {
        let Atom::Eq(a, b) = &l.atom else { panic!("predicate literal in {chi}") };
        (z_term(a, &env) == z_term(b, &env)) == l.positive
    })
}

fn set(text: &str) -> ClauseSet {
    parse_clause_set(text, &Language::default()).unwrap()
}

fn with_b(text: &str) -> ClauseSet {
    cls_all(axioms_b().axioms()).unwrap().union(&set(text))
}

/// Cycles used for the characterization round trip.
pub fn cycle_corpus() -> Vec<(&'static str, ClauseSet)> {
    let pred = Language::induction_language();
    vec![
        ("parity", example_cycle_c()),
        ("parity with associativity", example_cycle_c().union(&cls_all(axiom_b(3).axioms()).unwrap())),
        ("shifted parity", instantiate_eta(&example_cycle_c(), &Term::succ(Term::eta()))),
        ("successor fixed point", with_b("[eta = s(eta)]")),
        ("predecessor fixed point", with_b("[eta != 0]\n[p(eta) = eta]")),
        ("self disequality", set("[eta != eta]")),
        ("closed contradiction", set("[0 != 0]")),
        ("inconsistent background", with_b("[s(0) = 0]")),
        ("double is one", with_b("[eta + eta = s(0)]\n[x + y = y + x]")),
        ("predicate descent", parse_clause_set("[P(0)]\n[~P(x), P(s(x))]\n[~P(eta)]", &pred).unwrap()),
        ("predicate chain", parse_clause_set("[P(0)]\n[~P(x), P(s(x))]\n[~P(s(eta))]", &pred).unwrap()),
    ]
}
