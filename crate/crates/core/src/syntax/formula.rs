use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::clause::{Atom, Literal};
use super::term::{write_term, Term};

/// First-order formulas. `True` and `False` are the empty conjunction and disjunction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

/// Quantifier class of a formula (Open, `∃_k`, `∀_k`), read off its prenex shape.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "class", content = "k", rename_all = "snake_case")]
pub enum QuantClass {
    Open,
    Exists(usize),
    Forall(usize),
    Unclassified,
}

impl fmt::Display for QuantClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantClass::Open => write!(f, "open"),
            QuantClass::Exists(k) => write!(f, "exists_{k}"),
            QuantClass::Forall(k) => write!(f, "forall_{k}"),
            QuantClass::Unclassified => write!(f, "unclassified"),
        }
    }
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Atom(Atom::Eq(a, b))
    }

    pub fn neq(a: Term, b: Term) -> Formula {
        Formula::not(Formula::eq(a, b))
    }

    pub fn pred(p: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Atom(Atom::Pred(p.into(), args))
    }

    pub fn literal(l: &Literal) -> Formula {
        let a = Formula::Atom(l.atom.clone());
        if l.positive {
            a
        } else {
            Formula::not(a)
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    /// Conjunction; the empty conjunction is `True` and singletons are unwrapped.
    pub fn and(mut fs: Vec<Formula>) -> Formula {
        match fs.len() {
            0 => Formula::True,
            1 => fs.pop().unwrap(),
            _ => Formula::And(fs),
        }
    }

    /// Disjunction; the empty disjunction is `False` and singletons are unwrapped.
    pub fn or(mut fs: Vec<Formula>) -> Formula {
        match fs.len() {
            0 => Formula::False,
            1 => fs.pop().unwrap(),
            _ => Formula::Or(fs),
        }
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(x: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(x.into(), Box::new(body))
    }

    pub fn exists(x: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(x.into(), Box::new(body))
    }

    pub fn forall_many(xs: &[String], body: Formula) -> Formula {
        xs.iter().rev().fold(body, |acc, x| Formula::forall(x.clone(), acc))
    }

    pub fn exists_many(xs: &[String], body: Formula) -> Formula {
        xs.iter().rev().fold(body, |acc, x| Formula::exists(x.clone(), acc))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(a) => a.is_quantifier_free(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(Formula::is_quantifier_free),
            Formula::Implies(a, b) | Formula::Iff(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    fn free_vars_into(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => {
                let mut vs = Vec::new();
                a.vars_into(&mut vs);
                for v in vs {
                    if !bound.contains(&v) && !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
            Formula::Not(a) => a.free_vars_into(bound, out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.free_vars_into(bound, out)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.free_vars_into(bound, out);
                b.free_vars_into(bound, out);
            }
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                bound.push(x.clone());
                body.free_vars_into(bound, out);
                bound.pop();
            }
        }
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.free_vars_into(&mut Vec::new(), &mut out);
        out
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_all_vars(&mut out);
        out
    }

    fn visit_all_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => {
                let mut vs = Vec::new();
                a.vars_into(&mut vs);
                out.extend(vs);
            }
            Formula::Not(a) => a.visit_all_vars(out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.visit_all_vars(out)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit_all_vars(out);
                b.visit_all_vars(out);
            }
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                out.insert(x.clone());
                body.visit_all_vars(out);
            }
        }
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.visit_atoms(&mut |a| out.push(a));
        out
    }

    fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a Atom)) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => f(a),
            Formula::Not(a) => a.visit_atoms(f),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|g| g.visit_atoms(f)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
            Formula::Forall(_, body) | Formula::Exists(_, body) => body.visit_atoms(f),
        }
    }

    pub fn contains_symbol(&self, sym: &str) -> bool {
        self.atoms().iter().any(|a| a.terms().iter().any(|t| t.contains_symbol(sym)))
    }

    pub fn signature(&self) -> (BTreeMap<String, usize>, BTreeMap<String, usize>) {
        let mut funs = BTreeMap::new();
        let mut preds = BTreeMap::new();
        for a in self.atoms() {
            if let Atom::Pred(p, args) = a {
                preds.entry(p.clone()).or_insert(args.len());
            }
            for t in a.terms() {
                t.symbols_into(&mut funs);
            }
        }
        (funs, preds)
    }

    /// Applies `f` to every term of every atom. Not capture-aware.
    pub fn map_terms(&self, f: &mut impl FnMut(&Term) -> Term) -> Formula {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Atom(a) => Formula::Atom(a.map_terms(f)),
            Formula::Not(a) => Formula::not(a.map_terms(f)),
            Formula::And(fs) => Formula::And(fs.iter().map(|g| g.map_terms(f)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|g| g.map_terms(f)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.map_terms(f), b.map_terms(f)),
            Formula::Iff(a, b) => Formula::iff(a.map_terms(f), b.map_terms(f)),
            Formula::Forall(x, body) => Formula::forall(x.clone(), body.map_terms(f)),
            Formula::Exists(x, body) => Formula::exists(x.clone(), body.map_terms(f)),
        }
    }

    /// Replaces every occurrence of the constant `name` by `by`, renaming bound
    /// variables that would capture variables of `by`.
    pub fn replace_constant(&self, name: &str, by: &Term) -> Formula {
        let avoid: BTreeSet<String> = by.vars().into_iter().collect();
        self.rename_bound_avoiding(&avoid).map_terms(&mut |t| t.replace_constant(name, by))
    }

    /// Renames bound variables that clash with `avoid`.
    pub fn rename_bound_avoiding(&self, avoid: &BTreeSet<String>) -> Formula {
        if avoid.is_empty() {
            return self.clone();
        }
        let mut used = self.all_vars();
        used.extend(avoid.iter().cloned());
        self.rename_bound_rec(avoid, &mut used)
    }

    fn rename_bound_rec(&self, avoid: &BTreeSet<String>, used: &mut BTreeSet<String>) -> Formula {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => self.clone(),
            Formula::Not(a) => Formula::not(a.rename_bound_rec(avoid, used)),
            Formula::And(fs) => Formula::And(fs.iter().map(|g| g.rename_bound_rec(avoid, used)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|g| g.rename_bound_rec(avoid, used)).collect()),
            Formula::Implies(a, b) => {
                Formula::implies(a.rename_bound_rec(avoid, used), b.rename_bound_rec(avoid, used))
            }
            Formula::Iff(a, b) => Formula::iff(a.rename_bound_rec(avoid, used), b.rename_bound_rec(avoid, used)),
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                let (x2, body2) = if avoid.contains(x) {
                    let fresh = fresh_name(x, used);
                    used.insert(fresh.clone());
                    let b = body.substitute(&BTreeMap::from([(x.clone(), Term::var(fresh.clone()))]));
                    (fresh, b)
                } else {
                    (x.clone(), (**body).clone())
                };
                let inner = body2.rename_bound_rec(avoid, used);
                if matches!(self, Formula::Forall(..)) {
                    Formula::forall(x2, inner)
                } else {
                    Formula::exists(x2, inner)
                }
            }
        }
    }

    /// Simultaneous capture-avoiding substitution of free variables.
    pub fn substitute(&self, map: &BTreeMap<String, Term>) -> Formula {
        if map.is_empty() {
            return self.clone();
        }
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Atom(a) => Formula::Atom(a.map_terms(&mut |t| t.subst(map))),
            Formula::Not(a) => Formula::not(a.substitute(map)),
            Formula::And(fs) => Formula::And(fs.iter().map(|g| g.substitute(map)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|g| g.substitute(map)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.substitute(map), b.substitute(map)),
            Formula::Iff(a, b) => Formula::iff(a.substitute(map), b.substitute(map)),
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                let is_forall = matches!(self, Formula::Forall(..));
                let mut inner = map.clone();
                inner.remove(x);
                let free = body.free_vars();
                inner.retain(|k, _| free.contains(k));
                let rebuild = |x: String, b: Formula| {
                    if is_forall {
                        Formula::forall(x, b)
                    } else {
                        Formula::exists(x, b)
                    }
                };
                if inner.is_empty() {
                    return self.clone();
                }
                let range_vars: BTreeSet<String> = inner.values().flat_map(|t| t.vars()).collect();
                if range_vars.contains(x) {
                    let mut used = body.all_vars();
                    used.extend(range_vars);
                    used.extend(inner.keys().cloned());
                    let fresh = fresh_name(x, &used);
                    let mut m = inner;
                    m.insert(x.clone(), Term::var(fresh.clone()));
                    rebuild(fresh, body.substitute(&m))
                } else {
                    rebuild(x.clone(), body.substitute(&inner))
                }
            }
        }
    }

    pub fn subst1(&self, x: &str, t: &Term) -> Formula {
        self.substitute(&BTreeMap::from([(x.to_string(), t.clone())]))
    }

    pub fn universal_closure(&self) -> Formula {
        Formula::forall_many(&self.free_vars(), self.clone())
    }

    pub fn existential_closure(&self) -> Formula {
        Formula::exists_many(&self.free_vars(), self.clone())
    }

    pub fn classify(&self) -> QuantClass {
        let mut blocks: Vec<bool> = Vec::new();
        let mut f = self;
        loop {
            match f {
                Formula::Forall(_, body) | Formula::Exists(_, body) => {
                    let is_forall = matches!(f, Formula::Forall(..));
                    if blocks.last() != Some(&is_forall) {
                        blocks.push(is_forall);
                    }
                    f = body;
                }
                _ => break,
            }
        }
        if !f.is_quantifier_free() {
            return QuantClass::Unclassified;
        }
        match blocks.first() {
            None => QuantClass::Open,
            Some(true) => QuantClass::Forall(blocks.len()),
            Some(false) => QuantClass::Exists(blocks.len()),
        }
    }

    /// Negation normal form: only `And`, `Or`, quantifiers and literals remain.
    pub fn nnf(&self) -> Formula {
        self.nnf_pol(true)
    }

    fn nnf_pol(&self, pos: bool) -> Formula {
        match self {
            Formula::True => {
                if pos {
                    Formula::True
                } else {
                    Formula::False
                }
            }
            Formula::False => {
                if pos {
                    Formula::False
                } else {
                    Formula::True
                }
            }
            Formula::Atom(_) => {
                if pos {
                    self.clone()
                } else {
                    Formula::not(self.clone())
                }
            }
            Formula::Not(a) => a.nnf_pol(!pos),
            Formula::And(fs) => {
                let parts = fs.iter().map(|g| g.nnf_pol(pos)).collect();
                if pos {
                    Formula::And(parts)
                } else {
                    Formula::Or(parts)
                }
            }
            Formula::Or(fs) => {
                let parts = fs.iter().map(|g| g.nnf_pol(pos)).collect();
                if pos {
                    Formula::Or(parts)
                } else {
                    Formula::And(parts)
                }
            }
            Formula::Implies(a, b) => {
                if pos {
                    Formula::Or(vec![a.nnf_pol(false), b.nnf_pol(true)])
                } else {
                    Formula::And(vec![a.nnf_pol(true), b.nnf_pol(false)])
                }
            }
            Formula::Iff(a, b) => {
                if pos {
                    Formula::And(vec![
                        Formula::Or(vec![a.nnf_pol(false), b.nnf_pol(true)]),
                        Formula::Or(vec![a.nnf_pol(true), b.nnf_pol(false)]),
                    ])
                } else {
                    Formula::Or(vec![
                        Formula::And(vec![a.nnf_pol(true), b.nnf_pol(false)]),
                        Formula::And(vec![a.nnf_pol(false), b.nnf_pol(true)]),
                    ])
                }
            }
            Formula::Forall(x, body) => {
                if pos {
                    Formula::forall(x.clone(), body.nnf_pol(true))
                } else {
                    Formula::exists(x.clone(), body.nnf_pol(false))
                }
            }
            Formula::Exists(x, body) => {
                if pos {
                    Formula::exists(x.clone(), body.nnf_pol(true))
                } else {
                    Formula::forall(x.clone(), body.nnf_pol(false))
                }
            }
        }
    }

    /// True when the NNF contains no universal quantifier.
    pub fn is_logically_existential(&self) -> bool {
        fn no_forall(f: &Formula) -> bool {
            match f {
                Formula::Forall(..) => false,
                Formula::Exists(_, b) | Formula::Not(b) => no_forall(b),
                Formula::And(fs) | Formula::Or(fs) => fs.iter().all(no_forall),
                _ => true,
            }
        }
        no_forall(&self.nnf())
    }

    /// True when the NNF contains no existential quantifier.
    pub fn is_logically_universal(&self) -> bool {
        fn no_exists(f: &Formula) -> bool {
            match f {
                Formula::Exists(..) => false,
                Formula::Forall(_, b) | Formula::Not(b) => no_exists(b),
                Formula::And(fs) | Formula::Or(fs) => fs.iter().all(no_exists),
                _ => true,
            }
        }
        no_exists(&self.nnf())
    }

    /// Prenex form of a formula whose NNF uses a single kind of quantifier.
    ///
    /// Bound variables are renamed apart so the quantifiers can be pulled out.
    /// Returns `None` if both kinds occur.
    pub fn prenex_single_kind(&self) -> Option<Formula> {
        let nnf = self.nnf();
        let mut used = nnf.all_vars();
        let mut prefix: Vec<String> = Vec::new();
        let mut kind: Option<bool> = None;
        let matrix = pull_quantifiers(&nnf, &mut used, &mut prefix, &mut kind, &BTreeSet::new())?;
        Some(match kind {
            Some(true) => Formula::forall_many(&prefix, matrix),
            _ => Formula::exists_many(&prefix, matrix),
        })
    }

    /// Splits a prenex formula into its quantifier prefix and matrix.
    pub fn strip_prefix(&self) -> (Vec<(bool, String)>, &Formula) {
        let mut out = Vec::new();
        let mut f = self;
        loop {
            match f {
                Formula::Forall(x, b) => {
                    out.push((true, x.clone()));
                    f = b;
                }
                Formula::Exists(x, b) => {
                    out.push((false, x.clone()));
                    f = b;
                }
                _ => return (out, f),
            }
        }
    }

    pub fn precedence(&self) -> u8 {
        match self {
            Formula::Forall(..) | Formula::Exists(..) => 0,
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(_) => 3,
            Formula::And(_) => 4,
            Formula::Not(_) => 5,
            Formula::True | Formula::False | Formula::Atom(_) => 6,
        }
    }
}

fn pull_quantifiers(
    f: &Formula,
    used: &mut BTreeSet<String>,
    prefix: &mut Vec<String>,
    kind: &mut Option<bool>,
    scope: &BTreeSet<String>,
) -> Option<Formula> {
    match f {
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            let is_forall = matches!(f, Formula::Forall(..));
            if kind.is_some_and(|k| k != is_forall) {
                return None;
            }
            *kind = Some(is_forall);
            let (name, body) = if prefix.contains(x) || scope.contains(x) {
                let fresh = fresh_name(x, used);
                used.insert(fresh.clone());
                let b = body.subst1(x, &Term::var(fresh.clone()));
                (fresh, b)
            } else {
                (x.clone(), (**body).clone())
            };
            prefix.push(name);
            pull_quantifiers(&body, used, prefix, kind, scope)
        }
        Formula::And(fs) | Formula::Or(fs) => {
            let mut scope2 = scope.clone();
            for g in fs {
                scope2.extend(g.free_vars());
            }
            let parts =
                fs.iter().map(|g| pull_quantifiers(g, used, prefix, kind, &scope2)).collect::<Option<Vec<_>>>()?;
            Some(if matches!(f, Formula::And(_)) { Formula::And(parts) } else { Formula::Or(parts) })
        }
        _ => Some(f.clone()),
    }
}

/// `base_1`, `base_2`, ... whichever is first not in `used`.
pub fn fresh_name(base: &str, used: &BTreeSet<String>) -> String {
    let stem = match base.rfind('_') {
        Some(i) if base[i + 1..].chars().all(|c| c.is_ascii_digit()) && i + 1 < base.len() => &base[..i],
        _ => base,
    };
    (1..).map(|i| format!("{stem}_{i}")).find(|n| !used.contains(n)).unwrap()
}

/// Deterministic generator of fresh variables from a reserved family.
#[derive(Clone, Debug)]
pub struct FreshVars {
    prefix: String,
    next: usize,
    used: BTreeSet<String>,
}

impl FreshVars {
    pub fn new(prefix: &str, used: BTreeSet<String>) -> FreshVars {
        FreshVars { prefix: prefix.to_string(), next: 0, used }
    }

    pub fn avoid(&mut self, name: &str) {
        self.used.insert(name.to_string());
    }

    pub fn fresh(&mut self) -> String {
        loop {
            let n = format!("{}{}", self.prefix, self.next);
            self.next += 1;
            if self.used.insert(n.clone()) {
                return n;
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self)
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula, parent_prec: u8) -> fmt::Result {
    if child.precedence() <= parent_prec {
        write!(f, "(")?;
        write_formula(f, child)?;
        write!(f, ")")
    } else {
        write_formula(f, child)
    }
}

fn write_formula(f: &mut fmt::Formatter<'_>, phi: &Formula) -> fmt::Result {
    match phi {
        Formula::True => write!(f, "0 = 0"),
        Formula::False => write!(f, "0 != 0"),
        Formula::Atom(Atom::Eq(a, b)) => {
            write_term(f, a, false)?;
            write!(f, " = ")?;
            write_term(f, b, false)
        }
        Formula::Atom(Atom::Pred(..)) => {
            if let Formula::Atom(a) = phi {
                write!(f, "{}", Literal { atom: a.clone(), positive: true })?;
            }
            Ok(())
        }
        Formula::Not(inner) => match &**inner {
            Formula::Atom(Atom::Eq(a, b)) => {
                write_term(f, a, false)?;
                write!(f, " != ")?;
                write_term(f, b, false)
            }
            other => {
                write!(f, "~")?;
                write_child(f, other, 5)
            }
        },
        Formula::And(fs) | Formula::Or(fs) => {
            let (op, prec) = if matches!(phi, Formula::And(_)) { (" & ", 4) } else { (" | ", 3) };
            for (i, g) in fs.iter().enumerate() {
                if i > 0 {
                    write!(f, "{op}")?;
                }
                write_child(f, g, prec)?;
            }
            Ok(())
        }
        Formula::Implies(a, b) => {
            write_child(f, a, 2)?;
            write!(f, " -> ")?;
            write_child(f, b, 2)
        }
        Formula::Iff(a, b) => {
            write_child(f, a, 1)?;
            write!(f, " <-> ")?;
            write_child(f, b, 1)
        }
        Formula::Forall(x, body) => {
            write!(f, "forall {x}. ")?;
            write_formula(f, body)
        }
        Formula::Exists(x, body) => {
            write!(f, "exists {x}. ")?;
            write_formula(f, body)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &str) -> Term {
        Term::var(x)
    }

    #[test]
    fn simultaneous_substitution() {
        let phi = Formula::eq(v("x"), v("y"));
        let m = BTreeMap::from([("x".to_string(), v("y")), ("y".to_string(), v("x"))]);
        assert_eq!(phi.substitute(&m), Formula::eq(v("y"), v("x")));
        let s = phi.subst1("x", &Term::succ(v("y")));
        assert_eq!(s, Formula::eq(Term::succ(v("y")), v("y")));
    }

    #[test]
    fn capture_is_avoided() {
        let phi = Formula::exists("y", Formula::eq(v("x"), v("y")));
        let out = phi.subst1("x", &v("y"));
        match &out {
            Formula::Exists(b, body) => {
                assert_ne!(b, "y");
                assert_eq!(**body, Formula::eq(v("y"), v(b)));
            }
            _ => panic!("{out}"),
        }
    }

    #[test]
    fn classification() {
        let open = Formula::eq(v("x"), Term::zero());
        assert_eq!(open.classify(), QuantClass::Open);
        let e1 = Formula::exists("y", Formula::eq(v("x"), Term::plus(v("y"), v("y"))));
        assert_eq!(e1.classify(), QuantClass::Exists(1));
        let a2 = Formula::forall("x", Formula::exists("y", Formula::eq(v("x"), v("y"))));
        assert_eq!(a2.classify(), QuantClass::Forall(2));
        let nonprenex = Formula::Or(vec![open, e1]);
        assert_eq!(nonprenex.classify(), QuantClass::Unclassified);
        assert!(nonprenex.is_logically_existential());
        let p = nonprenex.prenex_single_kind().unwrap();
        assert_eq!(p.classify(), QuantClass::Exists(1));
    }
}
