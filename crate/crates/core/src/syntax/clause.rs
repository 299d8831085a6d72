use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::term::{write_term, Term};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Atom {
    Eq(Term, Term),
    Pred(String, Vec<Term>),
}

/// A possibly negated atom. Field order makes complementary literals adjacent.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Atom {
    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Atom::Eq(a, b) => vec![a, b],
            Atom::Pred(_, args) => args.iter().collect(),
        }
    }

    pub fn map_terms(&self, f: &mut impl FnMut(&Term) -> Term) -> Atom {
        match self {
            Atom::Eq(a, b) => Atom::Eq(f(a), f(b)),
            Atom::Pred(p, args) => Atom::Pred(p.clone(), args.iter().map(&mut *f).collect()),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.terms().iter().all(|t| t.is_ground())
    }

    pub fn vars_into(&self, out: &mut Vec<String>) {
        self.terms().iter().for_each(|t| t.vars_into(out));
    }

    /// Subterm at a position whose first index selects the equation side or predicate argument.
    pub fn subterm(&self, pos: &[usize]) -> Option<&Term> {
        let (&i, rest) = pos.split_first()?;
        self.terms().get(i)?.subterm(rest)
    }

    pub fn replace_at(&self, pos: &[usize], by: &Term) -> Option<Atom> {
        let (&i, rest) = pos.split_first()?;
        match self {
            Atom::Eq(a, b) => match i {
                0 => Some(Atom::Eq(a.replace_at(rest, by)?, b.clone())),
                1 => Some(Atom::Eq(a.clone(), b.replace_at(rest, by)?)),
                _ => None,
            },
            Atom::Pred(p, args) => {
                let mut args = args.clone();
                let slot = args.get_mut(i)?;
                *slot = slot.replace_at(rest, by)?;
                Some(Atom::Pred(p.clone(), args))
            }
        }
    }

    /// Equality atoms up to symmetry.
    pub fn same_as(&self, other: &Atom) -> bool {
        match (self, other) {
            (Atom::Eq(a, b), Atom::Eq(c, d)) => (a == c && b == d) || (a == d && b == c),
            _ => self == other,
        }
    }
}

impl Literal {
    pub fn eq(a: Term, b: Term) -> Literal {
        Literal { atom: Atom::Eq(a, b), positive: true }
    }

    pub fn neq(a: Term, b: Term) -> Literal {
        Literal { atom: Atom::Eq(a, b), positive: false }
    }

    pub fn pred(p: impl Into<String>, args: Vec<Term>, positive: bool) -> Literal {
        Literal { atom: Atom::Pred(p.into(), args), positive }
    }

    pub fn negated(&self) -> Literal {
        Literal { atom: self.atom.clone(), positive: !self.positive }
    }

    pub fn is_ground(&self) -> bool {
        self.atom.is_ground()
    }

    /// Puts the side containing a variable on the left when only one side has one.
    pub fn oriented(self) -> Literal {
        match self.atom {
            Atom::Eq(a, b) if a.is_ground() && !b.is_ground() => {
                Literal { atom: Atom::Eq(b, a), positive: self.positive }
            }
            atom => Literal { atom, positive: self.positive },
        }
    }

    pub fn complements(&self, other: &Literal) -> bool {
        self.positive != other.positive && self.atom.same_as(&other.atom)
    }

    pub fn map_terms(&self, mut f: impl FnMut(&Term) -> Term) -> Literal {
        Literal { atom: self.atom.map_terms(&mut f), positive: self.positive }
    }

    pub fn subst(&self, map: &BTreeMap<String, Term>) -> Literal {
        self.map_terms(|t| t.subst(map))
    }

    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.atom.vars_into(&mut out);
        out
    }

    /// `t = t` literals.
    pub fn is_trivially_true(&self) -> bool {
        matches!(&self.atom, Atom::Eq(a, b) if self.positive && a == b)
    }

    /// `t != t` literals.
    pub fn is_trivially_false(&self) -> bool {
        matches!(&self.atom, Atom::Eq(a, b) if !self.positive && a == b)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.atom {
            Atom::Eq(a, b) => {
                write_term(f, a, false)?;
                write!(f, "{}", if self.positive { " = " } else { " != " })?;
                write_term(f, b, false)
            }
            Atom::Pred(p, args) => {
                if !self.positive {
                    write!(f, "~")?;
                }
                write!(f, "{p}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write_term(f, a, false)?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Canonical variable names used for clause variables.
pub fn canonical_var(i: usize) -> String {
    const NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
    if i < NAMES.len() {
        NAMES[i].to_string()
    } else {
        format!("x{i}")
    }
}

/// A finite set of literals with variables renamed to the canonical family.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Clause {
    literals: Vec<Literal>,
}

fn skeleton(t: &Term) -> Term {
    match t {
        Term::Var(_) => Term::Var(String::new()),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(skeleton).collect()),
    }
}

impl Clause {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Clause {
        Clause::with_renaming(literals).0
    }

    /// `Clause::new` together with the variable renaming it applied.
    pub fn with_renaming(literals: impl IntoIterator<Item = Literal>) -> (Clause, BTreeMap<String, String>) {
        let mut lits: Vec<Literal> = literals.into_iter().map(Literal::oriented).collect();
        lits.sort_by_cached_key(|l| l.map_terms(skeleton));
        let mut order = Vec::new();
        for l in &lits {
            l.atom.vars_into(&mut order);
        }
        let renaming: BTreeMap<String, String> =
            order.iter().enumerate().map(|(i, v)| (v.clone(), canonical_var(i))).collect();
        let mut lits: Vec<Literal> =
            lits.iter().map(|l| l.map_terms(|t| t.rename_vars(&renaming)).oriented()).collect();
        lits.sort();
        lits.dedup();
        (Clause { literals: lits }, renaming)
    }

    pub fn empty() -> Clause {
        Clause { literals: Vec::new() }
    }

    pub fn unit(l: Literal) -> Clause {
        Clause::new([l])
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn is_ground(&self) -> bool {
        self.literals.iter().all(Literal::is_ground)
    }

    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        for l in &self.literals {
            l.atom.vars_into(&mut out);
        }
        out
    }

    pub fn size(&self) -> usize {
        self.literals.iter().map(|l| l.atom.terms().iter().map(|t| t.size()).sum::<usize>() + 1).sum()
    }

    pub fn is_tautology(&self) -> bool {
        self.literals.iter().any(Literal::is_trivially_true)
            || self.literals.windows(2).any(|w| w[0].complements(&w[1]))
    }

    pub fn subst(&self, map: &BTreeMap<String, Term>) -> Clause {
        Clause::new(self.literals.iter().map(|l| l.subst(map)))
    }

    pub fn map_terms(&self, mut f: impl FnMut(&Term) -> Term) -> Clause {
        Clause::new(self.literals.iter().map(|l| l.map_terms(&mut f)))
    }

    /// Same clause with variables renamed by appending `suffix`.
    pub fn rename_apart(&self, suffix: &str) -> Vec<Literal> {
        let map: BTreeMap<String, String> =
            self.vars().into_iter().map(|v| (v.clone(), format!("{v}{suffix}"))).collect();
        self.literals.iter().map(|l| l.map_terms(|t| t.rename_vars(&map))).collect()
    }

    /// Finds `σ` with `self·σ ⊆ other`.
    pub fn subsumes(&self, other: &Clause) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut sigma = BTreeMap::new();
        subsume_rec(&self.literals, &other.literals, &mut sigma)
    }

    /// The substitution found by `subsumes`.
    pub fn subsumer(&self, other: &Clause) -> Option<BTreeMap<String, Term>> {
        match_literals(&self.literals, &other.literals)
    }

    pub fn is_variant(&self, other: &Clause) -> bool {
        self.len() == other.len() && self.subsumes(other) && other.subsumes(self)
    }
}

/// Finds `σ` with `pattern·σ ⊆ target`, equations matched up to symmetry.
pub fn match_literals(pattern: &[Literal], target: &[Literal]) -> Option<BTreeMap<String, Term>> {
    let mut sigma = BTreeMap::new();
    subsume_rec(pattern, target, &mut sigma).then_some(sigma)
}

fn subsume_rec(lits: &[Literal], target: &[Literal], sigma: &mut BTreeMap<String, Term>) -> bool {
    let Some((first, rest)) = lits.split_first() else {
        return true;
    };
    for cand in target {
        if cand.positive != first.positive {
            continue;
        }
        for flipped in [false, true] {
            let mut trial = sigma.clone();
            if match_atom(&first.atom, &cand.atom, flipped, &mut trial) && subsume_rec(rest, target, &mut trial) {
                *sigma = trial;
                return true;
            }
            if !matches!(first.atom, Atom::Eq(..)) {
                break;
            }
        }
    }
    false
}

fn match_atom(pattern: &Atom, target: &Atom, flipped: bool, sigma: &mut BTreeMap<String, Term>) -> bool {
    match (pattern, target) {
        (Atom::Eq(a, b), Atom::Eq(c, d)) => {
            let (c, d) = if flipped { (d, c) } else { (c, d) };
            match_term(a, c, sigma) && match_term(b, d, sigma)
        }
        (Atom::Pred(p, xs), Atom::Pred(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| match_term(x, y, sigma))
        }
        _ => false,
    }
}

/// One-sided matching: extends `sigma` so that `pattern·σ = target`.
pub fn match_term(pattern: &Term, target: &Term, sigma: &mut BTreeMap<String, Term>) -> bool {
    match pattern {
        Term::Var(x) => match sigma.get(x) {
            Some(bound) => bound == target,
            None => {
                sigma.insert(x.clone(), target.clone());
                true
            }
        },
        Term::App(f, args) => match target {
            Term::App(g, brgs) if f == g && args.len() == brgs.len() => {
                args.iter().zip(brgs).all(|(a, b)| match_term(a, b, sigma))
            }
            _ => false,
        },
    }
}

fn resolve(t: &Term, sigma: &BTreeMap<String, Term>) -> Term {
    match t {
        Term::Var(x) => match sigma.get(x) {
            Some(u) => resolve(u, sigma),
            None => t.clone(),
        },
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| resolve(a, sigma)).collect()),
    }
}

/// Syntactic unification; returns an idempotent most general unifier.
pub fn unify(a: &Term, b: &Term, sigma: &mut BTreeMap<String, Term>) -> bool {
    let a = resolve(a, sigma);
    let b = resolve(b, sigma);
    match (&a, &b) {
        (Term::Var(x), Term::Var(y)) if x == y => true,
        (Term::Var(x), t) | (t, Term::Var(x)) => {
            if t.contains_var(x) {
                return false;
            }
            sigma.insert(x.clone(), t.clone());
            let keys: Vec<String> = sigma.keys().cloned().collect();
            for k in keys {
                let v = resolve(&sigma[&k], sigma);
                sigma.insert(k, v);
            }
            true
        }
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| unify(x, y, sigma))
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

/// A finite set of clauses, kept sorted and free of duplicates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct ClauseSet {
    clauses: Vec<Clause>,
}

impl ClauseSet {
    pub fn new(clauses: impl IntoIterator<Item = Clause>) -> ClauseSet {
        let set: BTreeSet<Clause> = clauses.into_iter().collect();
        ClauseSet { clauses: set.into_iter().collect() }
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Clause> {
        self.clauses.iter()
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn contains(&self, c: &Clause) -> bool {
        self.clauses.binary_search(c).is_ok()
    }

    pub fn union(&self, other: &ClauseSet) -> ClauseSet {
        ClauseSet::new(self.clauses.iter().chain(other.clauses.iter()).cloned())
    }

    pub fn map_clauses(&self, f: impl FnMut(&Clause) -> Clause) -> ClauseSet {
        ClauseSet::new(self.clauses.iter().map(f))
    }

    pub fn contains_eta(&self) -> bool {
        self.clauses
            .iter()
            .any(|c| c.literals().iter().any(|l| l.atom.terms().iter().any(|t| t.contains_symbol(super::term::ETA))))
    }

    /// Function and predicate symbols with the arities they are used at.
    pub fn signature(&self) -> (BTreeMap<String, usize>, BTreeMap<String, usize>) {
        let mut funs = BTreeMap::new();
        let mut preds = BTreeMap::new();
        for c in &self.clauses {
            for l in c.literals() {
                if let Atom::Pred(p, args) = &l.atom {
                    preds.entry(p.clone()).or_insert(args.len());
                }
                for t in l.atom.terms() {
                    t.symbols_into(&mut funs);
                }
            }
        }
        (funs, preds)
    }

    /// Equal up to the order of literals and renaming of variables within each clause.
    pub fn equivalent_up_to_renaming(&self, other: &ClauseSet) -> bool {
        if self == other {
            return true;
        }
        let covers = |a: &ClauseSet, b: &ClauseSet| a.iter().all(|c| b.iter().any(|d| c.is_variant(d)));
        covers(self, other) && covers(other, self)
    }
}

impl FromIterator<Clause> for ClauseSet {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        ClauseSet::new(iter)
    }
}

impl<'a> IntoIterator for &'a ClauseSet {
    type Item = &'a Clause;
    type IntoIter = std::slice::Iter<'a, Clause>;
    fn into_iter(self) -> Self::IntoIter {
        self.clauses.iter()
    }
}

impl fmt::Display for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::term::numeral;

    fn x() -> Term {
        Term::var("a")
    }

    #[test]
    fn canonical_naming_and_orientation() {
        let c = Clause::new([Literal::neq(numeral(0), Term::plus(x(), x()))]);
        assert_eq!(c.to_string(), "[x + x != 0]");
        let d = Clause::new([Literal::neq(Term::plus(Term::var("q"), Term::var("q")), numeral(0))]);
        assert_eq!(c, d);
    }

    #[test]
    fn subsumption_and_variants() {
        let b2 = Clause::new([Literal::eq(
            Term::plus(Term::var("a"), Term::var("b")),
            Term::plus(Term::var("b"), Term::var("a")),
        )]);
        let inst = Clause::new([
            Literal::eq(Term::plus(Term::eta(), numeral(1)), Term::plus(numeral(1), Term::eta())),
            Literal::eq(Term::zero(), numeral(1)),
        ]);
        assert!(b2.subsumes(&inst));
        assert!(!inst.subsumes(&b2));
        let v = Clause::new([Literal::eq(
            Term::plus(Term::var("y"), Term::var("x")),
            Term::plus(Term::var("x"), Term::var("y")),
        )]);
        assert!(b2.is_variant(&v));
    }

    #[test]
    fn unification() {
        let mut s = BTreeMap::new();
        let a = Term::plus(Term::var("x"), Term::succ(Term::var("y")));
        let b = Term::plus(Term::zero(), Term::var("z"));
        assert!(unify(&a, &b, &mut s));
        assert_eq!(resolve(&a, &s), resolve(&b, &s));
        let mut s = BTreeMap::new();
        assert!(!unify(&Term::var("x"), &Term::succ(Term::var("x")), &mut s));
    }
}
