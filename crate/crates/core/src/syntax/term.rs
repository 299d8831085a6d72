use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub const ZERO: &str = "0";
pub const SUCC: &str = "s";
pub const PRED: &str = "p";
pub const PLUS: &str = "+";
pub const ETA: &str = "eta";

/// A first-order term: a variable or a function symbol applied to arguments.
///
/// Constants (including `0` and `eta`) are applications with no arguments.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(symbol: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(symbol.into(), args)
    }

    pub fn zero() -> Term {
        Term::constant(ZERO)
    }

    pub fn eta() -> Term {
        Term::constant(ETA)
    }

    pub fn succ(t: Term) -> Term {
        Term::App(SUCC.into(), vec![t])
    }

    pub fn pred(t: Term) -> Term {
        Term::App(PRED.into(), vec![t])
    }

    pub fn plus(a: Term, b: Term) -> Term {
        Term::App(PLUS.into(), vec![a, b])
    }

    /// `s^n(t)`.
    pub fn succ_n(n: u64, t: Term) -> Term {
        (0..n).fold(t, |acc, _| Term::succ(acc))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn is_eta(&self) -> bool {
        matches!(self, Term::App(f, args) if f == ETA && args.is_empty())
    }

    /// If the term is `s^k(0)`, returns `k`.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut k = 0;
        let mut t = self;
        loop {
            match t {
                Term::App(f, args) if f == SUCC && args.len() == 1 => {
                    k += 1;
                    t = &args[0];
                }
                Term::App(f, args) if f == ZERO && args.is_empty() => return Some(k),
                _ => return None,
            }
        }
    }

    /// Splits `s^k(u)` into `(k, u)` with `u` not an `s`-application.
    pub fn strip_succ(&self) -> (u64, &Term) {
        let mut k = 0;
        let mut t = self;
        while let Term::App(f, args) = t {
            if f == SUCC && args.len() == 1 {
                k += 1;
                t = &args[0];
            } else {
                break;
            }
        }
        (k, t)
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(Term::depth).max().map_or(0, |d| d + 1),
        }
    }

    /// Number of symbol occurrences (variables count as one).
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn vars_into(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(x) => {
                if !out.contains(x) {
                    out.push(x.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.vars_into(out)),
        }
    }

    /// Variables in order of first occurrence.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.vars_into(&mut out);
        out
    }

    pub fn contains_var(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => y == x,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(x)),
        }
    }

    pub fn contains_symbol(&self, sym: &str) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(f, args) => f == sym || args.iter().any(|a| a.contains_symbol(sym)),
        }
    }

    pub fn symbols_into(&self, out: &mut BTreeMap<String, usize>) {
        if let Term::App(f, args) = self {
            out.entry(f.clone()).or_insert(args.len());
            args.iter().for_each(|a| a.symbols_into(out));
        }
    }

    pub fn subst(&self, map: &BTreeMap<String, Term>) -> Term {
        match self {
            Term::Var(x) => map.get(x).cloned().unwrap_or_else(|| self.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.subst(map)).collect()),
        }
    }

    /// Replaces every occurrence of the constant `name` by `by`.
    pub fn replace_constant(&self, name: &str, by: &Term) -> Term {
        match self {
            Term::App(f, args) if args.is_empty() && f == name => by.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.replace_constant(name, by)).collect()),
            Term::Var(_) => self.clone(),
        }
    }

    pub fn rename_vars(&self, map: &BTreeMap<String, String>) -> Term {
        match self {
            Term::Var(x) => Term::Var(map.get(x).cloned().unwrap_or_else(|| x.clone())),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.rename_vars(map)).collect()),
        }
    }

    pub fn subterm(&self, pos: &[usize]) -> Option<&Term> {
        match pos.split_first() {
            None => Some(self),
            Some((&i, rest)) => match self {
                Term::App(_, args) => args.get(i)?.subterm(rest),
                Term::Var(_) => None,
            },
        }
    }

    pub fn replace_at(&self, pos: &[usize], by: &Term) -> Option<Term> {
        match pos.split_first() {
            None => Some(by.clone()),
            Some((&i, rest)) => match self {
                Term::App(f, args) if i < args.len() => {
                    let mut args = args.clone();
                    args[i] = args[i].replace_at(rest, by)?;
                    Some(Term::App(f.clone(), args))
                }
                _ => None,
            },
        }
    }

    pub fn ground_subterms_into(&self, out: &mut BTreeSet<Term>) {
        if self.is_ground() {
            out.insert(self.clone());
        }
        if let Term::App(_, args) = self {
            args.iter().for_each(|a| a.ground_subterms_into(out));
        }
    }
}

/// `s^n(0)`.
pub fn numeral(n: u64) -> Term {
    Term::succ_n(n, Term::zero())
}

/// `0 · t = 0`, `(i+1) · t = t + (i · t)`.
pub fn scalar_mul(n: u64, t: &Term) -> Term {
    (0..n).fold(Term::zero(), |acc, _| Term::plus(t.clone(), acc))
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self, false)
    }
}

pub(crate) fn write_term(f: &mut fmt::Formatter<'_>, t: &Term, nested_plus: bool) -> fmt::Result {
    match t {
        Term::Var(x) => write!(f, "{x}"),
        Term::App(sym, args) => {
            if let Some(k) = t.as_numeral() {
                return if k == 0 { write!(f, "0") } else { write!(f, "#{k}") };
            }
            if sym == PLUS && args.len() == 2 {
                if nested_plus {
                    write!(f, "(")?;
                }
                write_term(f, &args[0], true)?;
                write!(f, " + ")?;
                write_term(f, &args[1], true)?;
                if nested_plus {
                    write!(f, ")")?;
                }
                return Ok(());
            }
            write!(f, "{sym}")?;
            if !args.is_empty() {
                write!(f, "(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write_term(f, a, false)?;
                }
                write!(f, ")")?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerals_and_scalar_multiples() {
        assert_eq!(numeral(0), Term::zero());
        assert_eq!(numeral(3).as_numeral(), Some(3));
        let x = Term::var("x");
        assert_eq!(scalar_mul(2, &x), Term::plus(x.clone(), Term::plus(x.clone(), Term::zero())));
        assert_eq!(scalar_mul(1, &Term::eta()), Term::plus(Term::eta(), Term::zero()));
        assert_eq!(scalar_mul(0, &x), Term::zero());
    }

    #[test]
    fn positions() {
        let t = Term::plus(Term::var("x"), Term::succ(Term::var("y")));
        assert_eq!(t.subterm(&[1, 0]), Some(&Term::var("y")));
        let r = t.replace_at(&[1, 0], &Term::zero()).unwrap();
        assert_eq!(r, Term::plus(Term::var("x"), numeral(1)));
        assert_eq!(t.to_string(), "x + s(y)");
    }
}
