use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::NormalizeError;
use crate::syntax::{eval_ground_nat, numeral, Atom, Formula, Literal, Term, PLUS, PRED, SUCC, ZERO};

/// Largest number of candidate tuples `split_complex_atom` enumerates.
pub const SPLIT_TUPLE_LIMIT: u64 = 1 << 20;

/// Which sides of an equation contain variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SidePattern {
    /// Both sides contain a variable.
    UpUp,
    /// Exactly one side contains a variable.
    UpDown,
    /// Both sides are ground.
    DownDown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LiteralClass {
    pub pattern: SidePattern,
    pub positive: bool,
    /// `z = k` with `z` a variable and `k` a numeral. Only set for `UpDown`.
    pub simple: bool,
}

impl LiteralClass {
    pub fn is_up_down(&self) -> bool {
        self.pattern == SidePattern::UpDown
    }

    pub fn is_complex_positive(&self) -> bool {
        self.is_up_down() && self.positive && !self.simple
    }
}

impl fmt::Display for LiteralClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows = match self.pattern {
            SidePattern::UpUp => "↑↑",
            SidePattern::UpDown => "↑↓",
            SidePattern::DownDown => "↓↓",
        };
        write!(f, "{arrows}{}", if self.positive { "+" } else { "-" })?;
        if self.is_up_down() {
            write!(f, " {}", if self.simple { "simple" } else { "complex" })?;
        }
        Ok(())
    }
}

pub fn classify_literal(l: &Literal) -> Result<LiteralClass, NormalizeError> {
    let Atom::Eq(a, b) = &l.atom else {
        return Err(NormalizeError::Predicate(l.to_string()));
    };
    let (ga, gb) = (a.is_ground(), b.is_ground());
    let pattern = match (ga, gb) {
        (false, false) => SidePattern::UpUp,
        (true, true) => SidePattern::DownDown,
        _ => SidePattern::UpDown,
    };
    let simple = match (ga, gb) {
        (false, true) => a.is_var() && b.as_numeral().is_some(),
        (true, false) => b.is_var() && a.as_numeral().is_some(),
        _ => false,
    };
    Ok(LiteralClass { pattern, positive: l.positive, simple })
}

/// For an `UpDown` literal, the side with variables and the value of the ground side.
pub(crate) fn up_down_sides(l: &Literal) -> Option<(&Term, u64)> {
    let Atom::Eq(a, b) = &l.atom else { return None };
    match (a.is_ground(), b.is_ground()) {
        (false, true) => Some((a, eval_ground_nat(b).ok()?)),
        (true, false) => Some((b, eval_ground_nat(a).ok()?)),
        _ => None,
    }
}

/// Replaces every maximal ground subterm by its numeral.
pub(crate) fn fold_ground(t: &Term) -> Result<Term, NormalizeError> {
    if t.is_ground() {
        return Ok(numeral(eval_ground_nat(t)?));
    }
    Ok(match t {
        Term::Var(_) => t.clone(),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(fold_ground).collect::<Result<_, _>>()?),
    })
}

/// Ground sides folded to numerals, and the side with a variable on the left.
pub(crate) fn normal_literal(l: &Literal) -> Result<Literal, NormalizeError> {
    if matches!(l.atom, Atom::Pred(..)) {
        return Err(NormalizeError::Predicate(l.to_string()));
    }
    let mut err = None;
    let folded = l.map_terms(|t| {
        fold_ground(t).unwrap_or_else(|e| {
            err.get_or_insert(e);
            t.clone()
        })
    });
    match err {
        Some(e) => Err(e),
        None => Ok(folded.oriented()),
    }
}

/// A 0-free term equal to `t` in every model of `B + V`.
pub fn eliminate_zero_term(t: &Term) -> Result<Term, NormalizeError> {
    if t.is_ground() {
        return Err(NormalizeError::GroundTerm(t.to_string()));
    }
    zero_free(t)
}

fn zero_free(t: &Term) -> Result<Term, NormalizeError> {
    let Term::App(f, args) = t else { return Ok(t.clone()) };
    match (f.as_str(), args.as_slice()) {
        (SUCC, [u]) => Ok(Term::succ(zero_free(u)?)),
        (PLUS, [u, v]) => match (u.is_ground(), v.is_ground()) {
            (true, false) => Ok(Term::succ_n(eval_ground_nat(u)?, zero_free(v)?)),
            (false, true) => Ok(Term::succ_n(eval_ground_nat(v)?, zero_free(u)?)),
            _ => Ok(Term::plus(zero_free(u)?, zero_free(v)?)),
        },
        (PRED, _) => Err(NormalizeError::NotPFree(t.to_string())),
        _ => Err(NormalizeError::Fragment(format!("unexpected symbol `{f}` in {t}"))),
    }
}

/// Value of a p-free term in ℕ under `env`.
pub(crate) fn eval_nat(t: &Term, env: &BTreeMap<&str, u64>) -> u64 {
    match t {
        Term::Var(x) => env[x.as_str()],
        Term::App(f, args) => match (f.as_str(), args.as_slice()) {
            (ZERO, []) => 0,
            (SUCC, [a]) => eval_nat(a, env) + 1,
            (PRED, [a]) => eval_nat(a, env).saturating_sub(1),
            (PLUS, [a, b]) => eval_nat(a, env) + eval_nat(b, env),
            _ => unreachable!("checked by the caller"),
        },
    }
}

/// Every assignment of `u`'s variables, in order of first occurrence, with
/// value `k` in ℕ.
pub(crate) fn split_solutions(u: &Term, k: u64) -> Result<Vec<Vec<(String, u64)>>, NormalizeError> {
    let vars = u.vars();
    if vars.is_empty() {
        return Err(NormalizeError::GroundTerm(u.to_string()));
    }
    if u.contains_symbol(PRED) {
        return Err(NormalizeError::NotPFree(u.to_string()));
    }
    let total = (k + 1).checked_pow(vars.len() as u32).filter(|&n| n <= SPLIT_TUPLE_LIMIT);
    if total.is_none() {
        return Err(NormalizeError::TooLarge(format!(
            "splitting {u} = {k} enumerates more than {SPLIT_TUPLE_LIMIT} tuples"
        )));
    }
    let mut values = vec![0u64; vars.len()];
    let mut out = Vec::new();
    loop {
        let env: BTreeMap<&str, u64> = vars.iter().map(String::as_str).zip(values.iter().copied()).collect();
        if eval_nat(u, &env) == k {
            out.push(vars.iter().cloned().zip(values.iter().copied()).collect());
        }
        let mut i = vars.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if values[i] < k {
                values[i] += 1;
                break;
            }
            values[i] = 0;
        }
    }
}

/// `u = k` as a disjunction of conjunctions `z_1 = m_1 & ... & z_l = m_l`
/// over the ℕ-solutions with every `m_j <= k`.
pub fn split_complex_atom(u: &Term, k: u64) -> Result<Formula, NormalizeError> {
    let sols = split_solutions(u, k)?;
    Ok(Formula::or(
        sols.into_iter()
            .map(|sol| Formula::and(sol.into_iter().map(|(z, m)| Formula::eq(Term::var(z), numeral(m))).collect()))
            .collect(),
    ))
}

/// `exists z'. z = s^(k+1)(z') | z = 0 | ... | z = #(k-1)`, equivalent to
/// `z != #k` over `B + B1`.
pub fn eliminate_neg_simple(z: &str, k: u64) -> Formula {
    let fresh = crate::syntax::fresh_name(z, &[z.to_string()].into());
    let mut parts =
        vec![Formula::exists(fresh.clone(), Formula::eq(Term::var(z), Term::succ_n(k + 1, Term::var(fresh))))];
    parts.extend((0..k).map(|i| Formula::eq(Term::var(z), numeral(i))));
    Formula::or(parts)
}
