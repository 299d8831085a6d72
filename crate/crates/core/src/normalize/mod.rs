//! Normal forms for existential formulas of linear arithmetic: unnesting,
//! predecessor elimination, components, literal classification, elimination
//! of literals with one ground side, and the shift that strips `0` from a
//! formula.

mod eliminate;
mod literals;
mod unnest;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{Atom, Formula, FreshVars, Literal, SyntaxError, Term, PLUS, PRED, SUCC, ZERO};

pub use eliminate::{
    eliminate_ud_literals, Elimination, GuardedCore, Measure, RewriteRule, RewriteStep, STEP_LIMIT, STEP_OUTPUT_LIMIT,
};
pub use literals::{
    classify_literal, eliminate_neg_simple, eliminate_zero_term, split_complex_atom, LiteralClass, SidePattern,
    SPLIT_TUPLE_LIMIT,
};
pub use unnest::{eliminate_p, predecessor_graph, unnest};

/// Largest number of components `to_components` produces.
pub const COMPONENT_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("outside the supported fragment: {0}")]
    Fragment(String),
    #[error("predicate symbols are not supported here: {0}")]
    Predicate(String),
    #[error("expected a p-free input: {0}")]
    NotPFree(String),
    #[error("expected a term with variables: {0}")]
    GroundTerm(String),
    #[error("result too large: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

/// `exists ȳ. l_1 & ... & l_n` with free variables among `free`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Component {
    pub free: Vec<String>,
    pub bound: Vec<String>,
    pub literals: Vec<Literal>,
}

impl Component {
    pub fn to_formula(&self) -> Formula {
        Formula::exists_many(&self.bound, Formula::and(self.literals.iter().map(Formula::literal).collect()))
    }

    /// Variables occurring in the literals that are not bound.
    pub fn occurring_free(&self) -> Vec<String> {
        let mut vars = Vec::new();
        self.literals.iter().for_each(|l| l.atom.vars_into(&mut vars));
        vars.retain(|v| !self.bound.contains(v));
        vars
    }

    pub fn is_p_free(&self) -> bool {
        !self.literals.iter().any(|l| l.atom.terms().iter().any(|t| t.contains_symbol(PRED)))
    }

    pub fn is_zero_free(&self) -> bool {
        !self.literals.iter().any(|l| l.atom.terms().iter().any(|t| t.contains_symbol(ZERO)))
    }

    pub fn classes(&self) -> Result<Vec<LiteralClass>, NormalizeError> {
        self.literals.iter().map(classify_literal).collect()
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

/// Rejects predicates, symbols outside `{0, s, p, +}` and universal quantifiers.
pub(crate) fn check_fragment(phi: &Formula) -> Result<(), NormalizeError> {
    let (functions, predicates) = phi.signature();
    if let Some(p) = predicates.keys().next() {
        return Err(NormalizeError::Predicate(format!("`{p}` in {phi}")));
    }
    for (f, &arity) in &functions {
        let expected = match f.as_str() {
            ZERO => 0,
            SUCC | PRED => 1,
            PLUS => 2,
            _ => {
                return Err(NormalizeError::Fragment(format!(
                    "symbol `{f}` is not in the language of linear arithmetic"
                )))
            }
        };
        if arity != expected {
            return Err(NormalizeError::Fragment(format!("`{f}` used with {arity} arguments")));
        }
    }
    if !phi.is_logically_existential() {
        return Err(NormalizeError::Fragment(format!("not logically existential: {phi}")));
    }
    Ok(())
}

/// Bound variables and NNF matrix of a prenex form.
pub(crate) fn prenex(phi: &Formula) -> Result<(Vec<String>, Formula), NormalizeError> {
    let p = phi.prenex_single_kind().ok_or_else(|| NormalizeError::Fragment(format!("mixed quantifiers in {phi}")))?;
    let (prefix, matrix) = p.strip_prefix();
    if prefix.iter().any(|(universal, _)| *universal) {
        return Err(NormalizeError::Fragment(format!("not logically existential: {phi}")));
    }
    Ok((prefix.into_iter().map(|(_, x)| x).collect(), matrix.clone()))
}

/// Disjunctive normal form of a quantifier-free NNF matrix.
fn dnf(m: &Formula) -> Result<Vec<Vec<Literal>>, NormalizeError> {
    Ok(match m {
        Formula::True => vec![vec![]],
        Formula::False => vec![],
        Formula::Atom(a) => vec![vec![Literal { atom: a.clone(), positive: true }]],
        Formula::Not(inner) => match &**inner {
            Formula::Atom(a) => vec![vec![Literal { atom: a.clone(), positive: false }]],
            _ => return Err(NormalizeError::Fragment(format!("not in negation normal form: {m}"))),
        },
        Formula::Or(fs) => {
            let mut out = Vec::new();
            for g in fs {
                out.extend(dnf(g)?);
                if out.len() > COMPONENT_LIMIT {
                    return Err(NormalizeError::TooLarge(format!("more than {COMPONENT_LIMIT} components")));
                }
            }
            out
        }
        Formula::And(fs) => {
            let mut acc: Vec<Vec<Literal>> = vec![vec![]];
            for g in fs {
                let part = dnf(g)?;
                if acc.len().saturating_mul(part.len()) > COMPONENT_LIMIT {
                    return Err(NormalizeError::TooLarge(format!("more than {COMPONENT_LIMIT} components")));
                }
                acc = acc.iter().flat_map(|a| part.iter().map(move |b| [a.clone(), b.clone()].concat())).collect();
            }
            acc
        }
        _ => return Err(NormalizeError::Fragment(format!("expected a quantifier-free matrix: {m}"))),
    })
}

/// `p`-free components whose disjunction is equivalent to `phi` over `B + B1`.
///
/// Literals are normalized: ground sides become numerals and a side with a
/// variable is written first.
pub fn to_components(phi: &Formula) -> Result<Vec<Component>, NormalizeError> {
    let free = phi.free_vars();
    let (bound, matrix) = prenex(&eliminate_p(phi)?)?;
    let mut out: Vec<Component> = Vec::new();
    for conj in dnf(&matrix)? {
        let mut literals: Vec<Literal> = Vec::new();
        for l in &conj {
            let l = literals::normal_literal(l)?;
            if !literals.contains(&l) {
                literals.push(l);
            }
        }
        let mut used = Vec::new();
        literals.iter().for_each(|l| l.atom.vars_into(&mut used));
        let bound = bound.iter().filter(|y| used.contains(y)).cloned().collect();
        let c = Component { free: free.clone(), bound, literals };
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Result of stripping a formula: `phi(s^shift(x̄))` is equivalent to
/// `formula(x̄)` over `B + B1 + V`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stripped {
    pub shift: u64,
    pub formula: Formula,
    pub components: Vec<Component>,
    pub eliminations: Vec<Elimination>,
    /// The guard-free cores after the shift, in the order of `formula`.
    pub cores: Vec<Component>,
}

impl Stripped {
    pub fn log(&self) -> impl Iterator<Item = &RewriteStep> {
        self.eliminations.iter().flat_map(|e| e.log.iter())
    }

    pub fn measures_decrease(&self) -> bool {
        self.eliminations.iter().all(Elimination::measures_decrease)
    }
}

/// Renames the bound variables of `c` to the next names of `fresh`.
fn rename_bound(c: &Component, fresh: &mut FreshVars) -> Component {
    let map: BTreeMap<String, Term> = c.bound.iter().map(|y| (y.clone(), Term::var(fresh.fresh()))).collect();
    Component {
        free: c.free.clone(),
        bound: c.bound.iter().map(|y| map[y].to_string()).collect(),
        literals: c.literals.iter().map(|l| l.subst(&map)).collect(),
    }
}

/// The shift `N` and a 0-free, `p`-free existential formula `phi'` with
/// `phi(s^N(x̄)) <-> phi'(x̄)` over `B + B1 + V`.
///
/// `N` is one more than the largest guard constant, or `0` without guards.
/// Bound variables of the output are `y0, y1, ...` (skipping names in `vars`).
pub fn shift_and_strip(phi: &Formula, vars: &[String]) -> Result<Stripped, NormalizeError> {
    check_fragment(phi)?;
    if let Some(x) = phi.free_vars().into_iter().find(|x| !vars.contains(x)) {
        return Err(NormalizeError::Fragment(format!("free variable {x} is not among the shifted variables")));
    }
    let components = to_components(phi)?;
    let eliminations = components.iter().map(eliminate_ud_literals).collect::<Result<Vec<_>, _>>()?;
    let shift = eliminations
        .iter()
        .flat_map(|e| e.outputs.iter().flat_map(|o| o.guard.iter().map(|(_, k)| *k)))
        .max()
        .map_or(0, |k| k + 1);
    let shifted: BTreeMap<String, Term> =
        vars.iter().map(|x| (x.clone(), Term::succ_n(shift, Term::var(x.clone())))).collect();
    let reserved: BTreeSet<String> = vars.iter().cloned().collect();
    let mut seen = BTreeSet::new();
    let mut fresh = FreshVars::new("y", reserved.clone());
    let mut cores = Vec::new();
    for o in eliminations.iter().flat_map(|e| e.outputs.iter()).filter(|o| o.guard.is_empty()) {
        let literals = o.core.literals.iter().map(|l| l.subst(&shifted)).collect();
        let core = Component { free: vars.to_vec(), bound: o.core.bound.clone(), literals };
        if seen.insert(rename_bound(&core, &mut FreshVars::new("y", reserved.clone()))) {
            cores.push(rename_bound(&core, &mut fresh));
        }
    }
    let bound: Vec<String> = cores.iter().flat_map(|c| c.bound.iter().cloned()).collect();
    let matrix =
        Formula::or(cores.iter().map(|c| Formula::and(c.literals.iter().map(Formula::literal).collect())).collect());
    Ok(Stripped { shift, formula: Formula::exists_many(&bound, matrix), components, eliminations, cores })
}

/// True if no atom contains `p`.
pub fn is_p_free(phi: &Formula) -> bool {
    !phi.contains_symbol(PRED)
}

/// True if no atom contains `0`.
pub fn is_zero_free(phi: &Formula) -> bool {
    !phi.contains_symbol(ZERO)
}

/// True if every atom is unnested: arguments of applications are variables
/// and at least one side of each equation is a variable.
pub fn is_unnested(phi: &Formula) -> bool {
    phi.atoms().iter().all(|a| match a {
        Atom::Eq(l, r) => {
            let flat = |t: &Term| match t {
                Term::Var(_) => true,
                Term::App(_, args) => args.iter().all(Term::is_var),
            };
            (l.is_var() && flat(r)) || (r.is_var() && flat(l))
        }
        Atom::Pred(..) => false,
    })
}
