//! First-order syntax: terms, literals, clauses, formulas, parsing and printing.

mod clause;
mod clausify;
mod formula;
mod json;
mod language;
mod parse;
mod term;

pub use clause::{canonical_var, match_literals, match_term, unify, Atom, Clause, ClauseSet, Literal};
pub use clausify::{
    clausify_skolem, cls, cls_all, cls_inv, cnf_matrix, disjoin_clause_sets, eval_ground_nat, instantiate_eta,
    normalize_ground_term, CNF_LIMIT,
};
pub use formula::{fresh_name, Formula, FreshVars, QuantClass};
pub use language::Language;
pub use parse::{parse, parse_clause, parse_clause_set, parse_formula, parse_literal, parse_term, Parsed};
pub use term::{numeral, scalar_mul, Term, ETA, PLUS, PRED, SUCC, ZERO};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("undeclared symbol `{symbol}`{}", at(pos))]
    Undeclared { symbol: String, pos: Option<usize> },
    #[error("symbol `{symbol}` expects {expected} arguments, found {found}{}", at(pos))]
    Arity { symbol: String, expected: usize, found: usize, pos: Option<usize> },
    #[error("not a universal sentence: {0}")]
    NotUniversal(String),
    #[error("language mismatch: {0}")]
    Mismatch(String),
    #[error("outside the supported fragment: {0}")]
    Fragment(String),
    #[error("expected a ground term: {0}")]
    NonGround(String),
    #[error("empty family of clause sets")]
    EmptyFamily,
    #[error("result too large: {0}")]
    TooLarge(String),
}

fn at(pos: &Option<usize>) -> String {
    pos.map(|p| format!(" at byte {p}")).unwrap_or_default()
}

impl SyntaxError {
    pub(crate) fn shifted(self, by: usize) -> SyntaxError {
        match self {
            SyntaxError::Parse { pos, msg } => SyntaxError::Parse { pos: pos + by, msg },
            SyntaxError::Undeclared { symbol, pos } => SyntaxError::Undeclared { symbol, pos: pos.map(|p| p + by) },
            SyntaxError::Arity { symbol, expected, found, pos } => {
                SyntaxError::Arity { symbol, expected, found, pos: pos.map(|p| p + by) }
            }
            e => e,
        }
    }
}
