use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::term::{ETA, PLUS, PRED, SUCC, ZERO};
use super::SyntaxError;

/// A one-sorted first-order language.
///
/// Every language contains `0` and `s`; the linear arithmetic prelude adds `p`
/// and `+`. The constant `eta` is available only when `eta` is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Language {
    pub functions: BTreeMap<String, usize>,
    #[serde(default)]
    pub predicates: BTreeMap<String, usize>,
    #[serde(default)]
    pub eta: bool,
}

impl Default for Language {
    fn default() -> Self {
        Language::linear_arithmetic().with_eta()
    }
}

impl Language {
    /// `{0, s}` only.
    pub fn base() -> Language {
        let mut functions = BTreeMap::new();
        functions.insert(ZERO.to_string(), 0);
        functions.insert(SUCC.to_string(), 1);
        Language { functions, predicates: BTreeMap::new(), eta: false }
    }

    /// `{0, s, p, +}`.
    pub fn linear_arithmetic() -> Language {
        Language::base().with_function(PRED, 1).with_function(PLUS, 2)
    }

    /// `{0, s, P, f}` with `eta`.
    pub fn induction_language() -> Language {
        Language::base().with_function("f", 1).with_predicate("P", 1).with_eta()
    }

    pub fn with_eta(mut self) -> Language {
        self.eta = true;
        self
    }

    pub fn without_eta(mut self) -> Language {
        self.eta = false;
        self
    }

    pub fn with_function(mut self, name: &str, arity: usize) -> Language {
        self.functions.insert(name.to_string(), arity);
        self
    }

    pub fn with_predicate(mut self, name: &str, arity: usize) -> Language {
        self.predicates.insert(name.to_string(), arity);
        self
    }

    pub fn is_linear_arithmetic(&self) -> bool {
        self.function_arity(PRED) == Some(1) && self.function_arity(PLUS) == Some(2)
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        if name == ETA {
            return self.eta.then_some(0);
        }
        self.functions.get(name).copied()
    }

    pub fn predicate_arity(&self, name: &str) -> Option<usize> {
        self.predicates.get(name).copied()
    }

    /// Checks that every symbol in `symbols` (name, arity) is declared with that arity.
    pub fn check_symbols<'a>(
        &self,
        functions: impl IntoIterator<Item = (&'a String, &'a usize)>,
        predicates: impl IntoIterator<Item = (&'a String, &'a usize)>,
    ) -> Result<(), SyntaxError> {
        for (name, &arity) in functions {
            match self.function_arity(name) {
                None => return Err(SyntaxError::Undeclared { symbol: name.clone(), pos: None }),
                Some(a) if a != arity => {
                    return Err(SyntaxError::Arity { symbol: name.clone(), expected: a, found: arity, pos: None })
                }
                _ => {}
            }
        }
        for (name, &arity) in predicates {
            match self.predicate_arity(name) {
                None => return Err(SyntaxError::Undeclared { symbol: name.clone(), pos: None }),
                Some(a) if a != arity => {
                    return Err(SyntaxError::Arity { symbol: name.clone(), expected: a, found: arity, pos: None })
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Union of two languages; fails if a symbol is declared with two arities.
    pub fn merge(&self, other: &Language) -> Result<Language, SyntaxError> {
        let mut out = self.clone();
        for (f, &a) in &other.functions {
            match out.functions.insert(f.clone(), a) {
                Some(b) if b != a => {
                    return Err(SyntaxError::Mismatch(format!("function {f} has arities {b} and {a}")))
                }
                _ => {}
            }
        }
        for (p, &a) in &other.predicates {
            match out.predicates.insert(p.clone(), a) {
                Some(b) if b != a => {
                    return Err(SyntaxError::Mismatch(format!("predicate {p} has arities {b} and {a}")))
                }
                _ => {}
            }
        }
        out.eta |= other.eta;
        Ok(out)
    }
}
