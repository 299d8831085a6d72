use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::element::{uparrow, ModelElement};
use super::ModelError;
use crate::syntax::{Atom, Language, Term, ETA, PLUS, PRED, SUCC, ZERO};

/// Variable and constant values used during evaluation.
pub type Assignment = BTreeMap<String, ModelElement>;

/// The structures available for evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum StructureId {
    /// The standard model of `{0, s, p, +}`.
    N,
    /// The integers with `p(x) = x - 1`.
    Z,
    /// `M_I`: one standard chain and `I` integer chains.
    M(u64),
    /// Pairs `(m, n)` with componentwise addition; satisfies `B'` but not
    /// the parity statement.
    Shoenfield,
    /// The `{0, s, P, f}` structure on `{0, 1} x Z` with `eta = 0`.
    PStruct,
}

impl StructureId {
    /// Structures tried when looking for countermodel evidence, in order.
    pub const FAMILY: [StructureId; 6] = [
        StructureId::N,
        StructureId::Z,
        StructureId::M(1),
        StructureId::M(2),
        StructureId::Shoenfield,
        StructureId::PStruct,
    ];

    pub fn language(&self) -> Language {
        match self {
            StructureId::PStruct => Language::induction_language(),
            _ => Language::default(),
        }
    }

    /// Whether every symbol of the given signature can be interpreted.
    ///
    /// Constants outside the structure's language are accepted; they are
    /// interpreted through the assignment.
    pub fn supports(&self, functions: &BTreeMap<String, usize>, predicates: &BTreeMap<String, usize>) -> bool {
        let lang = self.language();
        functions.iter().all(|(f, &a)| a == 0 || lang.function_arity(f) == Some(a))
            && predicates.iter().all(|(p, &a)| lang.predicate_arity(p) == Some(a))
    }

    pub fn contains(&self, e: &ModelElement) -> bool {
        match self {
            StructureId::N => e.ty == 0 && e.value >= 0,
            StructureId::Z => e.ty == 0,
            StructureId::M(i) => e.ty <= *i && (e.ty != 0 || e.value >= 0),
            StructureId::Shoenfield => e.ty != 0 || e.value >= 0,
            StructureId::PStruct => e.ty <= 1 && (e.ty != 0 || e.value >= 0),
        }
    }

    fn check(&self, e: ModelElement) -> Result<ModelElement, ModelError> {
        if self.contains(&e) {
            Ok(e)
        } else {
            Err(ModelError::OutsideDomain { element: e, structure: *self })
        }
    }

    pub fn zero(&self) -> ModelElement {
        ModelElement::standard(0)
    }

    pub fn succ(&self, e: ModelElement) -> Result<ModelElement, ModelError> {
        Ok(ModelElement::new(e.ty, e.value.checked_add(1).ok_or(ModelError::Overflow)?))
    }

    pub fn pred(&self, e: ModelElement) -> Result<ModelElement, ModelError> {
        match self {
            StructureId::PStruct => Err(ModelError::ForeignSymbol { symbol: PRED.into(), structure: *self }),
            StructureId::Z => Ok(ModelElement::new(0, e.value - 1)),
            _ if e.ty == 0 => Ok(ModelElement::new(0, (e.value - 1).max(0))),
            _ => Ok(ModelElement::new(e.ty, e.value - 1)),
        }
    }

    pub fn plus(&self, a: ModelElement, b: ModelElement) -> Result<ModelElement, ModelError> {
        let value = a.value.checked_add(b.value).ok_or(ModelError::Overflow)?;
        match self {
            StructureId::PStruct => Err(ModelError::ForeignSymbol { symbol: PLUS.into(), structure: *self }),
            StructureId::N | StructureId::Z => Ok(ModelElement::new(0, value)),
            StructureId::M(_) => Ok(ModelElement::new(uparrow(a.ty, b.ty), value)),
            StructureId::Shoenfield => Ok(ModelElement::new(a.ty + b.ty, value)),
        }
    }

    /// Interpretation of a constant symbol other than `0`.
    pub fn constant(&self, name: &str, assignment: &Assignment) -> Result<ModelElement, ModelError> {
        if *self == StructureId::PStruct && name == ETA {
            return Ok(ModelElement::standard(0));
        }
        match assignment.get(name) {
            Some(e) => self.check(*e),
            None => Err(ModelError::Unbound(name.to_string())),
        }
    }

    pub fn apply(&self, symbol: &str, args: &[ModelElement]) -> Result<ModelElement, ModelError> {
        match (symbol, args) {
            (ZERO, []) => Ok(self.zero()),
            (SUCC, [a]) => self.succ(*a),
            (PRED, [a]) => self.pred(*a),
            (PLUS, [a, b]) => self.plus(*a, *b),
            ("f", [a]) if *self == StructureId::PStruct => Ok(ModelElement::new(1, a.value)),
            _ => Err(ModelError::ForeignSymbol { symbol: symbol.to_string(), structure: *self }),
        }
    }

    pub fn holds_predicate(&self, symbol: &str, args: &[ModelElement]) -> Result<bool, ModelError> {
        match (self, symbol, args) {
            (StructureId::PStruct, "P", [a]) => Ok(a.ty == 0),
            _ => Err(ModelError::ForeignSymbol { symbol: symbol.to_string(), structure: *self }),
        }
    }

    /// Value of `t` under `assignment`. Variables and constants other than
    /// `0` are looked up in the assignment.
    pub fn eval_term(&self, assignment: &Assignment, t: &Term) -> Result<ModelElement, ModelError> {
        match t {
            Term::Var(x) => match assignment.get(x) {
                Some(e) => self.check(*e),
                None => Err(ModelError::Unbound(x.clone())),
            },
            Term::App(f, args) if args.is_empty() && f != ZERO => self.constant(f, assignment),
            Term::App(f, args) => {
                let vals = args.iter().map(|a| self.eval_term(assignment, a)).collect::<Result<Vec<_>, _>>()?;
                self.apply(f, &vals)
            }
        }
    }

    pub fn eval_atom(&self, assignment: &Assignment, a: &Atom) -> Result<bool, ModelError> {
        match a {
            Atom::Eq(l, r) => Ok(self.eval_term(assignment, l)? == self.eval_term(assignment, r)?),
            Atom::Pred(p, args) => {
                let vals = args.iter().map(|t| self.eval_term(assignment, t)).collect::<Result<Vec<_>, _>>()?;
                self.holds_predicate(p, &vals)
            }
        }
    }

    /// The finite box of elements, ordered by type, then absolute value,
    /// then sign (non-negative first).
    pub fn domain_box(&self, value_bound: i64, type_cap: u64) -> Vec<ModelElement> {
        let max_type = match self {
            StructureId::N | StructureId::Z => 0,
            StructureId::M(i) => *i,
            StructureId::Shoenfield => type_cap,
            StructureId::PStruct => 1,
        };
        let mut out = Vec::new();
        for ty in 0..=max_type {
            for v in 0..=value_bound.max(0) {
                let e = ModelElement::new(ty, v);
                if self.contains(&e) {
                    out.push(e);
                }
                let neg = ModelElement::new(ty, -v);
                if v != 0 && self.contains(&neg) {
                    out.push(neg);
                }
            }
        }
        out
    }
}

/// `eval_term` as a free function.
pub fn eval_term(s: StructureId, assignment: &Assignment, t: &Term) -> Result<ModelElement, ModelError> {
    s.eval_term(assignment, t)
}

impl fmt::Display for StructureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureId::N => write!(f, "N"),
            StructureId::Z => write!(f, "Z"),
            StructureId::M(i) => write!(f, "M:{i}"),
            StructureId::Shoenfield => write!(f, "shoenfield"),
            StructureId::PStruct => write!(f, "pstruct"),
        }
    }
}

impl FromStr for StructureId {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "N" | "n" | "nat" => Ok(StructureId::N),
            "Z" | "z" | "int" => Ok(StructureId::Z),
            "shoenfield" => Ok(StructureId::Shoenfield),
            "pstruct" => Ok(StructureId::PStruct),
            _ => s
                .strip_prefix("M:")
                .or_else(|| s.strip_prefix("m:"))
                .and_then(|i| i.parse().ok())
                .map(StructureId::M)
                .ok_or_else(|| ModelError::UnknownStructure(s.to_string())),
        }
    }
}

impl From<StructureId> for String {
    fn from(s: StructureId) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for StructureId {
    type Error = ModelError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn el(ty: u64, v: i64) -> ModelElement {
        ModelElement::new(ty, v)
    }

    #[test]
    fn m1_tables() {
        let m1 = StructureId::M(1);
        let mut a = Assignment::new();
        a.insert("x".into(), el(0, 2));
        a.insert("y".into(), el(1, 3));
        let t = parse_term("x + y", &Language::default()).unwrap();
        assert_eq!(m1.eval_term(&a, &t).unwrap(), el(1, 5));
        assert_eq!(m1.pred(el(0, 0)).unwrap(), el(0, 0));
        assert_eq!(m1.pred(el(1, 0)).unwrap(), el(1, -1));
    }

    #[test]
    fn pstruct_f_of_eta() {
        let t = parse_term("f(eta)", &Language::induction_language()).unwrap();
        let v = StructureId::PStruct.eval_term(&Assignment::new(), &t).unwrap();
        assert_eq!(v, el(1, 0));
        assert!(!StructureId::PStruct.holds_predicate("P", &[v]).unwrap());
    }

    #[test]
    fn box_order() {
        let b = StructureId::M(1).domain_box(2, 0);
        let shown: Vec<String> = b.iter().map(|e| e.to_string()).collect();
        assert_eq!(shown, ["0^[0]", "1^[0]", "2^[0]", "0^[1]", "1^[1]", "(-1)^[1]", "2^[1]", "(-2)^[1]"]);
        assert_eq!(StructureId::Shoenfield.domain_box(1, 2).len(), 2 + 3 + 3);
    }

    #[test]
    fn structure_names() {
        for s in StructureId::FAMILY {
            assert_eq!(s.to_string().parse::<StructureId>().unwrap(), s);
        }
        assert!("M:x".parse::<StructureId>().is_err());
    }
}
