//! JSON trees with a `"kind"` tag per node.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::clause::{Atom, Clause, ClauseSet, Literal};
use super::formula::Formula;
use super::term::Term;
use super::SyntaxError;

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum TermRef<'a> {
    Var { name: &'a str },
    App { symbol: &'a str, args: &'a [Term] },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum TermOwned {
    Var {
        name: String,
    },
    App {
        symbol: String,
        #[serde(default)]
        args: Vec<Term>,
    },
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Term::Var(name) => TermRef::Var { name },
            Term::App(symbol, args) => TermRef::App { symbol, args },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match TermOwned::deserialize(d)? {
            TermOwned::Var { name } => Term::Var(name),
            TermOwned::App { symbol, args } => Term::App(symbol, args),
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum AtomRepr {
    Eq { lhs: Term, rhs: Term },
    Pred { symbol: String, args: Vec<Term> },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum LiteralRepr {
    Literal { positive: bool, atom: AtomRepr },
}

impl Serialize for Literal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let atom = match &self.atom {
            Atom::Eq(a, b) => AtomRepr::Eq { lhs: a.clone(), rhs: b.clone() },
            Atom::Pred(p, args) => AtomRepr::Pred { symbol: p.clone(), args: args.clone() },
        };
        LiteralRepr::Literal { positive: self.positive, atom }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Literal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let LiteralRepr::Literal { positive, atom } = LiteralRepr::deserialize(d)?;
        let atom = match atom {
            AtomRepr::Eq { lhs, rhs } => Atom::Eq(lhs, rhs),
            AtomRepr::Pred { symbol, args } => Atom::Pred(symbol, args),
        };
        Ok(Literal { atom, positive })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub(crate) enum ClauseRepr {
    Clause { literals: Vec<Literal> },
}

impl Serialize for Clause {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ClauseRepr::Clause { literals: self.literals().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Clause {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let ClauseRepr::Clause { literals } = ClauseRepr::deserialize(d)?;
        Ok(Clause::new(literals))
    }
}

pub(crate) type ClauseSetRepr = Vec<Clause>;

impl TryFrom<ClauseSetRepr> for ClauseSet {
    type Error = SyntaxError;
    fn try_from(value: ClauseSetRepr) -> Result<Self, Self::Error> {
        Ok(ClauseSet::new(value))
    }
}

impl Serialize for ClauseSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.clauses().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ClauseSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(ClauseSet::new(Vec::<Clause>::deserialize(d)?))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum FormulaRepr {
    True,
    False,
    Eq { lhs: Term, rhs: Term },
    Pred { symbol: String, args: Vec<Term> },
    Not { body: Formula },
    And { parts: Vec<Formula> },
    Or { parts: Vec<Formula> },
    Implies { lhs: Formula, rhs: Formula },
    Iff { lhs: Formula, rhs: Formula },
    Forall { var: String, body: Formula },
    Exists { var: String, body: Formula },
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let r = match self.clone() {
            Formula::True => FormulaRepr::True,
            Formula::False => FormulaRepr::False,
            Formula::Atom(Atom::Eq(lhs, rhs)) => FormulaRepr::Eq { lhs, rhs },
            Formula::Atom(Atom::Pred(symbol, args)) => FormulaRepr::Pred { symbol, args },
            Formula::Not(b) => FormulaRepr::Not { body: *b },
            Formula::And(parts) => FormulaRepr::And { parts },
            Formula::Or(parts) => FormulaRepr::Or { parts },
            Formula::Implies(a, b) => FormulaRepr::Implies { lhs: *a, rhs: *b },
            Formula::Iff(a, b) => FormulaRepr::Iff { lhs: *a, rhs: *b },
            Formula::Forall(var, b) => FormulaRepr::Forall { var, body: *b },
            Formula::Exists(var, b) => FormulaRepr::Exists { var, body: *b },
        };
        r.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match FormulaRepr::deserialize(d)? {
            FormulaRepr::True => Formula::True,
            FormulaRepr::False => Formula::False,
            FormulaRepr::Eq { lhs, rhs } => Formula::eq(lhs, rhs),
            FormulaRepr::Pred { symbol, args } => Formula::pred(symbol, args),
            FormulaRepr::Not { body } => Formula::not(body),
            FormulaRepr::And { parts } => Formula::And(parts),
            FormulaRepr::Or { parts } => Formula::Or(parts),
            FormulaRepr::Implies { lhs, rhs } => Formula::implies(lhs, rhs),
            FormulaRepr::Iff { lhs, rhs } => Formula::iff(lhs, rhs),
            FormulaRepr::Forall { var, body } => Formula::forall(var, body),
            FormulaRepr::Exists { var, body } => Formula::exists(var, body),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_clause_set, parse_formula, Language};

    #[test]
    fn json_roundtrip() {
        let lang = Language::default();
        let f = parse_formula("forall x. exists y. x = y + y | ~(x = s(0))", &lang).unwrap();
        let j = serde_json::to_string(&f).unwrap();
        assert!(j.contains("\"kind\":\"forall\""));
        assert_eq!(serde_json::from_str::<Formula>(&j).unwrap(), f);
        let c = parse_clause_set("[eta != x + x]\n[x + 0 = x]", &lang).unwrap();
        let j = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<ClauseSet>(&j).unwrap(), c);
        assert_eq!(parse_clause_set(&j, &lang).unwrap(), c);
    }
}
