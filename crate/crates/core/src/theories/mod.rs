//! Named theories, induction axioms and rules, inductivity checks and the
//! concrete clause sets `C(eta)`, `E_{k,n,m}(eta)` and the `{0, s, P, f}` set.

mod clause_sets;
mod induction;

pub use clause_sets::{clause_set_e, clause_set_p, e_formula, e_sides, example_cycle_c};
pub use induction::{
    fuse_inductive, induction_axiom, is_inductive, rule_closure_certificates, rule_instance, Certificate,
    InductionKind, RuleInstance, RuleKind,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::entailment::{EngineError, Verdict, SKOLEM_PREFIX};
use crate::syntax::{clausify_skolem, parse_formula, ClauseSet, Formula, Language, SyntaxError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TheoryError {
    #[error("`{var}` is not free in {formula}")]
    NotFree { var: String, formula: String },
    #[error("parameters must satisfy 0 < n < m, got n = {n}, m = {m}")]
    Parameters { n: u64, m: u64 },
    #[error("empty list of formulas")]
    Empty,
    #[error("axiom {name} is not a sentence of the theory's language: {reason}")]
    BadAxiom { name: String, reason: String },
    #[error("certificate {index} does not fit the rule: {reason}")]
    Shape { index: usize, reason: String },
    #[error("certificate {index} is not inductive (base: {base}, step: {step})")]
    Rejected { index: usize, base: Box<Verdict>, step: Box<Verdict> },
    #[error("unknown theory `{0}` (expected B, Bprime, V:<k> or P)")]
    Unknown(String),
    #[error("invalid theory file: {0}")]
    File(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

/// A named finite list of sentences over a language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    pub name: String,
    pub language: Language,
    axioms: Vec<(String, Formula)>,
}

impl Theory {
    /// The theory without axioms.
    pub fn empty(language: Language) -> Theory {
        Theory { name: "∅".into(), language, axioms: Vec::new() }
    }

    pub fn new(
        name: impl Into<String>,
        language: Language,
        axioms: Vec<(String, Formula)>,
    ) -> Result<Theory, TheoryError> {
        let mut t = Theory { name: name.into(), language, axioms: Vec::new() };
        for (n, f) in axioms {
            t.add(n, f)?;
        }
        Ok(t)
    }

    /// Adds an axiom after checking that it is a sentence of the language.
    pub fn add(&mut self, name: impl Into<String>, axiom: Formula) -> Result<(), TheoryError> {
        let name = name.into();
        if let Some(x) = axiom.free_vars().first() {
            return Err(TheoryError::BadAxiom { name, reason: format!("free variable {x}") });
        }
        let (functions, predicates) = axiom.signature();
        if let Err(e) = self.language.check_symbols(&functions, &predicates) {
            return Err(TheoryError::BadAxiom { name, reason: e.to_string() });
        }
        self.axioms.push((name, axiom));
        Ok(())
    }

    pub fn axioms(&self) -> impl Iterator<Item = &Formula> {
        self.axioms.iter().map(|(_, f)| f)
    }

    pub fn named_axioms(&self) -> impl Iterator<Item = (String, &Formula)> {
        self.axioms.iter().map(|(n, f)| (n.clone(), f))
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn axiom(&self, name: &str) -> Option<&Formula> {
        self.axioms.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    /// `self + other`, over the union of the languages.
    pub fn union(&self, other: &Theory) -> Result<Theory, TheoryError> {
        let language = self.language.merge(&other.language)?;
        let mut t = Theory { name: format!("{} + {}", self.name, other.name), language, axioms: self.axioms.clone() };
        for (n, f) in &other.axioms {
            if !t.axioms.iter().any(|(_, g)| g == f) {
                t.axioms.push((n.clone(), f.clone()));
            }
        }
        Ok(t)
    }

    /// Clause form of the axioms. Existentials outside universal
    /// quantifiers are replaced by fresh constants.
    pub fn clauses(&self) -> Result<ClauseSet, EngineError> {
        let mut out = Vec::new();
        let mut used = 0;
        for f in self.axioms() {
            let (functions, _) = f.signature();
            used = used.max(
                functions
                    .keys()
                    .filter_map(|s| s.strip_prefix(SKOLEM_PREFIX).and_then(|n| n.parse::<usize>().ok()))
                    .map(|n| n + 1)
                    .max()
                    .unwrap_or(0),
            );
        }
        for f in self.axioms() {
            let (clauses, consts) = clausify_skolem(f, SKOLEM_PREFIX, used)?;
            used += consts.len();
            out.extend(clauses);
        }
        Ok(ClauseSet::new(out))
    }

    /// Reads `{"name": ..., "language": {...}, "axioms": ["formula", ...]}`.
    pub fn from_json(text: &str) -> Result<Theory, TheoryError> {
        let file: TheoryFile = serde_json::from_str(text).map_err(|e| TheoryError::File(e.to_string()))?;
        let mut axioms = Vec::new();
        for (i, src) in file.axioms.iter().enumerate() {
            axioms.push((format!("{}{}", file.name, i + 1), parse_formula(src, &file.language)?.universal_closure()));
        }
        Theory::new(file.name, file.language, axioms)
    }

    pub fn to_json(&self) -> String {
        let file = TheoryFile {
            name: self.name.clone(),
            language: self.language.clone(),
            axioms: self.axioms().map(|f| f.to_string()).collect(),
        };
        serde_json::to_string_pretty(&file).expect("theory serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct TheoryFile {
    name: String,
    language: Language,
    axioms: Vec<String>,
}

fn sentence(text: &str, lang: &Language) -> Formula {
    parse_formula(text, lang).expect("built-in axiom parses").universal_closure()
}

fn build(name: &str, lang: Language, axioms: &[(&str, &str)]) -> Theory {
    let axioms = axioms.iter().map(|(n, s)| (n.to_string(), sentence(s, &lang))).collect();
    Theory::new(name, lang, axioms).expect("built-in theory is well formed")
}

const AXIOMS_B: [(&str, &str); 5] = [
    ("A1", "s(0) != 0"),
    ("A2", "p(0) = 0"),
    ("A3", "p(s(x)) = x"),
    ("A4", "x + 0 = x"),
    ("A5", "x + s(y) = s(x + y)"),
];

const AXIOMS_B_EXTRA: [(&str, &str); 4] = [
    ("B1", "x = 0 | x = s(p(x))"),
    ("B2", "x + y = y + x"),
    ("B3", "x + (y + z) = (x + y) + z"),
    ("B4", "x + y = x + z -> y = z"),
];

/// `B`: the axioms `A1`–`A5`.
pub fn axioms_b() -> Theory {
    build("B", Language::linear_arithmetic(), &AXIOMS_B)
}

/// `B'`: `A1`–`A5` and `B1`–`B4`.
pub fn axioms_bprime() -> Theory {
    let all: Vec<(&str, &str)> = AXIOMS_B.iter().chain(AXIOMS_B_EXTRA.iter()).copied().collect();
    build("Bprime", Language::linear_arithmetic(), &all)
}

/// One of `B1`–`B4` as a single-axiom theory.
pub fn axiom_b(i: usize) -> Theory {
    let (name, text) = AXIOMS_B_EXTRA[i - 1];
    build(name, Language::linear_arithmetic(), &[(name, text)])
}

/// `B` extended by the listed `B`-axioms, e.g. `b_plus(&[2, 3])` is `B + B2 + B3`.
pub fn b_plus(extra: &[usize]) -> Theory {
    let mut t = axioms_b();
    for &i in extra {
        t = t.union(&axiom_b(i)).expect("same language");
    }
    t
}

/// `{V_0, ..., V_max_k}` with `V_k: #k + x = x + #k`.
pub fn axioms_v(max_k: u64) -> Theory {
    let lang = Language::linear_arithmetic();
    let axioms = (0..=max_k).map(|k| (format!("V{k}"), sentence(&format!("#{k} + x = x + #{k}"), &lang))).collect();
    Theory::new(format!("V:{max_k}"), lang, axioms).expect("well formed")
}

/// The theory over `{0, s, P, f}` with `P(0)` and `P(x) -> P(s(x))`.
pub fn axioms_p() -> Theory {
    build(
        "P",
        Language::induction_language().without_eta(),
        &[("P1", "0 != s(x)"), ("P2", "s(x) = s(y) -> x = y"), ("P3", "P(0)"), ("P4", "P(x) -> P(s(x))")],
    )
}

/// Built-in theory by name: `B`, `Bprime`, `V:<k>` or `P`.
pub fn builtin(name: &str) -> Result<Theory, TheoryError> {
    match name {
        "B" => Ok(axioms_b()),
        "Bprime" | "B'" => Ok(axioms_bprime()),
        "P" => Ok(axioms_p()),
        _ => match name.strip_prefix("V:").and_then(|k| k.parse::<u64>().ok()) {
            Some(k) => Ok(axioms_v(k)),
            None => Err(TheoryError::Unknown(name.to_string())),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_axiom_lists() {
        assert_eq!(axioms_b().len(), 5);
        assert_eq!(axioms_bprime().len(), 9);
        let b1 = axioms_bprime().axiom("B1").unwrap().to_string();
        assert_eq!(b1, "forall x. x = 0 | x = s(p(x))");
        let v = axioms_v(2);
        assert_eq!(v.len(), 3);
        assert_eq!(v.axiom("V0").unwrap().to_string(), "forall x. 0 + x = x + 0");
        assert_eq!(builtin("V:2").unwrap(), v);
        assert!(builtin("Q").is_err());
        assert!(axioms_p().language.predicate_arity("P") == Some(1));
    }

    #[test]
    fn json_roundtrip_and_checks() {
        let t = axioms_b();
        let back = Theory::from_json(&t.to_json()).unwrap();
        assert_eq!(back.axioms().collect::<Vec<_>>(), t.axioms().collect::<Vec<_>>());
        let mut bad = Theory::empty(Language::linear_arithmetic());
        let f = parse_formula("P(0)", &Language::induction_language()).unwrap();
        assert!(bad.add("x", f).is_err());
        let union = axioms_b().union(&axioms_v(1)).unwrap();
        assert_eq!(union.len(), 7);
        assert!(axioms_b().union(&axioms_p()).is_ok());
    }

    #[test]
    fn clauses_skolemize_existential_axioms() {
        let lang = Language::linear_arithmetic();
        let t =
            Theory::new("t", lang.clone(), vec![("e".into(), parse_formula("exists y. y + y = s(0)", &lang).unwrap())])
                .unwrap();
        let c = t.clauses().unwrap();
        assert_eq!(c.len(), 1);
        assert!(c.clauses()[0].is_ground());
    }
}
