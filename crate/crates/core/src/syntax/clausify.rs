//! Conversions between universal sentences and clause sets.

use std::collections::{BTreeMap, BTreeSet};

use super::clause::{Clause, ClauseSet, Literal};
use super::formula::{Formula, QuantClass};
use super::term::{Term, ETA, PLUS, PRED, SUCC, ZERO};
use super::SyntaxError;

/// Upper bound on the number of clauses produced by distributive CNF.
pub const CNF_LIMIT: usize = 200_000;

/// Distributive CNF of a quantifier-free NNF formula, as raw literal lists.
pub fn cnf_matrix(f: &Formula) -> Result<Vec<Vec<Literal>>, SyntaxError> {
    Ok(match f {
        Formula::True => Vec::new(),
        Formula::False => vec![Vec::new()],
        Formula::Atom(a) => vec![vec![Literal { atom: a.clone(), positive: true }]],
        Formula::Not(inner) => match &**inner {
            Formula::Atom(a) => vec![vec![Literal { atom: a.clone(), positive: false }]],
            _ => return cnf_matrix(&f.nnf()),
        },
        Formula::And(fs) => {
            let mut out = Vec::new();
            for g in fs {
                out.extend(cnf_matrix(g)?);
                if out.len() > CNF_LIMIT {
                    return Err(SyntaxError::TooLarge(format!("CNF exceeds {CNF_LIMIT} clauses")));
                }
            }
            out
        }
        Formula::Or(fs) => {
            let mut acc: Vec<Vec<Literal>> = vec![Vec::new()];
            for g in fs {
                let part = cnf_matrix(g)?;
                if acc.len().saturating_mul(part.len()) > CNF_LIMIT {
                    return Err(SyntaxError::TooLarge(format!("CNF exceeds {CNF_LIMIT} clauses")));
                }
                let mut next = Vec::with_capacity(acc.len() * part.len());
                for a in &acc {
                    for p in &part {
                        let mut c = a.clone();
                        c.extend(p.iter().cloned());
                        next.push(c);
                    }
                }
                acc = next;
            }
            acc
        }
        Formula::Implies(..) | Formula::Iff(..) => return cnf_matrix(&f.nnf()),
        Formula::Forall(..) | Formula::Exists(..) => {
            return Err(SyntaxError::Fragment("quantifier inside a matrix".into()))
        }
    })
}

/// `cls`: clause set of a universal sentence (free variables are read universally).
///
/// Accepts open and `∀₁` formulas, and formulas whose negation normal form has
/// no existential quantifier.
pub fn cls(phi: &Formula) -> Result<ClauseSet, SyntaxError> {
    let prenex = match phi.classify() {
        QuantClass::Open | QuantClass::Forall(1) => phi.clone(),
        _ if phi.is_logically_universal() => phi.prenex_single_kind().expect("single quantifier kind"),
        c => return Err(SyntaxError::NotUniversal(format!("{phi} is {c}"))),
    };
    let (_, matrix) = prenex.strip_prefix();
    let clauses = cnf_matrix(&matrix.nnf())?;
    Ok(ClauseSet::new(clauses.into_iter().map(Clause::new)))
}

/// `cls` of several universal sentences.
pub fn cls_all<'a>(phis: impl IntoIterator<Item = &'a Formula>) -> Result<ClauseSet, SyntaxError> {
    let mut out = Vec::new();
    for f in phis {
        out.extend(cls(f)?.clauses().iter().cloned());
    }
    Ok(ClauseSet::new(out))
}

/// `cls⁻¹`: the universal closure of the conjunction of the clauses, with one
/// shared prenex block of the canonical clause variables.
pub fn cls_inv(c: &ClauseSet) -> Formula {
    let mut vars: BTreeSet<(usize, String)> = BTreeSet::new();
    let conj: Vec<Formula> = c
        .iter()
        .map(|cl| {
            for v in cl.vars() {
                vars.insert((var_rank(&v), v));
            }
            Formula::or(cl.literals().iter().map(Formula::literal).collect())
        })
        .collect();
    let names: Vec<String> = vars.into_iter().map(|(_, v)| v).collect();
    Formula::forall_many(&names, Formula::and(conj))
}

fn var_rank(v: &str) -> usize {
    (0..10_000).find(|&i| super::clause::canonical_var(i) == v).unwrap_or(usize::MAX)
}

/// Clausifies a sentence, replacing existentials that are not in the scope of
/// a universal quantifier by fresh constants `prefix0`, `prefix1`, ...
///
/// Returns the clauses and the constants introduced.
pub fn clausify_skolem(phi: &Formula, prefix: &str, start: usize) -> Result<(Vec<Clause>, Vec<String>), SyntaxError> {
    let nnf = phi.universal_closure().nnf();
    let mut consts = Vec::new();
    let mut used = nnf.all_vars();
    let matrix = skolem_rec(&nnf, false, prefix, start, &mut consts, &mut used)?;
    let clauses = cnf_matrix(&matrix)?;
    Ok((clauses.into_iter().map(Clause::new).collect(), consts))
}

fn skolem_rec(
    f: &Formula,
    under_forall: bool,
    prefix: &str,
    start: usize,
    consts: &mut Vec<String>,
    used: &mut BTreeSet<String>,
) -> Result<Formula, SyntaxError> {
    Ok(match f {
        Formula::Exists(x, body) => {
            if under_forall {
                return Err(SyntaxError::Fragment(format!(
                    "existential `{x}` under a universal quantifier needs a Skolem function"
                )));
            }
            let name = format!("{prefix}{}", start + consts.len());
            consts.push(name.clone());
            let b = body.subst1(x, &Term::constant(name));
            skolem_rec(&b, under_forall, prefix, start, consts, used)?
        }
        Formula::Forall(x, body) => {
            let fresh = super::formula::fresh_name(x, used);
            used.insert(fresh.clone());
            let b = body.subst1(x, &Term::var(fresh));
            skolem_rec(&b, true, prefix, start, consts, used)?
        }
        Formula::And(fs) => Formula::And(
            fs.iter().map(|g| skolem_rec(g, under_forall, prefix, start, consts, used)).collect::<Result<_, _>>()?,
        ),
        Formula::Or(fs) => Formula::Or(
            fs.iter().map(|g| skolem_rec(g, under_forall, prefix, start, consts, used)).collect::<Result<_, _>>()?,
        ),
        _ => f.clone(),
    })
}

/// Clause set equivalent to the disjunction of the members.
pub fn disjoin_clause_sets(family: &[ClauseSet]) -> Result<ClauseSet, SyntaxError> {
    if family.is_empty() {
        return Err(SyntaxError::EmptyFamily);
    }
    let mut acc: Vec<Vec<Literal>> = vec![Vec::new()];
    for (i, member) in family.iter().enumerate() {
        let suffix = format!("_d{i}");
        let renamed: Vec<Vec<Literal>> = member.iter().map(|c| c.rename_apart(&suffix)).collect();
        if acc.len().saturating_mul(renamed.len()) > CNF_LIMIT {
            return Err(SyntaxError::TooLarge(format!("disjunction exceeds {CNF_LIMIT} clauses")));
        }
        let mut next = Vec::new();
        for a in &acc {
            for c in &renamed {
                let mut lits = a.clone();
                lits.extend(c.iter().cloned());
                next.push(lits);
            }
        }
        acc = next;
    }
    Ok(ClauseSet::new(acc.into_iter().map(Clause::new)))
}

/// Replaces `eta` by `t`; variables of `t` are renamed apart from clause variables.
pub fn instantiate_eta(c: &ClauseSet, t: &Term) -> ClauseSet {
    let renaming: BTreeMap<String, String> = t.vars().into_iter().map(|v| (v.clone(), format!("{v}_t"))).collect();
    let t = t.rename_vars(&renaming);
    c.map_clauses(|cl| cl.map_terms(|u| u.replace_constant(ETA, &t)))
}

/// Value in ℕ of a ground term over `{0, s, p, +}`.
pub fn eval_ground_nat(t: &Term) -> Result<u64, SyntaxError> {
    match t {
        Term::Var(x) => Err(SyntaxError::NonGround(format!("variable {x}"))),
        Term::App(f, args) => match (f.as_str(), args.as_slice()) {
            (ZERO, []) => Ok(0),
            (SUCC, [a]) => Ok(eval_ground_nat(a)? + 1),
            (PRED, [a]) => Ok(eval_ground_nat(a)?.saturating_sub(1)),
            (PLUS, [a, b]) => Ok(eval_ground_nat(a)? + eval_ground_nat(b)?),
            _ => Err(SyntaxError::Undeclared { symbol: f.clone(), pos: None }),
        },
    }
}

/// `normalize_ground_term`: the `k` with `B ⊢ t = k̄`.
pub fn normalize_ground_term(t: &Term) -> Result<u64, SyntaxError> {
    eval_ground_nat(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{numeral, parse_clause_set, parse_formula, parse_term, Language};

    fn la() -> Language {
        Language::default()
    }

    #[test]
    fn cls_of_b1() {
        let f = parse_formula("forall x. x = 0 | x = s(p(x))", &la()).unwrap();
        let c = cls(&f).unwrap();
        assert_eq!(c.to_string().trim(), "[x = 0, x = s(p(x))]");
        let e = parse_formula("exists x. x = 0", &la()).unwrap();
        assert!(matches!(cls(&e), Err(SyntaxError::NotUniversal(_))));
    }

    #[test]
    fn cls_inverse_roundtrip() {
        let c = parse_clause_set("[eta != x + x]\n[eta != s(x + x)]", &la()).unwrap();
        let f = cls_inv(&c);
        assert_eq!(f.to_string(), "forall x. x + x != eta & s(x + x) != eta");
        assert_eq!(cls(&f).unwrap(), c);
        let lang = la().with_function("a", 0).with_function("b", 0);
        let c = parse_clause_set("[a = 0]\n[b != 0]", &lang).unwrap();
        assert_eq!(cls(&cls_inv(&c)).unwrap(), c);
        assert_eq!(cls_inv(&ClauseSet::default()), Formula::True);
    }

    #[test]
    fn disjunction_renames_apart() {
        let a = parse_clause_set("[x = 0]", &la()).unwrap();
        let b = parse_clause_set("[x = s(0)]", &la()).unwrap();
        let d = disjoin_clause_sets(&[a.clone(), b]).unwrap();
        assert_eq!(d.to_string().trim(), "[x = 0, y = #1]");
        assert_eq!(disjoin_clause_sets(std::slice::from_ref(&a)).unwrap(), a);
        assert!(disjoin_clause_sets(&[]).is_err());
    }

    #[test]
    fn eta_instantiation() {
        let c = parse_clause_set("[eta != x + x]", &la()).unwrap();
        let d = instantiate_eta(&c, &Term::succ(Term::eta()));
        assert_eq!(d.to_string().trim(), "[x + x != s(eta)]");
        let e = instantiate_eta(&c, &Term::var("x"));
        assert_eq!(e.clauses()[0].vars().len(), 2);
        let free = parse_clause_set("[x + 0 = x]", &la()).unwrap();
        assert_eq!(instantiate_eta(&free, &numeral(3)), free);
    }

    #[test]
    fn ground_values() {
        let v = |s: &str| normalize_ground_term(&parse_term(s, &la()).unwrap()).unwrap();
        assert_eq!(v("s(0) + s(s(0))"), 3);
        assert_eq!(v("p(0)"), 0);
        assert_eq!(v("p(s(s(0)))"), 1);
        assert!(normalize_ground_term(&parse_term("x + 0", &la()).unwrap()).is_err());
    }

    #[test]
    fn skolemization() {
        let f = parse_formula("~(forall x. eta != x + x)", &la()).unwrap();
        let (cs, ks) = clausify_skolem(&f, "sk", 0).unwrap();
        assert_eq!(ks, vec!["sk0".to_string()]);
        assert_eq!(cs.len(), 1);
        assert!(cs[0].is_ground());
        let bad = parse_formula("forall x. exists y. x = y", &la()).unwrap();
        assert!(clausify_skolem(&bad, "sk", 0).is_err());
    }
}
