use super::{axioms_p, b_plus, TheoryError};
use crate::syntax::{cls, cls_all, numeral, scalar_mul, ClauseSet, Formula, Term};

/// `C(eta) = cls(B + B2) ∪ {{eta != x + x}, {eta != s(x + x)}}`.
pub fn example_cycle_c() -> ClauseSet {
    let t = b_plus(&[2]);
    let base = cls_all(t.axioms()).expect("universal axioms");
    let x = Term::var("x");
    let even = Formula::forall("x", Formula::neq(Term::eta(), Term::plus(x.clone(), x.clone())));
    let odd = Formula::forall("x", Formula::neq(Term::eta(), Term::succ(Term::plus(x.clone(), x))));
    base.union(&cls(&even).expect("universal")).union(&cls(&odd).expect("universal"))
}

/// The two sides `n·x + #((m-n)k)` and `m·x` of the antecedent of `E_{k,n,m}(x)`.
pub fn e_sides(k: u64, n: u64, m: u64, x: &Term) -> Result<(Term, Term), TheoryError> {
    if n == 0 || n >= m {
        return Err(TheoryError::Parameters { n, m });
    }
    Ok((Term::plus(scalar_mul(n, x), numeral((m - n) * k)), scalar_mul(m, x)))
}

/// `E_{k,n,m}(x)`: `n·x + #((m-n)k) = m·x -> x = #k`.
pub fn e_formula(k: u64, n: u64, m: u64) -> Result<Formula, TheoryError> {
    let x = Term::var("x");
    let (lhs, rhs) = e_sides(k, n, m, &x)?;
    Ok(Formula::implies(Formula::eq(lhs, rhs), Formula::eq(x, numeral(k))))
}

/// `E_{k,n,m}(eta) = cls(B + B2 + B3 + ¬E_{k,n,m}(eta))`.
pub fn clause_set_e(k: u64, n: u64, m: u64) -> Result<ClauseSet, TheoryError> {
    let negated = Formula::not(e_formula(k, n, m)?.subst1("x", &Term::eta()));
    let t = b_plus(&[2, 3]);
    Ok(cls_all(t.axioms())?.union(&cls(&negated)?))
}

/// `cls(P + ¬P(f(eta)))` over `{0, s, P, f}`.
pub fn clause_set_p() -> ClauseSet {
    let t = axioms_p();
    let goal = Formula::not(Formula::pred("P", vec![Term::app("f", vec![Term::eta()])]));
    cls_all(t.axioms()).expect("universal axioms").union(&cls(&goal).expect("open sentence"))
}
