use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::DescentError;
use crate::syntax::{Atom, Literal, Term, PLUS, SUCC, ZERO};

/// `a · x̄ + constant` over the variables of a system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Linear {
    pub coeffs: BTreeMap<String, i64>,
    pub constant: i64,
}

fn overflow() -> DescentError {
    DescentError::Overflow
}

impl Linear {
    fn add(mut self, other: Linear) -> Result<Linear, DescentError> {
        for (x, a) in other.coeffs {
            let e = self.coeffs.entry(x).or_insert(0);
            *e = e.checked_add(a).ok_or_else(overflow)?;
        }
        self.constant = self.constant.checked_add(other.constant).ok_or_else(overflow)?;
        Ok(self)
    }

    fn neg(mut self) -> Linear {
        self.coeffs.values_mut().for_each(|a| *a = -*a);
        self.constant = -self.constant;
        self
    }

    fn row(&self, vars: &[String]) -> Vec<i64> {
        vars.iter().map(|x| self.coeffs.get(x).copied().unwrap_or(0)).collect()
    }
}

pub(crate) fn linearize_term(t: &Term) -> Result<Linear, DescentError> {
    match t {
        Term::Var(x) => Ok(Linear { coeffs: BTreeMap::from([(x.clone(), 1)]), constant: 0 }),
        Term::App(f, args) => match (f.as_str(), args.as_slice()) {
            (ZERO, []) => Ok(Linear { coeffs: BTreeMap::new(), constant: 0 }),
            (SUCC, [a]) => {
                let mut l = linearize_term(a)?;
                l.constant = l.constant.checked_add(1).ok_or_else(overflow)?;
                Ok(l)
            }
            (PLUS, [a, b]) => linearize_term(a)?.add(linearize_term(b)?),
            _ => Err(DescentError::NotLinear(t.to_string())),
        },
    }
}

/// `lhs - rhs` of an equation.
pub(crate) fn linearize_literal(l: &Literal) -> Result<Linear, DescentError> {
    let Atom::Eq(a, b) = &l.atom else { return Err(DescentError::NotLinear(l.to_string())) };
    linearize_term(a)?.add(linearize_term(b)?.neg())
}

/// `a x̄ = b` with one row per positive literal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinSystem {
    pub vars: Vec<String>,
    pub a: Vec<Vec<i64>>,
    pub b: Vec<i64>,
}

/// `coeffs · x̄ + constant != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegConstraint {
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

pub(crate) fn dot(a: &[i64], x: &[i64]) -> Option<i64> {
    a.iter().zip(x).try_fold(0i64, |acc, (a, x)| acc.checked_add(a.checked_mul(*x)?))
}

impl LinSystem {
    pub(crate) fn push(&mut self, l: &Linear) {
        self.a.push(l.row(&self.vars));
        self.b.push(-l.constant);
    }

    /// `A x = b`, exactly.
    pub fn satisfied_by(&self, x: &[i64]) -> bool {
        x.len() == self.vars.len() && self.a.iter().zip(&self.b).all(|(row, b)| dot(row, x) == Some(*b))
    }

    /// `A h = 0`, exactly.
    pub fn is_homogeneous_solution(&self, h: &[i64]) -> bool {
        h.len() == self.vars.len() && self.a.iter().all(|row| dot(row, h) == Some(0))
    }
}

impl fmt::Display for LinSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (row, b) in self.a.iter().zip(&self.b) {
            writeln!(f, "{} = {b}", linear_display(row, &self.vars, 0))?;
        }
        Ok(())
    }
}

impl NegConstraint {
    pub(crate) fn new(l: &Linear, vars: &[String]) -> NegConstraint {
        NegConstraint { coeffs: l.row(vars), constant: l.constant }
    }

    pub fn value(&self, x: &[i64]) -> Option<i64> {
        dot(&self.coeffs, x)?.checked_add(self.constant)
    }

    pub fn satisfied_by(&self, x: &[i64]) -> bool {
        self.value(x).is_some_and(|v| v != 0)
    }

    pub fn display(&self, vars: &[String]) -> String {
        format!("{} != 0", linear_display(&self.coeffs, vars, self.constant))
    }
}

fn linear_display(coeffs: &[i64], vars: &[String], constant: i64) -> String {
    let mut out = String::new();
    for (a, x) in coeffs.iter().zip(vars).filter(|(a, _)| **a != 0) {
        let sign = if *a < 0 { "-" } else { "+" };
        let mag = if a.abs() == 1 { String::new() } else { format!("{}·", a.abs()) };
        if out.is_empty() {
            out = format!("{}{mag}{x}", if *a < 0 { "-" } else { "" });
        } else {
            out.push_str(&format!(" {sign} {mag}{x}"));
        }
    }
    match (out.is_empty(), constant) {
        (true, c) => c.to_string(),
        (false, 0) => out,
        (false, c) if c < 0 => format!("{out} - {}", -c),
        (false, c) => format!("{out} + {c}"),
    }
}

/// Integer solutions of a system: a particular solution if one exists, and
/// a basis of the lattice of homogeneous solutions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZSolution {
    pub particular: Option<Vec<i64>>,
    pub basis: Vec<Vec<i64>>,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        return if a < 0 { (-a, -1, 0) } else { (a, 1, 0) };
    }
    let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
    (g, t, s - a.div_euclid(b) * t)
}

fn narrow(v: &[i128]) -> Result<Vec<i64>, DescentError> {
    v.iter().map(|&x| i64::try_from(x).map_err(|_| overflow())).collect()
}

/// Column Hermite elimination `A U = H` with `U` unimodular and `H` in
/// lower column echelon form.
pub fn solve_z(system: &LinSystem) -> Result<ZSolution, DescentError> {
    let n = system.vars.len();
    let mut h: Vec<Vec<i128>> = system.a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    let combine = |m: &mut Vec<Vec<i128>>, i: usize, c: usize, k: [i128; 4]| -> Result<(), DescentError> {
        for row in m.iter_mut() {
            let (x, y) = (row[i], row[c]);
            let nx = k[0].checked_mul(x).and_then(|p| k[1].checked_mul(y).and_then(|q| p.checked_add(q)));
            let ny = k[2].checked_mul(x).and_then(|p| k[3].checked_mul(y).and_then(|q| p.checked_add(q)));
            row[i] = nx.ok_or_else(overflow)?;
            row[c] = ny.ok_or_else(overflow)?;
        }
        Ok(())
    };
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut col = 0;
    for r in 0..h.len() {
        if col == n {
            break;
        }
        for c in col + 1..n {
            let (a, b) = (h[r][col], h[r][c]);
            if b == 0 {
                continue;
            }
            let (g, s, t) = ext_gcd(a, b);
            let k = [s, t, -b / g, a / g];
            combine(&mut h, col, c, k)?;
            combine(&mut u, col, c, k)?;
        }
        if h[r][col] != 0 {
            if h[r][col] < 0 {
                h.iter_mut().chain(u.iter_mut()).for_each(|row| row[col] = -row[col]);
            }
            pivots.push((r, col));
            col += 1;
        }
    }
    let mut y = vec![0i128; n];
    let mut consistent = true;
    let mut next = pivots.iter().peekable();
    for (r, row) in h.iter().enumerate() {
        let mut acc: i128 = 0;
        // y at this row's pivot is still 0.
        for j in 0..col {
            acc = acc.checked_add(row[j].checked_mul(y[j]).ok_or_else(overflow)?).ok_or_else(overflow)?;
        }
        let rest = i128::from(system.b[r]) - acc;
        match next.peek() {
            Some(&&(pr, pc)) if pr == r => {
                next.next();
                if rest % row[pc] != 0 {
                    consistent = false;
                    break;
                }
                y[pc] = rest / row[pc];
            }
            _ => {
                if rest != 0 {
                    consistent = false;
                    break;
                }
            }
        }
    }
    let column = |j: usize| -> Vec<i128> { u.iter().map(|row| row[j]).collect() };
    let mut basis = Vec::new();
    for j in col..n {
        let mut v = column(j);
        if v.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        basis.push(narrow(&v)?);
    }
    let particular = if consistent {
        let mut x = vec![0i128; n];
        for (i, xi) in x.iter_mut().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                *xi = xi.checked_add(u[i][j].checked_mul(*yj).ok_or_else(overflow)?).ok_or_else(overflow)?;
            }
        }
        Some(narrow(&x)?)
    } else {
        None
    };
    let out = ZSolution { particular, basis };
    if out.particular.as_ref().is_some_and(|p| !system.satisfied_by(p))
        || out.basis.iter().any(|h| !system.is_homogeneous_solution(h))
    {
        return Err(DescentError::Internal("integer elimination produced a non-solution".into()));
    }
    Ok(out)
}
