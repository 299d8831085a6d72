use super::{check_fragment, prenex, NormalizeError};
use crate::syntax::{Atom, Formula, FreshVars, Literal, Term, PRED};

/// Def. of the predecessor graph: `(x = 0 & y = 0) | s(y) = x`. Over
/// `B + B1` it is equivalent to `p(x) = y`.
pub fn predecessor_graph(x: &Term, y: &Term) -> Formula {
    Formula::or(vec![
        Formula::and(vec![Formula::eq(x.clone(), Term::zero()), Formula::eq(y.clone(), Term::zero())]),
        Formula::eq(Term::succ(y.clone()), x.clone()),
    ])
}

/// Rewrites every literal of a quantifier-free NNF matrix. The rewrite may
/// add definitions and fresh existential variables.
fn rewrite_literals(
    m: &Formula,
    f: &mut impl FnMut(&Literal) -> Result<Formula, NormalizeError>,
) -> Result<Formula, NormalizeError> {
    Ok(match m {
        Formula::True | Formula::False => m.clone(),
        Formula::Atom(a) => f(&Literal { atom: a.clone(), positive: true })?,
        Formula::Not(inner) => match &**inner {
            Formula::Atom(a) => f(&Literal { atom: a.clone(), positive: false })?,
            _ => return Err(NormalizeError::Fragment(format!("not in negation normal form: {m}"))),
        },
        Formula::And(fs) => Formula::and(fs.iter().map(|g| rewrite_literals(g, f)).collect::<Result<_, _>>()?),
        Formula::Or(fs) => Formula::or(fs.iter().map(|g| rewrite_literals(g, f)).collect::<Result<_, _>>()?),
        _ => return Err(NormalizeError::Fragment(format!("expected a quantifier-free matrix: {m}"))),
    })
}

struct Flattener {
    fresh: FreshVars,
    defs: Vec<Formula>,
    vars: Vec<String>,
}

impl Flattener {
    fn new_var(&mut self) -> Term {
        let w = self.fresh.fresh();
        self.vars.push(w.clone());
        Term::var(w)
    }

    /// A variable standing for `t`.
    fn name(&mut self, t: &Term) -> Term {
        if t.is_var() {
            return t.clone();
        }
        let flat = self.flat(t);
        let w = self.new_var();
        self.defs.push(Formula::eq(flat, w.clone()));
        w
    }

    /// `t` with every argument replaced by a variable.
    fn flat(&mut self, t: &Term) -> Term {
        match t {
            Term::Var(_) => t.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| self.name(a)).collect()),
        }
    }

    /// `t` with every `p`-application replaced by a variable `v` defined through
    /// the predecessor graph.
    fn name_pred(&mut self, t: &Term) -> Term {
        match t {
            Term::Var(_) => t.clone(),
            Term::App(f, args) if f == PRED && args.len() == 1 => {
                let arg = self.name_pred(&args[0]);
                let u = if arg.is_var() {
                    arg
                } else {
                    let u = self.new_var();
                    self.defs.push(Formula::eq(arg, u.clone()));
                    u
                };
                let v = self.new_var();
                self.defs.push(predecessor_graph(&u, &v));
                v
            }
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| self.name_pred(a)).collect()),
        }
    }

    fn wrap(&mut self, l: Literal) -> Formula {
        let mut parts = std::mem::take(&mut self.defs);
        parts.push(Formula::literal(&l));
        Formula::and(parts)
    }
}

fn start(phi: &Formula, prefix: &str) -> Result<(Vec<String>, Formula, Flattener), NormalizeError> {
    check_fragment(phi)?;
    let (bound, matrix) = prenex(phi)?;
    let fresh = FreshVars::new(prefix, phi.all_vars());
    Ok((bound, matrix, Flattener { fresh, defs: Vec::new(), vars: Vec::new() }))
}

/// An equivalent prenex existential formula whose atoms are unnested: every
/// function application has variable arguments and every atom has a
/// variable on at least one side.
pub fn unnest(phi: &Formula) -> Result<Formula, NormalizeError> {
    let (mut bound, matrix, mut fl) = start(phi, "u")?;
    let out = rewrite_literals(&matrix, &mut |l| {
        let Atom::Eq(a, b) = &l.atom else { return Err(NormalizeError::Predicate(l.to_string())) };
        let atom = if a.is_var() {
            Atom::Eq(a.clone(), fl.flat(b))
        } else if b.is_var() {
            Atom::Eq(fl.flat(a), b.clone())
        } else {
            let w = fl.name(b);
            Atom::Eq(fl.flat(a), w)
        };
        Ok(fl.wrap(Literal { atom, positive: l.positive }))
    })?;
    bound.extend(fl.vars);
    Ok(Formula::exists_many(&bound, out))
}

/// An equivalent `p`-free prenex existential formula over `B + B1`. Every
/// `p`-application is named by a fresh variable and defined through the
/// predecessor graph. Formulas without `p` are returned unchanged.
pub fn eliminate_p(phi: &Formula) -> Result<Formula, NormalizeError> {
    check_fragment(phi)?;
    if !phi.contains_symbol(PRED) {
        return Ok(phi.clone());
    }
    let (mut bound, matrix, mut fl) = start(phi, "v")?;
    let out = rewrite_literals(&matrix, &mut |l| {
        if !l.atom.terms().iter().any(|t| t.contains_symbol(PRED)) {
            return Ok(Formula::literal(l));
        }
        let renamed = l.map_terms(|t| fl.name_pred(t));
        Ok(fl.wrap(renamed))
    })?;
    bound.extend(fl.vars);
    Ok(Formula::exists_many(&bound, out))
}
