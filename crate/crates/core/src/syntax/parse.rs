//! Recursive-descent parser for terms, formulas, clauses and clause sets.

use super::clause::{Atom, Clause, ClauseSet, Literal};
use super::formula::Formula;
use super::json::ClauseSetRepr;
use super::language::Language;
use super::term::{numeral, Term, ETA, PLUS};
use super::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    Numeral(u64),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Dot,
    Plus,
    Eq,
    Neq,
    Not,
    And,
    Or,
    Implies,
    Iff,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Zero => "`0`".into(),
        Tok::Numeral(k) => format!("`#{k}`"),
        other => format!("{other:?}"),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let two = text.get(i..i + 2).unwrap_or("");
        let three = text.get(i..i + 3).unwrap_or("");
        let tok = if three == "<->" {
            i += 3;
            Tok::Iff
        } else if two == "->" {
            i += 2;
            Tok::Implies
        } else if two == "!=" {
            i += 2;
            Tok::Neq
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            Tok::Ident(text[start..i].to_string())
        } else if c == '#' {
            i += 1;
            let ds = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let k = text[ds..i]
                .parse::<u64>()
                .map_err(|_| SyntaxError::Parse { pos: start, msg: "expected digits after `#`".into() })?;
            Tok::Numeral(k)
        } else if c.is_ascii_digit() {
            i += 1;
            if c != '0' || (i < bytes.len() && bytes[i].is_ascii_digit()) {
                return Err(SyntaxError::Parse { pos: start, msg: "only `0` is a digit literal; write `#k`".into() });
            }
            Tok::Zero
        } else {
            i += 1;
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBrack,
                ']' => Tok::RBrack,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                '+' => Tok::Plus,
                '=' => Tok::Eq,
                '~' | '!' => Tok::Not,
                '&' => Tok::And,
                '|' => Tok::Or,
                _ => return Err(SyntaxError::Parse { pos: start, msg: format!("unexpected character `{c}`") }),
            }
        };
        out.push((tok, start));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    i: usize,
    end: usize,
    lang: &'a Language,
}

impl<'a> Parser<'a> {
    fn new(text: &str, lang: &'a Language) -> Result<Parser<'a>, SyntaxError> {
        Ok(Parser { toks: lex(text)?, i: 0, end: text.len(), lang })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.i + k).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |(_, p)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, t: Tok) -> Result<(), SyntaxError> {
        match self.peek() {
            Some(x) if *x == t => {
                self.i += 1;
                Ok(())
            }
            Some(x) => {
                let d = describe(x);
                self.err(format!("expected {t:?}, found {d}"))
            }
            None => self.err(format!("expected {t:?}, found end of input")),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn finish(&self) -> Result<(), SyntaxError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => {
                let d = describe(t);
                self.err(format!("unexpected {d}"))
            }
        }
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        let mut t = self.primary()?;
        while self.peek() == Some(&Tok::Plus) {
            let pos = self.pos();
            self.i += 1;
            if self.lang.function_arity(PLUS) != Some(2) {
                return Err(SyntaxError::Undeclared { symbol: PLUS.into(), pos: Some(pos) });
            }
            let rhs = self.primary()?;
            t = Term::plus(t, rhs);
        }
        Ok(t)
    }

    fn primary(&mut self) -> Result<Term, SyntaxError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Zero) => {
                self.i += 1;
                Ok(Term::zero())
            }
            Some(Tok::Numeral(k)) => {
                self.i += 1;
                Ok(numeral(k))
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Ident(name)) => {
                if name.starts_with(|c: char| c.is_ascii_uppercase()) {
                    return self.err(format!("predicate `{name}` used as a term"));
                }
                self.i += 1;
                if self.peek() == Some(&Tok::LParen) {
                    let arity = self
                        .lang
                        .function_arity(&name)
                        .ok_or(SyntaxError::Undeclared { symbol: name.clone(), pos: Some(pos) })?;
                    self.i += 1;
                    let args = self.args()?;
                    if args.len() != arity {
                        return Err(SyntaxError::Arity {
                            symbol: name,
                            expected: arity,
                            found: args.len(),
                            pos: Some(pos),
                        });
                    }
                    return Ok(Term::App(name, args));
                }
                if name == ETA {
                    return if self.lang.eta {
                        Ok(Term::eta())
                    } else {
                        Err(SyntaxError::Undeclared { symbol: name, pos: Some(pos) })
                    };
                }
                match self.lang.function_arity(&name) {
                    Some(0) => Ok(Term::constant(name)),
                    Some(a) => Err(SyntaxError::Arity { symbol: name, expected: a, found: 0, pos: Some(pos) }),
                    None if name == "forall" || name == "exists" => self.err("quantifier in term position"),
                    None => Ok(Term::Var(name)),
                }
            }
            Some(t) => {
                let d = describe(&t);
                self.err(format!("expected a term, found {d}"))
            }
            None => self.err("expected a term, found end of input"),
        }
    }

    fn args(&mut self) -> Result<Vec<Term>, SyntaxError> {
        let mut args = Vec::new();
        if self.eat(&Tok::RParen) {
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            if self.eat(&Tok::Comma) {
                continue;
            }
            self.expect(Tok::RParen)?;
            return Ok(args);
        }
    }

    fn atom(&mut self) -> Result<Literal, SyntaxError> {
        if let Some(Tok::Ident(name)) = self.peek().cloned() {
            if name.starts_with(|c: char| c.is_ascii_uppercase()) {
                let pos = self.pos();
                self.i += 1;
                let arity = self
                    .lang
                    .predicate_arity(&name)
                    .ok_or(SyntaxError::Undeclared { symbol: name.clone(), pos: Some(pos) })?;
                let args = if self.eat(&Tok::LParen) { self.args()? } else { Vec::new() };
                if args.len() != arity {
                    return Err(SyntaxError::Arity {
                        symbol: name,
                        expected: arity,
                        found: args.len(),
                        pos: Some(pos),
                    });
                }
                return Ok(Literal::pred(name, args, true));
            }
        }
        let lhs = self.term()?;
        let positive = match self.peek() {
            Some(Tok::Eq) => true,
            Some(Tok::Neq) => false,
            _ => return self.err("expected `=` or `!=`"),
        };
        self.i += 1;
        let rhs = self.term()?;
        Ok(Literal { atom: Atom::Eq(lhs, rhs), positive })
    }

    fn literal(&mut self) -> Result<Literal, SyntaxError> {
        if self.eat(&Tok::Not) {
            return Ok(self.literal()?.negated());
        }
        Ok(self.atom()?.oriented())
    }

    fn clause(&mut self) -> Result<Clause, SyntaxError> {
        self.expect(Tok::LBrack)?;
        let mut lits = Vec::new();
        if !self.eat(&Tok::RBrack) {
            loop {
                lits.push(self.literal()?);
                if self.eat(&Tok::Comma) {
                    continue;
                }
                self.expect(Tok::RBrack)?;
                break;
            }
        }
        Ok(Clause::new(lits))
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.implication()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.implication()?;
            let mut f = Formula::iff(lhs, rhs);
            while self.eat(&Tok::Iff) {
                let rhs = self.implication()?;
                f = Formula::iff(f, rhs);
            }
            return Ok(f);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut parts = vec![self.conjunction()?];
        while self.eat(&Tok::Or) {
            parts.push(self.conjunction()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::Or(parts) })
    }

    fn conjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut parts = vec![self.unary()?];
        while self.eat(&Tok::And) {
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::And(parts) })
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.i += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Ident(q)) if (q == "forall" || q == "exists") => {
                if !matches!(self.peek_at(1), Some(Tok::Ident(_))) {
                    self.i += 1;
                    return self.err("expected a variable after quantifier");
                }
                self.i += 1;
                let pos = self.pos();
                let Some(Tok::Ident(x)) = self.peek().cloned() else { unreachable!() };
                if x == ETA || self.lang.function_arity(&x).is_some() {
                    return Err(SyntaxError::Parse { pos, msg: format!("`{x}` cannot be bound") });
                }
                self.i += 1;
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(if q == "forall" { Formula::forall(x, body) } else { Formula::exists(x, body) })
            }
            Some(Tok::LParen) => {
                let save = self.i;
                if let Ok(l) = self.atom() {
                    return Ok(Formula::literal(&l.oriented()));
                }
                self.i = save + 1;
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            _ => Ok(Formula::literal(&self.atom()?.oriented())),
        }
    }
}

pub fn parse_term(text: &str, lang: &Language) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(text, lang)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_formula(text: &str, lang: &Language) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(text, lang)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_literal(text: &str, lang: &Language) -> Result<Literal, SyntaxError> {
    let mut p = Parser::new(text, lang)?;
    let l = p.literal()?;
    p.finish()?;
    Ok(l)
}

pub fn parse_clause(text: &str, lang: &Language) -> Result<Clause, SyntaxError> {
    let mut p = Parser::new(text, lang)?;
    let c = p.clause()?;
    p.finish()?;
    Ok(c)
}

/// One clause per line (blank lines and `%` comments skipped), or a JSON array
/// whose entries are clause strings or tagged clause trees.
pub fn parse_clause_set(text: &str, lang: &Language) -> Result<ClauseSet, SyntaxError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        if let Ok(serde_json::Value::Array(items)) = serde_json::from_str::<serde_json::Value>(trimmed) {
            let mut clauses = Vec::new();
            for item in items {
                match item {
                    serde_json::Value::String(s) => clauses.push(parse_clause(&s, lang)?),
                    other => {
                        let repr: ClauseSetRepr = serde_json::from_value(serde_json::Value::Array(vec![other]))
                            .map_err(|e| SyntaxError::Parse { pos: 0, msg: e.to_string() })?;
                        let set = ClauseSet::try_from(repr)?;
                        clauses.extend(set.clauses().iter().cloned());
                    }
                }
            }
            let set = ClauseSet::new(clauses);
            let (f, p) = set.signature();
            lang.check_symbols(&f, &p)?;
            return Ok(set);
        }
    }
    let mut clauses = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let body = line.trim();
        if !body.is_empty() && !body.starts_with('%') {
            let c = parse_clause(body, lang).map_err(|e| e.shifted(offset + line.find(body).unwrap_or(0)))?;
            clauses.push(c);
        }
        offset += line.len();
    }
    Ok(ClauseSet::new(clauses))
}

/// Result of [`parse`].
#[derive(Clone, Debug, PartialEq)]
pub enum Parsed {
    Term(Term),
    Formula(Formula),
    ClauseSet(ClauseSet),
}

/// Parses a clause set if the text starts with `[`, otherwise a formula, falling back to a term.
pub fn parse(text: &str, lang: &Language) -> Result<Parsed, SyntaxError> {
    if text.trim_start().starts_with('[') {
        return parse_clause_set(text, lang).map(Parsed::ClauseSet);
    }
    match parse_formula(text, lang) {
        Ok(f) => Ok(Parsed::Formula(f)),
        Err(fe) => parse_term(text, lang).map(Parsed::Term).map_err(|_| fe),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn la() -> Language {
        Language::default()
    }

    #[test]
    fn terms() {
        let t = parse_term("s(s(0)) + x", &la()).unwrap();
        assert_eq!(t, Term::plus(numeral(2), Term::var("x")));
        assert_eq!(parse_term("#3", &la()).unwrap(), numeral(3));
        assert_eq!(parse_term("(x + y) + z", &la()).unwrap().to_string(), "(x + y) + z");
        assert_eq!(parse_term("x + y + z", &la()).unwrap().to_string(), "(x + y) + z");
    }

    #[test]
    fn clauses() {
        let c = parse_clause("[eta != x + x]", &la()).unwrap();
        assert_eq!(c.literals().len(), 1);
        assert_eq!(c.to_string(), "[x + x != eta]");
        let c = parse_clause("[0 = x]", &la()).unwrap();
        assert_eq!(c.to_string(), "[x = 0]");
        assert_eq!(parse_clause("[]", &la()).unwrap(), Clause::empty());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_term("s(0, 0)", &la()) {
            Err(SyntaxError::Arity { symbol, expected: 1, found: 2, pos: Some(0) }) => assert_eq!(symbol, "s"),
            other => panic!("{other:?}"),
        }
        match parse_term("g(x)", &la()) {
            Err(SyntaxError::Undeclared { pos: Some(0), .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_formula("x = ", &la()) {
            Err(SyntaxError::Parse { pos: 4, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_term("eta", &Language::linear_arithmetic()).is_err());
    }

    #[test]
    fn formulas_roundtrip() {
        for s in [
            "forall x. exists y. x = y + y | x = s(y + y)",
            "~(x = 0 & y = 0) -> (x = y <-> y = x)",
            "(forall x. x = x) & (exists y. y != 0)",
            "x = 0 -> (y = 0 -> z = 0)",
            "(x = 0 -> y = 0) -> z = 0",
            "~~x = 0",
            "(x + y) + z = x + (y + z)",
        ] {
            let f = parse_formula(s, &la()).unwrap();
            let printed = f.to_string();
            assert_eq!(parse_formula(&printed, &la()).unwrap(), f, "{s} printed as {printed}");
        }
    }

    #[test]
    fn predicates_need_declaration() {
        let lang = Language::induction_language();
        let c = parse_clause("[~P(x), P(s(x))]", &lang).unwrap();
        assert_eq!(c.len(), 2);
        assert!(parse_clause("[Q(x)]", &lang).is_err());
        assert!(parse_term("x + 0", &lang).is_err());
    }

    #[test]
    fn clause_set_formats() {
        let text = "[x + 0 = x]\n% comment\n\n[eta != x + x]\n";
        let a = parse_clause_set(text, &la()).unwrap();
        assert_eq!(a.len(), 2);
        let b = parse_clause_set(r#"["[x + 0 = x]", "[eta != x + x]"]"#, &la()).unwrap();
        assert_eq!(a, b);
        match parse_clause_set("[x = 0]\n[x = ]", &la()) {
            Err(SyntaxError::Parse { pos, .. }) => assert_eq!(pos, 13),
            other => panic!("{other:?}"),
        }
    }
}
