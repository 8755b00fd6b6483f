//! Concrete grammar for terms and formulas.
//!
//! ```text
//! formula := imp ( "<->" formula )?
//! imp     := or ( "->" imp )?
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "~" unary | "forall" VAR "." formula | "exists" VAR "." formula | atom
//! atom    := "T" "(" term ")" | term "=" term | "(" formula ")"
//! term    := mul ( "+" mul )*
//! mul     := base ( "*" base )*
//! base    := "0" | "#" DIGITS | DIGITS | VAR | "S" "(" term ")"
//!          | "iter" "(" term "," term ")" | "sub" "(" term "," term "," term ")"
//!          | "quote" "(" formula ")" | "(" term ")"
//! ```
//!
//! `quote(phi)` is the numeral of the code of `phi`.

use num_bigint::BigUint;

use crate::arithmetization::{name_of, numeral};
use crate::syntax::{Expr, FnSymbol, Formula, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at offset {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExprKind {
    Term,
    Formula,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(BigUint),
    Hash,
    LParen,
    RParen,
    Comma,
    Dot,
    Eq,
    Plus,
    Star,
    Tilde,
    Arrow,
    Iff,
    Amp,
    Bar,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let err = |msg: &str| ParseError { position: start, message: msg.to_string() };
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'.' => Tok::Dot,
            b'=' => Tok::Eq,
            b'+' => Tok::Plus,
            b'*' => Tok::Star,
            b'~' => Tok::Tilde,
            b'&' => Tok::Amp,
            b'|' => Tok::Bar,
            b'#' => Tok::Hash,
            b'-' => {
                if bytes.get(i + 1) != Some(&b'>') {
                    return Err(err("expected '->'"));
                }
                i += 1;
                Tok::Arrow
            }
            b'<' => {
                if bytes.get(i + 1) != Some(&b'-') || bytes.get(i + 2) != Some(&b'>') {
                    return Err(err("expected '<->'"));
                }
                i += 2;
                Tok::Iff
            }
            b'0'..=b'9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let n = BigUint::parse_bytes(&bytes[i..j], 10).ok_or_else(|| err("bad number"))?;
                out.push((start, Tok::Num(n)));
                i = j;
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                out.push((start, Tok::Ident(text[i..j].to_string())));
                i = j;
                continue;
            }
            _ => return Err(err(&format!("unexpected character {:?}", c as char))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError { position: self.offset(), message: message.into() })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> PResult<()> {
        if self.eat(t) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(format!("expected {what}, found {found:?}")),
                None => self.error(format!("expected {what}, found end of input")),
            }
        }
    }

    fn peek_ident(&self) -> Option<&str> {
        match self.peek() {
            Some(Tok::Ident(s)) => Some(s),
            _ => None,
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        let lhs = self.imp()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.formula()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> PResult<Formula> {
        let lhs = self.or()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> PResult<Formula> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Bar) {
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> PResult<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn variable(&mut self) -> PResult<Var> {
        match self.peek_ident().map(Var::from_name) {
            Some(Some(v)) => {
                self.pos += 1;
                Ok(v)
            }
            _ => self.error("expected a variable"),
        }
    }

    fn unary(&mut self) -> PResult<Formula> {
        if self.eat(&Tok::Tilde) {
            return Ok(Formula::not(self.unary()?));
        }
        match self.peek_ident() {
            Some("forall") | Some("exists") => {
                let is_forall = self.peek_ident() == Some("forall");
                self.pos += 1;
                let v = self.variable()?;
                self.expect(&Tok::Dot, "'.'")?;
                let body = self.formula()?;
                Ok(if is_forall { Formula::forall(v, body) } else { Formula::exists(v, body) })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> PResult<Formula> {
        if self.peek_ident() == Some("T") {
            self.pos += 1;
            let args = self.args()?;
            if args.len() != 1 {
                return self.error(format!("T expects 1 argument, found {}", args.len()));
            }
            return Ok(Formula::tr(args.into_iter().next().expect("one argument")));
        }
        if self.peek() == Some(&Tok::LParen) {
            let save = self.pos;
            if let Ok(lhs) = self.term() {
                if self.eat(&Tok::Eq) {
                    let rhs = self.term()?;
                    return Ok(Formula::eq(lhs, rhs));
                }
            }
            self.pos = save;
            self.pos += 1;
            let inner = self.formula()?;
            self.expect(&Tok::RParen, "')'")?;
            return Ok(inner);
        }
        let lhs = self.term()?;
        self.expect(&Tok::Eq, "'='")?;
        let rhs = self.term()?;
        Ok(Formula::eq(lhs, rhs))
    }

    fn args(&mut self) -> PResult<Vec<Term>> {
        self.expect(&Tok::LParen, "'('")?;
        let mut args = vec![self.term()?];
        while self.eat(&Tok::Comma) {
            args.push(self.term()?);
        }
        self.expect(&Tok::RParen, "')'")?;
        Ok(args)
    }

    fn term(&mut self) -> PResult<Term> {
        let mut lhs = self.mul()?;
        while self.eat(&Tok::Plus) {
            lhs = Term::add(lhs, self.mul()?);
        }
        Ok(lhs)
    }

    fn mul(&mut self) -> PResult<Term> {
        let mut lhs = self.base()?;
        while self.eat(&Tok::Star) {
            lhs = Term::mul(lhs, self.base()?);
        }
        Ok(lhs)
    }

    fn base(&mut self) -> PResult<Term> {
        let start = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(numeral(&n))
            }
            Some(Tok::Hash) => {
                self.pos += 1;
                match self.peek().cloned() {
                    Some(Tok::Num(n)) => {
                        self.pos += 1;
                        Ok(numeral(&n))
                    }
                    _ => self.error("expected digits after '#'"),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(t)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "S" {
                    let args = self.args()?;
                    if args.len() != 1 {
                        return Err(ParseError {
                            position: start,
                            message: format!("S expects 1 argument, found {}", args.len()),
                        });
                    }
                    return Ok(Term::succ(args.into_iter().next().expect("one argument")));
                }
                if name == "quote" {
                    self.expect(&Tok::LParen, "'('")?;
                    let phi = self.formula()?;
                    self.expect(&Tok::RParen, "')'")?;
                    return Ok(name_of(&Expr::Formula(phi)));
                }
                if let Some(sym) = FnSymbol::from_name(&name) {
                    let args = self.args()?;
                    return Term::app(sym, args)
                        .map_err(|e| ParseError { position: start, message: e.to_string() });
                }
                match Var::from_name(&name) {
                    Some(v) => Ok(Term::Var(v)),
                    None => {
                        Err(ParseError { position: start, message: format!("unknown identifier {name:?}") })
                    }
                }
            }
            Some(t) => self.error(format!("expected a term, found {t:?}")),
            None => self.error("expected a term, found end of input"),
        }
    }

    fn finish(&self) -> PResult<()> {
        if self.pos < self.toks.len() {
            return self.error("trailing input");
        }
        Ok(())
    }
}

fn parser(text: &str) -> PResult<Parser> {
    Ok(Parser { toks: lex(text)?, pos: 0, end: text.len() })
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = parser(text)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = parser(text)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse(text: &str, kind: ExprKind) -> Result<Expr, ParseError> {
    match kind {
        ExprKind::Term => parse_term(text).map(Expr::Term),
        ExprKind::Formula => parse_formula(text).map(Expr::Formula),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_equals_zero() {
        assert_eq!(parse_formula("0 = 0").unwrap(), Formula::eq(Term::Zero, Term::Zero));
    }

    #[test]
    fn omega_truth_shape() {
        let f = parse_formula("forall y. T(iter(y, x))").unwrap();
        let expected = Formula::forall(Var::Y, Formula::tr(Term::iter(Term::Var(Var::Y), Term::Var(Var::X))));
        assert_eq!(f, expected);
    }

    #[test]
    fn truncated_input_reports_position() {
        let err = parse_formula("T(0,").unwrap_err();
        assert_eq!(err.position, 4);
    }

    #[test]
    fn arity_mismatch_rejected() {
        let err = parse_term("iter(0, 0, 0)").unwrap_err();
        assert_eq!(err.position, 0);
        assert!(err.message.contains("iter expects 2"));
        assert!(parse_term("sub(0, 0)").is_err());
        assert!(parse_formula("T(0, 0)").is_err());
    }

    #[test]
    fn abbreviations_expand() {
        let a = parse_formula("0 = 0 & T(0)").unwrap();
        assert_eq!(a, Formula::and(Formula::eq(Term::Zero, Term::Zero), Formula::tr(Term::Zero)));
        let e = parse_formula("exists x. x = 0").unwrap();
        assert_eq!(e, Formula::exists(Var::X, Formula::eq(Term::Var(Var::X), Term::Zero)));
        let i = parse_formula("T(0) <-> T(0)").unwrap();
        assert!(i.as_iff().is_some());
    }

    #[test]
    fn parenthesized_term_versus_formula() {
        let f = parse_formula("(x + y) = z").unwrap();
        assert!(matches!(f, Formula::Eq(Term::Add(..), _)));
        let g = parse_formula("(0 = 0) -> ~(x = y)").unwrap();
        assert!(matches!(g, Formula::Imp(..)));
    }

    #[test]
    fn numerals_and_quotes() {
        assert_eq!(parse_term("#5").unwrap(), numeral(&BigUint::from(5u8)));
        assert_eq!(parse_term("5").unwrap(), numeral(&BigUint::from(5u8)));
        let q = parse_term("quote(0 = 0)").unwrap();
        assert_eq!(q, name_of(&Expr::Formula(Formula::eq(Term::Zero, Term::Zero))));
    }
}
