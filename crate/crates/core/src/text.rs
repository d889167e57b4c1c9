//! Text formats: formulas and sequents, and the s-expression derivation format.
//!
//! ```text
//! named   := NAME ":" ["~"] IDENT
//! formula := named | "(" formula "|" formula ")" | "(" formula "&" formula ")"
//! sequent := "|-" formula {"," formula}
//! deriv   := "(ax {" formula "," formula "}" sequent ")" | "(cut" formula deriv deriv ")"
//!          | "(or" formula deriv ")" | "(and" formula deriv deriv ")" | "(sup" deriv deriv ")"
//! ```
//!
//! The parser also accepts a single unparenthesised binary connective, so that
//! `x:a | y:b` reads as `(x:a | y:b)`. Repeated `~` cancel in pairs.

use std::fmt::{self, Write};

use thiserror::Error;

use crate::derivation::Derivation;
use crate::name::{Name, Symbol};
use crate::syntax::{Atom, Formula, Sequent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            self.error(format!("expected `{token}`"))
        }
    }

    fn ident(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_lowercase() || (i > 0 && c.is_ascii_digit())))
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return self.error("expected an identifier");
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn keyword(&mut self) -> Result<&'a str, ParseError> {
        self.ident()
    }

    fn named(&mut self) -> Result<Formula, ParseError> {
        let start = self.pos;
        let name = self.ident()?;
        let name = match Name::parse(name) {
            Some(n) => n,
            None => return Err(ParseError { offset: start, message: "name too long".into() }),
        };
        self.expect(":")?;
        let mut negated = false;
        while self.eat("~") {
            negated = !negated;
        }
        let base = self.ident()?;
        let base = match Symbol::parse(base) {
            Some(s) => s,
            None => return self.error("atom symbol too long"),
        };
        Ok(Formula::Atom(name, Atom { base, negated }))
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        if self.eat("(") {
            let f = self.formula()?;
            self.expect(")")?;
            Ok(f)
        } else {
            self.named()
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let left = self.primary()?;
        if self.eat("|") {
            let right = self.primary()?;
            Ok(Formula::or(left, right))
        } else if self.eat("&") {
            let right = self.primary()?;
            Ok(Formula::and(left, right))
        } else {
            Ok(left)
        }
    }

    fn sequent(&mut self) -> Result<Sequent, ParseError> {
        self.expect("|-")?;
        let mut formulas = Vec::new();
        if matches!(self.peek(), Some(c) if c == '(' || c.is_ascii_lowercase()) {
            formulas.push(self.formula()?);
            while self.eat(",") {
                formulas.push(self.formula()?);
            }
        }
        Ok(Sequent::new(formulas))
    }

    fn derivation(&mut self) -> Result<Derivation, ParseError> {
        self.expect("(")?;
        let start = self.pos;
        let d = match self.keyword()? {
            "ax" => {
                self.expect("{")?;
                let a = self.formula()?;
                self.expect(",")?;
                let b = self.formula()?;
                self.expect("}")?;
                let conclusion = self.sequent()?;
                Derivation::ax(a, b, conclusion)
            }
            "cut" => {
                let f = self.formula()?;
                let l = self.derivation()?;
                let r = self.derivation()?;
                Derivation::cut(f, l, r)
            }
            "or" => {
                let f = self.formula()?;
                let p = self.derivation()?;
                Derivation::or(f, p)
            }
            "and" => {
                let f = self.formula()?;
                let l = self.derivation()?;
                let r = self.derivation()?;
                Derivation::and(f, l, r)
            }
            "sup" => {
                let l = self.derivation()?;
                let r = self.derivation()?;
                Derivation::sup(l, r)
            }
            other => {
                return Err(ParseError { offset: start, message: format!("unknown rule `{other}`") })
            }
        };
        self.expect(")")?;
        Ok(d)
    }

    fn finish<T>(&mut self, value: T) -> Result<T, ParseError> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(value)
        } else {
            self.error("trailing input")
        }
    }
}

pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(src);
    let f = p.formula()?;
    p.finish(f)
}

pub fn parse_sequent(src: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(src);
    let s = p.sequent()?;
    p.finish(s)
}

/// Parses a comma-separated list of formulas, without the turnstile.
pub fn parse_formula_list(src: &str) -> Result<Vec<Formula>, ParseError> {
    let mut p = Parser::new(src);
    let mut out = Vec::new();
    if p.peek().is_some() {
        out.push(p.formula()?);
        while p.eat(",") {
            out.push(p.formula()?);
        }
    }
    p.finish(out)
}

pub fn parse_derivation(src: &str) -> Result<Derivation, ParseError> {
    let mut p = Parser::new(src);
    let d = p.derivation()?;
    p.finish(d)
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_char('~')?;
        }
        write!(f, "{}", self.base)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(x, a) => write!(f, "{x}:{a}"),
            Formula::Or(l, r) => write!(f, "({l} | {r})"),
            Formula::And(l, r) => write!(f, "({l} & {r})"),
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|-")?;
        for (i, g) in self.formulas().iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

fn write_derivation(d: &Derivation, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    out.push_str(&pad);
    match d {
        Derivation::Ax { pair, conclusion } => {
            let _ = write!(out, "(ax {{{} , {}}} {})", pair.0, pair.1, conclusion);
        }
        Derivation::Cut { formula, left, right } => {
            let _ = writeln!(out, "(cut {formula}");
            write_derivation(left, depth + 1, out);
            out.push('\n');
            write_derivation(right, depth + 1, out);
            out.push(')');
        }
        Derivation::Sup(left, right) => {
            out.push_str("(sup\n");
            write_derivation(left, depth + 1, out);
            out.push('\n');
            write_derivation(right, depth + 1, out);
            out.push(')');
        }
        Derivation::Or { principal, premiss } => {
            let _ = writeln!(out, "(or {principal}");
            write_derivation(premiss, depth + 1, out);
            out.push(')');
        }
        Derivation::And { principal, left, right } => {
            let _ = writeln!(out, "(and {principal}");
            write_derivation(left, depth + 1, out);
            out.push('\n');
            write_derivation(right, depth + 1, out);
            out.push(')');
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        write_derivation(self, 0, &mut out);
        f.write_str(&out)
    }
}
