//! Recursive-descent reader for the plain-text display of symmetries.
//!
//! ```text
//! expr  := ['+' | '-'] term (('+' | '-') term)*
//! term  := power (('*' | '/') power)*
//! power := atom ['^' integer]
//! atom  := integer | 'u_x' | 'u_y' | 'i' | 'arctan' '(' expr ')'
//!        | 'log' '(' expr ')' | '(' expr ')'
//! ```
//!
//! `arctan` only accepts `u_x` and `log` only accepts `1+u_x^2`; division
//! is exact division by a unit.

use std::fmt;

use minsurf::exprcore::{ClosedForm, GaussianRational as G, QPoly};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Int(s[start..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError { pos: i, message: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), message: message.into() })
    }

    fn peek_sym(&self, c: char) -> bool {
        matches!(self.toks.get(self.at), Some((_, Tok::Sym(s))) if *s == c)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        let hit = self.peek_sym(c);
        if hit {
            self.at += 1;
        }
        hit
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.err(format!("expected {c:?}"))
        }
    }

    fn expr(&mut self) -> Result<QPoly, ParseError> {
        let negate = if self.eat_sym('-') {
            true
        } else {
            self.eat_sym('+');
            false
        };
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            if self.eat_sym('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat_sym('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QPoly, ParseError> {
        let mut acc = self.power()?;
        loop {
            if self.eat_sym('*') {
                acc = acc.mul(&self.power()?);
            } else if self.peek_sym('/') {
                let pos = self.pos();
                self.at += 1;
                let d = self.power()?;
                acc = match acc.try_div(&d) {
                    Some(q) => q,
                    None => return Err(ParseError { pos, message: "division by a non-unit".into() }),
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<QPoly, ParseError> {
        let base = self.atom()?;
        if !self.eat_sym('^') {
            return Ok(base);
        }
        let e = match self.toks.get(self.at) {
            Some((_, Tok::Int(n))) => u32::try_from(n.clone()).or_else(|_| self.err("exponent too large"))?,
            _ => return self.err("expected an integer exponent"),
        };
        self.at += 1;
        Ok((0..e).fold(QPoly::one(), |acc, _| acc.mul(&base)))
    }

    fn atom(&mut self) -> Result<QPoly, ParseError> {
        let Some((_, tok)) = self.toks.get(self.at).cloned() else {
            return self.err("unexpected end of input");
        };
        self.at += 1;
        match tok {
            Tok::Int(n) => Ok(QPoly::from_rational(BigRational::from_integer(n))),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "u_x" => Ok(QPoly::p()),
                "u_y" => Ok(QPoly::q()),
                "i" => Ok(QPoly::constant(G::i())),
                "arctan" | "log" => {
                    let pos = self.pos();
                    self.expect_sym('(')?;
                    let arg = self.expr()?;
                    self.expect_sym(')')?;
                    let p = QPoly::p();
                    if name == "arctan" && arg == p {
                        Ok(QPoly::from_closed_form(ClosedForm::arctan()))
                    } else if name == "log" && arg == QPoly::one().add(&p.mul(&p)) {
                        Ok(QPoly::from_closed_form(ClosedForm::log_one_plus_p2()))
                    } else {
                        Err(ParseError { pos, message: format!("unsupported argument of {name}") })
                    }
                }
                _ => {
                    self.at -= 1;
                    self.err(format!("unknown name {name:?}"))
                }
            },
            Tok::Sym(c) => {
                self.at -= 1;
                self.err(format!("unexpected {c:?}"))
            }
        }
    }
}

/// Parses a polynomial in `u_y` with closed-form coefficients in `u_x`.
pub fn parse_symmetry(s: &str) -> Result<QPoly, ParseError> {
    let mut p = Parser { toks: lex(s)?, at: 0, end: s.len() };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}
