//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('+' | '-') unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by a nonzero constant. Juxtaposition such as
//! `3x` or `2(x+1)` is rejected. Positions in errors are byte offsets.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring};

const MAX_EXPONENT: u32 = 10_000;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let tok = match c {
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((Tok::Int(s.parse().expect("digits")), pos));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((Tok::Ident(s), pos));
                continue;
            }
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(syntax(pos, format!("unexpected character `{other}`"))),
        };
        chars.next();
        out.push((tok, pos));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    ring: &'a Arc<Ring>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.idx].0
    }

    fn pos(&self) -> usize {
        self.toks[self.idx].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.idx].clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Slash => {
                    let (_, pos) = self.bump();
                    let d = self.unary()?;
                    let nonconstant = d.total_degree().is_some_and(|deg| deg > 0);
                    if nonconstant {
                        return Err(syntax(pos, "division by a non-constant expression"));
                    }
                    let inv = d
                        .constant_term()
                        .inv()
                        .ok_or_else(|| syntax(pos, "division by zero"))?;
                    acc = acc.scale(&inv);
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                    return Err(syntax(
                        self.pos(),
                        "implicit multiplication is not allowed; use `*`",
                    ));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (tok, pos) = self.bump();
        let Tok::Int(e) = tok else {
            return Err(syntax(
                pos,
                format!("expected an integer exponent, found {}", describe(&tok)),
            ));
        };
        let e: u32 = e
            .try_into()
            .ok()
            .filter(|&e: &u32| e <= MAX_EXPONENT)
            .ok_or_else(|| syntax(pos, format!("exponent exceeds {MAX_EXPONENT}")))?;
        if *self.peek() == Tok::Caret {
            return Err(syntax(self.pos(), "chained exponents need parentheses"));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => Ok(Polynomial::constant(
                self.ring,
                self.ring.field().from_bigint(&n),
            )),
            Tok::Ident(name) => match self.ring.var_index(&name) {
                Some(i) => Ok(Polynomial::var(self.ring, i)),
                None => Err(Error::UnknownVariable { name, pos }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let (close, cpos) = self.bump();
                if close != Tok::RParen {
                    return Err(syntax(
                        cpos,
                        format!("expected `)`, found {}", describe(&close)),
                    ));
                }
                Ok(inner)
            }
            other => Err(syntax(
                pos,
                format!("expected an operand, found {}", describe(&other)),
            )),
        }
    }
}

/// Parses `text` as a polynomial in `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, idx: 0, ring };
    if *p.peek() == Tok::End {
        return Err(syntax(p.pos(), "empty expression"));
    }
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        Tok::RParen => Err(syntax(p.pos(), "unmatched `)`")),
        other => Err(syntax(p.pos(), format!("unexpected {}", describe(other)))),
    }
}
