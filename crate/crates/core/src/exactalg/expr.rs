//! Polynomial expression grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | base ('^' uint)?
//! base   := literal | ident | '(' expr ')'
//! literal:= uint ('/' uint)?
//! ```
//!
//! The Unicode minus sign is accepted wherever `-` is.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::poly::{Poly, Universe};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 256;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Lit(BigRational),
    Var { name: String, pos: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((start, Tok::Num(s.parse().expect("digits"))));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(Error::Parse { pos: start, msg: format!("unexpected character `{other}`") })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.to_string() })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.at += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        if let Some(Tok::Minus) = self.peek() {
            self.at += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.at += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    let e: u32 = match u32::try_from(&n) {
                        Ok(e) if e <= MAX_EXPONENT => e,
                        _ => return self.err("exponent too large"),
                    };
                    self.at += 1;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return self.err("expected non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                if let Some(Tok::Slash) = self.peek() {
                    self.at += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            self.at += 1;
                            Ok(Expr::Lit(BigRational::new(n, d)))
                        }
                        Some(Tok::Num(_)) => self.err("zero denominator"),
                        _ => self.err("expected denominator"),
                    }
                } else {
                    Ok(Expr::Lit(BigRational::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                Ok(Expr::Var { name, pos })
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.at += 1;
                        Ok(e)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(_) => self.err("expected literal, identifier or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an expression into its syntax tree.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, end: src.chars().count() };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

impl Expr {
    /// Evaluates the tree as a polynomial; identifiers must belong to `universe`.
    pub fn to_poly(&self, universe: &Arc<Universe>) -> Result<Poly> {
        Ok(match self {
            Expr::Lit(r) => Poly::constant(universe, Scalar::Rat(r.clone())),
            Expr::Var { name, pos } => Poly::var(universe, name).map_err(|_| Error::Parse {
                pos: *pos,
                msg: format!("identifier `{name}` is not in the declared universe"),
            })?,
            Expr::Neg(a) => -&a.to_poly(universe)?,
            Expr::Add(a, b) => &a.to_poly(universe)? + &b.to_poly(universe)?,
            Expr::Sub(a, b) => &a.to_poly(universe)? - &b.to_poly(universe)?,
            Expr::Mul(a, b) => &a.to_poly(universe)? * &b.to_poly(universe)?,
            Expr::Pow(a, e) => a.to_poly(universe)?.pow(*e),
        })
    }
}

/// Parses `src` as a polynomial over `universe`.
pub fn parse_poly(src: &str, universe: &Arc<Universe>) -> Result<Poly> {
    parse_expr(src)?.to_poly(universe)
}
