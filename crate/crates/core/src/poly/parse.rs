//! Text form of polynomials.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! poly   := [sign] term (sign term)*
//! term   := factor ('*' factor)*
//! factor := INT ['/' INT] | NAME ['^' INT]
//! NAME   := [a-zA-Z][a-zA-Z0-9_]*
//! ```
//!
//! Exponents must be positive. The canonical output lists terms in
//! descending order with the coefficient first and its sign folded into the
//! separator, e.g. `-x2*x3 + x1*x4` (degrevlex) or `-2*x1^2 + 1/2*z1`.

use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::traits::One;

use super::field::Field;
use super::monomial::{Exponent, Monomial};
use super::polynomial::Poly;
use super::ring::Ring;
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'/' => out.push((start, Tok::Slash)),
            b'^' => out.push((start, Tok::Caret)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].to_string())));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Name(text[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character {:?}", text[start..].chars().next().unwrap()),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a Arc<Ring<F>>,
}

impl<'a, F: Field> Parser<'a, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn syntax<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.offset(),
            msg: msg.to_string(),
        })
    }

    fn poly(&mut self) -> Result<Vec<(F::Elem, Monomial)>, ParseError> {
        let field = self.ring.field();
        let mut terms = Vec::new();
        let mut negate = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (c, m) = self.term()?;
            terms.push((if negate { field.neg(&c) } else { c }, m));
            match self.peek() {
                None => return Ok(terms),
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                Some(_) => return self.syntax("expected `+`, `-`, `*` or end of input"),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(F::Elem, Monomial), ParseError> {
        let field = self.ring.field();
        let n = self.ring.nvars();
        let mut coeff = field.one();
        let mut exps = vec![0 as Exponent; n];
        loop {
            match self.toks.get(self.pos).cloned() {
                Some((p, Tok::Int(num))) => {
                    self.pos += 1;
                    let mut text = num.clone();
                    let numer: BigInt = num.parse().expect("digits");
                    let mut denom = BigInt::one();
                    if self.peek() == Some(&Tok::Slash) {
                        self.pos += 1;
                        match self.toks.get(self.pos).cloned() {
                            Some((_, Tok::Int(d))) => {
                                self.pos += 1;
                                text = format!("{num}/{d}");
                                denom = d.parse().expect("digits");
                            }
                            _ => return self.syntax("expected denominator after `/`"),
                        }
                    }
                    let c = field
                        .from_ratio(&numer, &denom)
                        .ok_or(ParseError::Unrepresentable { text, pos: p })?;
                    coeff = field.mul(&coeff, &c);
                }
                Some((p, Tok::Name(name))) => {
                    self.pos += 1;
                    let var = self
                        .ring
                        .vars()
                        .position(&name)
                        .ok_or(ParseError::UnknownVariable { name, pos: p })?;
                    let mut e: Exponent = 1;
                    if self.peek() == Some(&Tok::Caret) {
                        self.pos += 1;
                        match self.toks.get(self.pos).cloned() {
                            Some((q, Tok::Int(d))) => {
                                self.pos += 1;
                                e = d
                                    .parse::<Exponent>()
                                    .ok()
                                    .filter(|&e| e > 0)
                                    .ok_or(ParseError::ExponentRange { pos: q })?;
                            }
                            _ => return self.syntax("expected positive integer exponent after `^`"),
                        }
                    }
                    exps[var] = exps[var].checked_add(e).ok_or(ParseError::ExponentRange { pos: p })?;
                }
                _ => return self.syntax("expected a coefficient or variable"),
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((coeff, Monomial::from_exponents(&exps)))
    }
}

/// Parses `text` into the canonical polynomial of `ring`.
pub fn parse_polynomial<F: Field>(text: &str, ring: &Arc<Ring<F>>) -> Result<Poly<F>, ParseError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(ParseError::Syntax {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        ring,
    };
    let terms = p.poly()?;
    Ok(Poly::from_terms(ring, terms))
}

/// Parses one polynomial per non-empty line; `#` starts a comment.
pub fn parse_polynomial_list<F: Field>(text: &str, ring: &Arc<Ring<F>>) -> Result<Vec<Poly<F>>, (usize, ParseError)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| parse_polynomial(l, ring).map_err(|e| (i + 1, e)))
        .collect()
}

fn write_monomial(out: &mut String, m: &Monomial, names: &[String]) {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(&names[i]);
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let field = self.field();
        let names = self.ring().vars().names();
        let mut out = String::new();
        for (k, t) in self.terms().iter().enumerate() {
            let neg = field.is_negative(&t.coeff);
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mut abs = String::new();
            field.write_abs(&t.coeff, &mut abs);
            if t.mono.is_one() {
                out.push_str(&abs);
            } else {
                if abs != "1" {
                    out.push_str(&abs);
                    out.push('*');
                }
                write_monomial(&mut out, &t.mono, names);
            }
        }
        f.write_str(&out)
    }
}
