//! Text grammar for polynomials.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' integer)?
//! atom    := integer ('/' integer)? | identifier | '(' expr ')'
//! ```
//!
//! Juxtaposition is rejected: `x y` and `2x` are errors.

use std::sync::Arc;

use num_bigint::BigInt;

use super::multipoly::{MultiPoly, PolyRing};
use super::ring::Ring;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i].is_ascii_alphabetic() || bytes[i] == b'_') {
                    return Err(Error::Parse {
                        pos: i,
                        msg: "implicit multiplication is not allowed".into(),
                    });
                }
                out.push((start, Tok::Int(src[start..i].parse().expect("digits"))));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            other => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, F> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a Arc<PolyRing>,
    _f: std::marker::PhantomData<F>,
}

impl<'a, F: Scalar> Parser<'a, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<MultiPoly<F>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc.add_assign_ref(&t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc.sub_assign_ref(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly<F>> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let f = self.unary()?;
            acc = acc.times(&f);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly<F>> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(self.unary()?.negate());
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly<F>> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| Error::Parse {
                        pos: self.offset(),
                        msg: "exponent too large".into(),
                    })?;
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected a non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly<F>> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    let Some(Tok::Int(d)) = self.peek().cloned() else {
                        return self.err("expected an integer denominator");
                    };
                    let at = self.offset();
                    self.pos += 1;
                    let c = F::from_fraction(&n, &d).ok_or_else(|| Error::Parse {
                        pos: at,
                        msg: format!("denominator {d} vanishes in {}", F::field_name()),
                    })?;
                    return Ok(MultiPoly::constant(self.ring, c));
                }
                Ok(MultiPoly::constant(self.ring, F::from_bigint(&n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                MultiPoly::var_named(self.ring, &name)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(_) => self.err("expected a number, variable or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `src` as a polynomial in the variables of `ring`.
pub fn parse_poly<F: Scalar>(src: &str, ring: &Arc<PolyRing>) -> Result<MultiPoly<F>> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
        ring,
        _f: std::marker::PhantomData,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        let msg = match p.peek() {
            Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::LParen) => {
                "implicit multiplication is not allowed".to_string()
            }
            Some(t) => format!("unexpected token {t:?}"),
            None => unreachable!(),
        };
        return p.err(msg);
    }
    Ok(out)
}

/// Identifiers occurring in `src`, in order of first appearance.
pub fn identifiers(src: &str) -> Result<Vec<String>> {
    let mut out: Vec<String> = Vec::new();
    for (_, t) in tokenize(src)? {
        if let Tok::Ident(s) = t {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{Fp, Rational};

    fn r() -> Arc<PolyRing> {
        PolyRing::new(["x", "y", "t"])
    }

    #[test]
    fn precedence_and_signs() {
        let a: MultiPoly<Rational> = parse_poly("-x^2 + 3*y - 1/2", &r()).unwrap();
        let b: MultiPoly<Rational> = parse_poly("(0 - (x*x)) + y + y + y - 1/2", &r()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn juxtaposition_is_rejected() {
        for bad in ["x y", "2x", "x(y)", "x*", "x^y", "1/0", "x $ y", "(x"] {
            let e = parse_poly::<Rational>(bad, &r()).unwrap_err();
            assert!(matches!(e, Error::Parse { .. }), "{bad}: {e:?}");
        }
    }

    #[test]
    fn unknown_identifier() {
        let e = parse_poly::<Rational>("x*w", &r()).unwrap_err();
        assert_eq!(e, Error::UnknownVariable("w".into()));
    }

    #[test]
    fn fractions_map_into_prime_fields() {
        let p: MultiPoly<Fp<5>> = parse_poly("1/2*x", &r()).unwrap();
        let q: MultiPoly<Fp<5>> = parse_poly("3*x", &r()).unwrap();
        assert_eq!(p, q);
        assert!(parse_poly::<Fp<5>>("1/5", &r()).is_err());
    }

    #[test]
    fn identifiers_in_order() {
        assert_eq!(identifiers("y*x + y^2 - z").unwrap(), ["y", "x", "z"]);
    }
}
