//! Polynomial expression parser.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | 't' | '(' expr ')'
//! ```
//!
//! Variables are `x0 .. x{n-1}`; for `n <= 4` the aliases `x, y, z, w` name
//! `x0 .. x3`. `t` is the transcendental of function-field domains. Division
//! is only by nonzero constants that divide every coefficient exactly.

use num_bigint::BigInt;

use super::multipoly::{MultiPoly, PolyRing};
use super::ring::{IntegralDomain, Ring};
use crate::error::{Error, Result};

const MAX_EXPONENT: u64 = 100_000;

pub fn parse_poly<R: IntegralDomain>(ring: &PolyRing<R>, text: &str) -> Result<MultiPoly<R::Elem>> {
    let mut p = Parser { ring, src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(Error::Syntax { pos: 0, msg: "empty expression".into() });
    }
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a, R: Ring> {
    ring: &'a PolyRing<R>,
    src: &'a [u8],
    pos: usize,
}

impl<R: IntegralDomain> Parser<'_, R> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly<R::Elem>> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { self.ring.add(&acc, &rhs) } else { self.ring.sub(&acc, &rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly<R::Elem>> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' { self.ring.mul(&acc, &rhs) } else { self.divide(&acc, &rhs, at)? };
        }
        Ok(acc)
    }

    fn divide(&self, a: &MultiPoly<R::Elem>, b: &MultiPoly<R::Elem>, at: usize) -> Result<MultiPoly<R::Elem>> {
        if b.is_zero() {
            return Err(Error::Syntax { pos: at, msg: "division by zero".into() });
        }
        if !b.is_constant() {
            return Err(Error::Syntax { pos: at, msg: "division by a non-constant".into() });
        }
        let (_, c) = b.leading().expect("nonzero");
        let base = self.ring.base();
        let mut terms = Vec::with_capacity(a.num_terms());
        for (m, x) in a.terms() {
            match base.exact_div(x, c) {
                Some(q) => terms.push((m.clone(), q)),
                None => {
                    return Err(Error::CoefficientNotInDomain(format!(
                        "{} / {}",
                        base.fmt_elem(x),
                        base.fmt_elem(c)
                    )))
                }
            }
        }
        Ok(self.ring.from_terms(terms))
    }

    fn unary(&mut self) -> Result<MultiPoly<R::Elem>> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let v = self.unary()?;
                Ok(self.ring.neg(&v))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly<R::Elem>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.err("expected exponent"));
            }
            let e: u64 = digits
                .parse()
                .ok()
                .filter(|e| *e <= MAX_EXPONENT)
                .ok_or(Error::Syntax { pos: start, msg: "exponent too large".into() })?;
            return Ok(self.ring.pow(&base, e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<MultiPoly<R::Elem>> {
        let start = match self.peek() {
            None => return Err(self.err("unexpected end of input")),
            Some(_) => self.pos,
        };
        let c = self.src[start];
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
            return Ok(e);
        }
        if c.is_ascii_digit() {
            let n: BigInt = self.digits().parse().expect("ascii digits");
            return Ok(self.ring.from_bigint(&n));
        }
        if c.is_ascii_alphabetic() {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                self.pos += 1;
            }
            let ident = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            return self.ident(ident, start);
        }
        Err(self.err("unexpected character"))
    }

    fn ident(&self, ident: &str, pos: usize) -> Result<MultiPoly<R::Elem>> {
        let nvars = self.ring.nvars();
        let index = match ident {
            "t" => {
                return self.ring.generator_t().ok_or_else(|| {
                    Error::CoefficientNotInDomain("t is only available over Fq[t] and Fq(t)".into())
                })
            }
            "x" | "y" | "z" | "w" if nvars <= 4 => "xyzw".find(ident).expect("alias"),
            _ => match ident.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
                Some(i) if ident[1..].chars().all(|c| c.is_ascii_digit()) => i,
                _ => return Err(Error::Syntax { pos, msg: format!("unknown identifier {ident:?}") }),
            },
        };
        if index >= nvars {
            return Err(Error::VariableOutOfRange { index, nvars, pos });
        }
        Ok(self.ring.var(index))
    }
}
