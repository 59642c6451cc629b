//! Text syntax for forms: `Y^2*Z - X^3`, `X*(X*Y + Z^2)^2 + Z^5`, `3/4*X*Y`.
//!
//! Integers, `+ - * ^`, parentheses, the variables X, Y, Z (either case) and
//! division by integer constants are accepted. Juxtaposition multiplies, so
//! `2XY` equals `2*X*Y`. The result must be homogeneous.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Form, MAX_INPUT_DEGREE};
use crate::arith::Rat;
use crate::error::{Error, Result};

const MAX_DEPTH: usize = 64;
const MAX_DIGITS: usize = 10_000;
// Bound on term-pair products per multiplication.
const MAX_WORK: usize = 1 << 22;

type Sparse = BTreeMap<[u32; 3], Rat>;

fn err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

fn sparse_add(a: &mut Sparse, b: Sparse, sign: bool) {
    for (e, c) in b {
        let c = if sign { c } else { -c };
        let slot = a.entry(e).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            a.remove(&e);
        }
    }
}

fn degree_of(a: &Sparse) -> u32 {
    a.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
}

fn sparse_mul(a: &Sparse, b: &Sparse) -> Result<Sparse> {
    if a.len().saturating_mul(b.len()) > MAX_WORK {
        return err("expression too large");
    }
    if !a.is_empty() && !b.is_empty() && degree_of(a) + degree_of(b) > MAX_INPUT_DEGREE {
        return err(format!("degree exceeds {MAX_INPUT_DEGREE}"));
    }
    let mut out = Sparse::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
            let slot = out.entry(e).or_insert_with(Rat::zero);
            *slot += ca * cb;
            if slot.is_zero() {
                out.remove(&e);
            }
        }
    }
    Ok(out)
}

fn sparse_pow(a: &Sparse, e: u32) -> Result<Sparse> {
    let mut result = constant(Rat::one());
    let mut base = a.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = sparse_mul(&result, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = sparse_mul(&base, &base)?;
        }
    }
    Ok(result)
}

fn constant(c: Rat) -> Sparse {
    let mut s = Sparse::new();
    if !c.is_zero() {
        s.insert([0, 0, 0], c);
    }
    s
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = &self.src[start..self.pos];
        if digits.is_empty() {
            return err(format!("expected a number at offset {start}"));
        }
        if digits.len() > MAX_DIGITS {
            return err("number literal too long");
        }
        let s = std::str::from_utf8(digits).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn expr(&mut self) -> Result<Sparse> {
        let mut acc = Sparse::new();
        let mut sign = true;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = false;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            sparse_add(&mut acc, t, sign);
            match self.peek() {
                Some(b'+') => sign = true,
                Some(b'-') => sign = false,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = sparse_mul(&acc, &f)?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.number()?;
                    if d.is_zero() {
                        return err("division by zero");
                    }
                    let inv = Rat::new(BigInt::one(), d);
                    acc = acc.into_iter().map(|(e, c)| (e, c * &inv)).collect();
                }
                Some(c) if c.is_ascii_digit() || c == b'(' || b"xyzXYZ".contains(&c) => {
                    let f = self.factor()?;
                    acc = sparse_mul(&acc, &f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Sparse> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.number()?;
            let e: u32 = match u32::try_from(&e) {
                Ok(v) if v <= MAX_INPUT_DEGREE => v,
                _ => return err(format!("exponent exceeds {MAX_INPUT_DEGREE}")),
            };
            return sparse_pow(&base, e);
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(constant(Rat::from_integer(self.number()?))),
            Some(c) if b"xyzXYZ".contains(&c) => {
                self.pos += 1;
                let mut e = [0u32; 3];
                e[(c.to_ascii_uppercase() - b'X') as usize] = 1;
                Ok(BTreeMap::from([(e, Rat::one())]))
            }
            Some(b'-') => {
                self.pos += 1;
                let inner = self.factor()?;
                Ok(inner.into_iter().map(|(e, c)| (e, -c)).collect())
            }
            Some(b'(') => {
                self.pos += 1;
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    return err("parentheses nested too deeply");
                }
                let inner = self.expr()?;
                self.depth -= 1;
                if self.peek() != Some(b')') {
                    return err(format!("expected ')' at offset {}", self.pos));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) => err(format!("unexpected {:?} at offset {}", c as char, self.pos)),
            None => err("unexpected end of expression"),
        }
    }
}

/// Parses a homogeneous polynomial expression.
pub fn parse_form(s: &str) -> Result<Form> {
    let mut p = Parser { src: s.as_bytes(), pos: 0, depth: 0 };
    let poly = p.expr()?;
    if p.peek().is_some() {
        return err(format!("trailing input at offset {}", p.pos));
    }
    let degree = poly.keys().next().map(|e| e.iter().sum()).unwrap_or(0);
    if poly.keys().any(|e| e.iter().sum::<u32>() != degree) {
        return err("expression is not homogeneous");
    }
    Form::from_terms(degree, poly)
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Form> {
        parse_form(s)
    }
}
