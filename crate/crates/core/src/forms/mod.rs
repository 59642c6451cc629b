//! Homogeneous polynomials in X, Y, Z with exact rational coefficients.

mod affine;
mod divisor;
pub mod expr;
mod gcd;
mod modp;
mod serde_impl;
pub(crate) mod univariate;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::point::ProjPoint;

pub use affine::{homogenize, homogenize_along, Poly2};
pub use divisor::{ExtMult, Factor, FactoredDivisor};
pub use gcd::{gcd, squarefree_decomposition, squarefree_part};

/// Largest degree accepted from external input (JSON, expressions).
pub const MAX_INPUT_DEGREE: u32 = 512;

/// Exponent triple (i, j, k) of X^i Y^j Z^k.
///
/// The ordering is the canonical *position* order: graded lexicographic with
/// X > Y > Z, largest monomial first, so a `BTreeMap` iterates terms in the
/// serialized order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        (0..3).all(|i| self.0[i] <= other.0[i])
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A homogeneous form of fixed degree. The zero form keeps its degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Form {
    degree: u32,
    terms: BTreeMap<Monomial, Rat>,
}

pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;

impl Form {
    pub fn zero(degree: u32) -> Form {
        Form { degree, terms: BTreeMap::new() }
    }

    pub fn constant(c: Rat) -> Form {
        Form::monomial(c, [0, 0, 0])
    }

    pub fn one() -> Form {
        Form::constant(Rat::one())
    }

    pub fn monomial(c: Rat, exps: [u32; 3]) -> Form {
        let m = Monomial(exps);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Form { degree: m.degree(), terms }
    }

    /// The coordinate X, Y or Z.
    pub fn var(i: usize) -> Form {
        let mut e = [0; 3];
        e[i] = 1;
        Form::monomial(Rat::one(), e)
    }

    pub fn x() -> Form {
        Form::var(X)
    }

    pub fn y() -> Form {
        Form::var(Y)
    }

    pub fn z() -> Form {
        Form::var(Z)
    }

    /// Builds a form from terms, merging repeated monomials and dropping zeros.
    pub fn from_terms<I>(degree: u32, terms: I) -> Result<Form>
    where
        I: IntoIterator<Item = ([u32; 3], Rat)>,
    {
        let mut out = Form::zero(degree);
        for (e, c) in terms {
            let m = Monomial(e);
            if m.degree() != degree {
                return Err(Error::DegreeMismatch(vec![degree, m.degree()]));
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.degree == 0
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order (largest monomial first).
    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &Rat)> {
        self.terms.iter().map(|(m, c)| (&m.0, c))
    }

    pub fn coeff(&self, exps: [u32; 3]) -> Rat {
        self.terms.get(&Monomial(exps)).cloned().unwrap_or_else(Rat::zero)
    }

    fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next()
    }

    pub fn scale(&self, c: &Rat) -> Form {
        if c.is_zero() {
            return Form::zero(self.degree);
        }
        Form {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Form {
        let mut result = Form::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Smallest exponent of coordinate `i` over all terms (0 for the zero form).
    pub fn var_order(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).min().unwrap_or(0)
    }

    /// Divides by the monomial X^e0 Y^e1 Z^e2, which must divide every term.
    pub fn div_monomial(&self, exps: [u32; 3]) -> Form {
        let shift: u32 = exps.iter().sum();
        let mut out = Form::zero(self.degree - shift);
        for (m, c) in &self.terms {
            let e = [m.0[0] - exps[0], m.0[1] - exps[1], m.0[2] - exps[2]];
            out.terms.insert(Monomial(e), c.clone());
        }
        out
    }

    /// Exact value at rational coordinates.
    pub fn eval_rat(&self, p: &[Rat; 3]) -> Rat {
        let mut pows: [Vec<Rat>; 3] = Default::default();
        for (i, pw) in pows.iter_mut().enumerate() {
            pw.push(Rat::one());
            for _ in 0..self.degree {
                let next = pw.last().unwrap() * &p[i];
                pw.push(next);
            }
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let e = m.0;
            acc += c * &pows[0][e[0] as usize] * &pows[1][e[1] as usize] * &pows[2][e[2] as usize];
        }
        acc
    }

    /// Exact value at the canonical integer coordinates of `p`.
    pub fn evaluate(&self, p: &ProjPoint) -> Rat {
        if let Some(v) = self.evaluate_integral(p) {
            return Rat::from_integer(v);
        }
        self.eval_rat(&p.as_rationals())
    }

    /// Integer value at `p` when every coefficient is an integer.
    pub fn evaluate_integral(&self, p: &ProjPoint) -> Option<BigInt> {
        if !self.terms.values().all(|c| c.is_integer()) {
            return None;
        }
        let coords = p.coords();
        let mut pows: [Vec<BigInt>; 3] = Default::default();
        for (i, pw) in pows.iter_mut().enumerate() {
            let top = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0);
            pw.push(BigInt::one());
            for _ in 0..top {
                let next = pw.last().unwrap() * &coords[i];
                pw.push(next);
            }
        }
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let e = m.0;
            let mut t = c.numer().clone();
            for i in 0..3 {
                if e[i] > 0 {
                    t *= &pows[i][e[i] as usize];
                }
            }
            acc += t;
        }
        Some(acc)
    }

    /// f(φ0, φ1, φ2) for three forms of common degree d; the result has
    /// degree deg(f)·d.
    pub fn compose(&self, phi: &[Form; 3]) -> Result<Form> {
        let d = phi[0].degree;
        if phi.iter().any(|p| p.degree != d) {
            return Err(Error::DegreeMismatch(phi.iter().map(|p| p.degree).collect()));
        }
        let mut pows: [Vec<Form>; 3] = Default::default();
        for (i, pw) in pows.iter_mut().enumerate() {
            let top = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0);
            pw.push(Form::one());
            for _ in 0..top {
                let next = pw.last().unwrap() * &phi[i];
                pw.push(next);
            }
        }
        let mut out = Form::zero(self.degree * d);
        for (m, c) in &self.terms {
            let e = m.0;
            let t = &(&pows[0][e[0] as usize] * &pows[1][e[1] as usize]) * &pows[2][e[2] as usize];
            for (tm, tc) in t.terms {
                out.add_term(tm, tc * c);
            }
        }
        Ok(out)
    }

    /// Partial derivative with respect to coordinate `i`.
    pub fn derivative(&self, i: usize) -> Form {
        let mut out = Form::zero(self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            if m.0[i] == 0 {
                continue;
            }
            let mut e = m.0;
            e[i] -= 1;
            out.add_term(Monomial(e), c * Rat::from_integer(BigInt::from(m.0[i])));
        }
        out
    }

    pub fn gradient(&self) -> [Form; 3] {
        [self.derivative(X), self.derivative(Y), self.derivative(Z)]
    }

    /// Exact quotient f / g, failing unless g divides f.
    pub fn exact_divide(&self, g: &Form) -> Result<Form> {
        let (glm, glc) = g.leading().ok_or(Error::ZeroDivisor)?;
        if g.degree > self.degree {
            return if self.is_zero() { Ok(Form::zero(0)) } else { Err(Error::NotDivisible) };
        }
        let mut rem = self.clone();
        let mut quot = Form::zero(self.degree - g.degree);
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            if !glm.divides(&rm) {
                return Err(Error::NotDivisible);
            }
            let qe = Monomial([rm.0[0] - glm.0[0], rm.0[1] - glm.0[1], rm.0[2] - glm.0[2]]);
            let qc = rc / glc;
            for (gm, gc) in &g.terms {
                let e = Monomial([gm.0[0] + qe.0[0], gm.0[1] + qe.0[1], gm.0[2] + qe.0[2]]);
                rem.add_term(e, -(gc * &qc));
            }
            quot.add_term(qe, qc);
        }
        Ok(quot)
    }

    /// Largest k with g^k | f, and the cofactor f / g^k.
    pub fn extract_factor_multiplicity(&self, g: &Form) -> Result<(u32, Form)> {
        if self.is_zero() {
            return Err(Error::ZeroArgument);
        }
        if g.degree == 0 {
            return Err(Error::ZeroArgument);
        }
        let mut k = 0;
        let mut rest = self.clone();
        while rest.degree >= g.degree {
            match rest.exact_divide(g) {
                Ok(q) => {
                    rest = q;
                    k += 1;
                }
                Err(Error::NotDivisible) => break,
                Err(e) => return Err(e),
            }
        }
        Ok((k, rest))
    }

    /// Scalar multiple with coprime integer coefficients and a positive
    /// leading coefficient. The zero form is returned unchanged.
    pub fn primitive_integer(&self) -> Form {
        self.primitive_with_scale().1
    }

    /// (c, g) with self = c·g and g the primitive integer form.
    pub fn primitive_with_scale(&self) -> (Rat, Form) {
        let Some((_, lead)) = self.leading() else {
            return (Rat::one(), self.clone());
        };
        let den_lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num_gcd = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&den_lcm / c.denom()))));
        let mut factor = Rat::new(den_lcm, num_gcd);
        if lead.is_negative() {
            factor = -factor;
        }
        let g = self.scale(&factor);
        (factor.recip(), g)
    }

    pub fn is_primitive_integer(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if !self.terms.values().all(|c| c.is_integer()) {
            return false;
        }
        let g = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
        g.is_one()
    }

    /// Largest |coefficient| (meaningful for primitive integer forms).
    pub fn max_abs_coeff(&self) -> Rat {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rat::zero)
    }

    /// True when the two nonzero forms differ by a nonzero scalar.
    pub fn is_proportional(&self, other: &Form) -> bool {
        if self.is_zero() || other.is_zero() || self.degree != other.degree {
            return false;
        }
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let (m0, c0) = self.leading().unwrap();
        let Some(d0) = other.terms.get(m0) else {
            return false;
        };
        let ratio = d0 / c0;
        self.terms
            .iter()
            .all(|(m, c)| other.terms.get(m).is_some_and(|d| *d == c * &ratio))
    }

    pub fn is_linear(&self) -> bool {
        self.degree == 1 && !self.is_zero()
    }

    /// True iff f(P) = 0 and every partial derivative vanishes at P.
    pub fn is_singular_at(&self, p: &ProjPoint) -> Result<bool> {
        if !self.evaluate(p).is_zero() {
            return Err(Error::NotOnCurve);
        }
        Ok(self.gradient().iter().all(|g| g.evaluate(p).is_zero()))
    }

    /// Sets coordinate `axis` to 1.
    pub fn dehomogenize(&self, axis: usize) -> Poly2 {
        Poly2::from_form(self, axis)
    }
}

impl Add for &Form {
    type Output = Form;

    /// Panics when both operands are nonzero and of different degrees.
    fn add(self, rhs: &Form) -> Form {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        assert_eq!(self.degree, rhs.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Form {
    type Output = Form;

    fn sub(self, rhs: &Form) -> Form {
        self + &(-rhs)
    }
}

impl Neg for &Form {
    type Output = Form;

    fn neg(self) -> Form {
        Form {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &Form {
    type Output = Form;

    fn mul(self, rhs: &Form) -> Form {
        let mut out = Form::zero(self.degree + rhs.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let e = Monomial([ma.0[0] + mb.0[0], ma.0[1] + mb.0[1], ma.0[2] + mb.0[2]]);
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Form {
            type Output = Form;
            fn $m(self, rhs: Form) -> Form {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn write_coeff_monomial(f: &mut fmt::Formatter<'_>, c: &Rat, e: &[u32; 3]) -> fmt::Result {
    let names = ['X', 'Y', 'Z'];
    let mut parts = Vec::new();
    let is_const = e.iter().all(|&k| k == 0);
    if is_const || !c.is_one() {
        parts.push(c.to_string());
    }
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(names[i].to_string()),
            _ => parts.push(format!("{}^{}", names[i], k)),
        }
    }
    write!(f, "{}", parts.join("*"))
}

/// Canonical text form, e.g. `X^2*Y^3 + Z^5` or `-3/2*X*Y`. Parsing it with
/// [`expr::parse_form`] gives back the same form.
impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_coeff_monomial(f, &c.abs(), &m.0)?;
        }
        Ok(())
    }
}
