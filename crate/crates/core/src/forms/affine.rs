use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::Form;
use crate::arith::Rat;
use crate::error::{Error, Result};

/// A polynomial in two affine variables, obtained from a form by setting one
/// coordinate to 1. Keys are (exponent of first variable, exponent of second).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly2 {
    pub(crate) vars: [char; 2],
    pub(crate) terms: BTreeMap<(u32, u32), Rat>,
}

fn remaining_axes(axis: usize) -> [usize; 2] {
    match axis {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

const NAMES: [char; 3] = ['x', 'y', 'z'];

impl Poly2 {
    /// Polynomial in x, y.
    pub fn new<I: IntoIterator<Item = ((u32, u32), Rat)>>(terms: I) -> Poly2 {
        let mut out = Poly2 { vars: ['x', 'y'], terms: BTreeMap::new() };
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            let slot = out.terms.entry(e).or_insert_with(Rat::zero);
            *slot += c;
            if slot.is_zero() {
                out.terms.remove(&e);
            }
        }
        out
    }

    pub(crate) fn from_form(f: &Form, axis: usize) -> Poly2 {
        let [a, b] = remaining_axes(axis);
        let mut terms = BTreeMap::new();
        for (e, c) in f.terms() {
            terms.insert((e[a], e[b]), c.clone());
        }
        Poly2 { vars: [NAMES[a], NAMES[b]], terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b).cmp(&(a.0 + a.1, a)));
        for (n, k) in keys.iter().enumerate() {
            let c = &self.terms[k];
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts = Vec::new();
            let c = c.abs();
            if (k.0 == 0 && k.1 == 0) || !c.is_one() {
                parts.push(c.to_string());
            }
            for (v, e) in [(self.vars[0], k.0), (self.vars[1], k.1)] {
                match e {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Homogenizes g(x, y) to a form of the given degree in X, Y, Z, with Z the
/// new coordinate.
pub fn homogenize(g: &Poly2, degree: u32) -> Result<Form> {
    homogenize_along(g, 2, degree)
}

/// Homogenizes with coordinate `axis` as the new variable; the two variables
/// of `g` become the remaining coordinates in order.
pub fn homogenize_along(g: &Poly2, axis: usize, degree: u32) -> Result<Form> {
    let actual = g.total_degree();
    if degree < actual {
        return Err(Error::DegreeTooSmall { requested: degree, actual });
    }
    let [a, b] = remaining_axes(axis);
    let terms = g.terms.iter().map(|(&(i, j), c)| {
        let mut e = [0u32; 3];
        e[a] = i;
        e[b] = j;
        e[axis] = degree - i - j;
        (e, c.clone())
    });
    Form::from_terms(degree, terms)
}
