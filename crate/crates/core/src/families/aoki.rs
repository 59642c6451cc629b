use num_integer::Integer;
use num_traits::{One, Zero};

use super::{check_degree, violation, FamilyInstance, FamilySpec};
use crate::arith::Rat;
use crate::error::Result;
use crate::forms::univariate::UPoly;
use crate::forms::{FactoredDivisor, Form};
use crate::pencils::{Param, Pencil, SpecialMember};
use crate::point::ProjPoint;

pub(super) fn check_i(a: u32, b: u32) -> Result<()> {
    if a < 2 || b < 2 {
        return violation("need a, b > 1");
    }
    if a.gcd(&b) != 1 {
        return violation("a and b must be coprime");
    }
    check_degree((a as u64).checked_add(b as u64)).map(|_| ())
}

fn trimmed(v: &[Rat]) -> UPoly {
    UPoly::new(v.to_vec())
}

pub(super) fn check_ii(a: u32, b: u32, l: u32, p: &[Rat]) -> Result<()> {
    if a < 1 || b < 2 || l < 1 {
        return violation("need a > 0, b > 1, l > 0");
    }
    if a.gcd(&b) != 1 {
        return violation("a and b must be coprime");
    }
    let p = trimmed(p);
    if p.is_zero() || p.0[0].is_zero() {
        return violation("p(0) must be nonzero");
    }
    if p.degree() >= l as usize {
        return violation("deg p must be below l");
    }
    let n = (l as u64 + 1).checked_mul(b as u64).and_then(|v| v.checked_add(a as u64));
    check_degree(n).map(|_| ())
}

/// Returns (deg a_0, deg a_1).
pub(super) fn check_iii(a0: &[Rat], a1: &[Rat]) -> Result<(u32, u32)> {
    let (p0, p1) = (trimmed(a0), trimmed(a1));
    if p0.is_zero() || p1.is_zero() {
        return violation("a_0 and a_1 must be nonzero");
    }
    if p1.degree() >= p0.degree() {
        return violation("need deg a_1 < deg a_0");
    }
    check_degree(Some(p0.degree() as u64 + 1))?;
    if p0.gcd(&p1).degree() > 0 {
        return violation("a_0 and a_1 share a factor");
    }
    if p0.squarefree_part().degree() < 2 {
        return violation("a_0 needs at least two distinct roots");
    }
    Ok((p0.degree() as u32, p1.degree() as u32))
}

pub(super) fn check_iv(a: u32, b: u32) -> Result<()> {
    check_i(a, b)
}

fn mono(e: [u32; 3]) -> Form {
    Form::monomial(Rat::one(), e)
}

/// Σ c_i X^i Z^{d-i} for the coefficient list c (constant first).
fn homogenize_xz(c: &[Rat], d: u32) -> Result<Form> {
    Form::from_terms(
        d,
        c.iter()
            .enumerate()
            .map(|(i, v)| ([i as u32, 0, d - i as u32], v.clone())),
    )
}

fn member(s: i64, t: i64, parts: Vec<(Form, u32, bool)>) -> Result<SpecialMember> {
    Ok(SpecialMember { st: Param::new(s, t)?, factors: FactoredDivisor::new(parts)? })
}

/// The line Z together with a curve from the line-plus-curve classification,
/// and the pencil spanned by the two parts of its affine equation.
pub fn aoki_curve(spec: &FamilySpec) -> Result<FamilyInstance> {
    spec.validate()?;
    let z = Form::z();
    let (curve, f, g, members) = match spec {
        FamilySpec::AokiI { a, b } => {
            let (a, b) = (*a, *b);
            let f = mono([a, b, 0]);
            let g = mono([0, 0, a + b]);
            let curve = &f + &g;
            let members = vec![
                member(1, 0, vec![(Form::x(), a, true), (Form::y(), b, true)])?,
                member(0, 1, vec![(z.clone(), a + b, true)])?,
                member(1, 1, vec![(curve.clone(), 1, true)])?,
            ];
            (curve, f, g, members)
        }
        FamilySpec::AokiII { a, b, l, p } => {
            let (a, b, l) = (*a, *b, *l);
            let p = trimmed(p);
            let h = &mono([l, 1, 0]) + &homogenize_xz(&p.0, l + 1)?;
            let n = a + b * (l + 1);
            let f = &mono([a, 0, 0]) * &h.pow(b);
            let g = mono([0, 0, n]);
            let curve = &f + &g;
            let members = vec![
                member(1, 0, vec![(Form::x(), a, true), (h, b, true)])?,
                member(0, 1, vec![(z.clone(), n, true)])?,
                member(1, 1, vec![(curve.clone(), 1, true)])?,
            ];
            (curve, f, g, members)
        }
        FamilySpec::AokiIII { a0, a1 } => {
            let (d0, d1) = check_iii(a0, a1)?;
            let (p0, p1) = (trimmed(a0), trimmed(a1));
            let t0 = &homogenize_xz(&p0.0, d0)? * &Form::y();
            let t1 = &homogenize_xz(&p1.0, d1)? * &mono([0, 0, 1 + d0 - d1]);
            let curve = &t0 + &t1;
            let g = mono([0, 0, d0 + 1]);
            let members = vec![
                member(1, 0, vec![(curve.clone(), 1, true)])?,
                member(0, 1, vec![(z.clone(), d0 + 1, true)])?,
            ];
            (curve.clone(), curve, g, members)
        }
        FamilySpec::AokiIV { a, b } => {
            let (a, b) = (*a, *b);
            let (f, g, m1, m2) = if a < b {
                (
                    mono([a, 0, b - a]),
                    mono([0, b, 0]),
                    vec![(Form::x(), a, true), (z.clone(), b - a, true)],
                    vec![(Form::y(), b, true)],
                )
            } else {
                (
                    mono([a, 0, 0]),
                    mono([0, b, a - b]),
                    vec![(Form::x(), a, true)],
                    vec![(Form::y(), b, true), (z.clone(), a - b, true)],
                )
            };
            let curve = &f - &g;
            let members = vec![
                member(1, 0, m1)?,
                member(0, 1, m2)?,
                member(1, -1, vec![(curve.clone(), 1, true)])?,
            ];
            (curve, f, g, members)
        }
        _ => return violation("not a line-plus-curve family"),
    };
    let witnesses = [ProjPoint::new(1, 0, 0), ProjPoint::new(0, 1, 0), ProjPoint::new(0, 0, 1)]
        .into_iter()
        .filter(|p| f.evaluate(p).is_zero() && g.evaluate(p).is_zero())
        .collect();
    let pencil = Pencil::new(f, g, members, witnesses)?;
    let curve = curve.primitive_integer();
    Ok(FamilyInstance {
        divisor: FactoredDivisor::new([(z, 1, true), (curve.clone(), 1, true)])?,
        curve,
        pencil,
    })
}
