//! Greatest common divisors of forms via a primitive remainder sequence in
//! Q[x][y] after dehomogenizing at Z = 1.

use num_traits::{One, Zero};

use super::affine::{homogenize, Poly2};
use super::univariate::UPoly;
use super::modp::{certify_coprime, certify_squarefree};
use super::Form;
use crate::arith::Rat;
use crate::error::Result;

type BPoly = Vec<UPoly>;

fn to_bpoly(p: &Poly2) -> BPoly {
    let deg_y = p.terms.keys().map(|k| k.1).max().unwrap_or(0) as usize;
    let mut coeffs: Vec<Vec<Rat>> = vec![Vec::new(); deg_y + 1];
    for (&(i, j), c) in &p.terms {
        let slot = &mut coeffs[j as usize];
        if slot.len() <= i as usize {
            slot.resize(i as usize + 1, Rat::zero());
        }
        slot[i as usize] = c.clone();
    }
    let mut b: BPoly = coeffs.into_iter().map(UPoly::new).collect();
    trim(&mut b);
    b
}

fn from_bpoly(b: &BPoly) -> Poly2 {
    Poly2::new(b.iter().enumerate().flat_map(|(j, u)| {
        u.0.iter()
            .enumerate()
            .map(move |(i, c)| ((i as u32, j as u32), c.clone()))
    }))
}

fn trim(b: &mut BPoly) {
    while b.last().is_some_and(UPoly::is_zero) {
        b.pop();
    }
}

fn content(b: &BPoly) -> UPoly {
    let mut g = UPoly::zero();
    for c in b {
        g = g.gcd(c);
        if g.degree() == 0 && !g.is_zero() {
            break;
        }
    }
    g
}

// Primitive part, scaled so the leading coefficient of the leading
// coefficient is 1.
fn primitive(b: &BPoly) -> BPoly {
    let c = content(b);
    let mut out: BPoly = b.iter().map(|u| u.divrem(&c).0).collect();
    let lead = out.last().map(UPoly::lc).unwrap_or_else(Rat::one);
    if !lead.is_one() {
        let inv = lead.recip();
        out = out.iter().map(|u| u.scale(&inv)).collect();
    }
    out
}

fn prem(a: &BPoly, b: &BPoly) -> BPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: BPoly = r.iter().map(|c| c.mul(lb)).collect();
        for (j, c) in b.iter().enumerate() {
            next[j + shift] = next[j + shift].sub(&c.mul(&lr));
        }
        trim(&mut next);
        r = next;
    }
    r
}

fn bgcd(a: &BPoly, b: &BPoly) -> BPoly {
    if a.is_empty() {
        return primitive(b);
    }
    if b.is_empty() {
        return primitive(a);
    }
    let c = content(a).gcd(&content(b));
    let mut p = primitive(a);
    let mut q = primitive(b);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_empty() {
        let r = prem(&p, &q);
        p = q;
        q = if r.is_empty() { r } else { primitive(&r) };
    }
    if p.len() == 1 {
        return vec![c];
    }
    p.iter().map(|u| u.mul(&c)).collect()
}

/// Greatest common divisor of two forms, as a primitive integer form. The
/// gcd of a form with the zero form is the form itself (normalized).
pub fn gcd(f: &Form, g: &Form) -> Form {
    if f.is_zero() {
        return g.primitive_integer();
    }
    if g.is_zero() {
        return f.primitive_integer();
    }
    let fz = f.var_order(super::Z);
    let gz = g.var_order(super::Z);
    let f1 = f.div_monomial([0, 0, fz]);
    let g1 = g.div_monomial([0, 0, gz]);
    let zpow = Form::monomial(Rat::one(), [0, 0, fz.min(gz)]);
    if certify_coprime(&f1, &g1) {
        return zpow;
    }
    let h = from_bpoly(&bgcd(&to_bpoly(&f1.dehomogenize(2)), &to_bpoly(&g1.dehomogenize(2))));
    let hf = homogenize(&h, h.total_degree()).expect("degree is the total degree");
    (&hf * &zpow).primitive_integer()
}

/// Product of the distinct irreducible factors of f over Q, as a primitive
/// integer form. Constant input gives the constant 1.
pub fn squarefree_part(f: &Form) -> Form {
    if f.degree() == 0 || f.is_zero() {
        return Form::one();
    }
    if certify_squarefree(f) {
        return f.primitive_integer();
    }
    let [fx, fy, fz] = f.gradient();
    let mut g = gcd(f, &fx);
    for d in [fy, fz] {
        if g.degree() == 0 {
            break;
        }
        g = gcd(&g, &d);
    }
    f.exact_divide(&g)
        .expect("gcd divides f")
        .primitive_integer()
}

/// Square-free decomposition f = c · ∏ s_k^k with the s_k square-free and
/// pairwise coprime; returns the nonconstant (s_k, k) in increasing k.
pub fn squarefree_decomposition(f: &Form) -> Result<Vec<(Form, u32)>> {
    let mut rads = Vec::new();
    let mut rest = f.clone();
    while rest.degree() > 0 {
        let r = squarefree_part(&rest);
        rest = rest.exact_divide(&r)?;
        rads.push(r);
    }
    let mut out = Vec::new();
    for k in 0..rads.len() {
        let s = match rads.get(k + 1) {
            Some(next) => rads[k].exact_divide(next)?,
            None => rads[k].clone(),
        };
        if s.degree() > 0 {
            out.push((s.primitive_integer(), k as u32 + 1));
        }
    }
    Ok(out)
}
