use num_integer::Integer;
use num_traits::{One, Zero};

use super::{check_degree, j_form, strict_transform, transport_factors, violation, y_pow, DeJonquieres, FamilyInstance, FamilySpec};
use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::forms::{FactoredDivisor, Form, Z};
use crate::pencils::{Param, Pencil, SpecialMember};
use crate::point::ProjPoint;

type Parts = Vec<(Form, u32, bool)>;

pub(super) fn check_alphas(alpha0: u32, alpha1: u32) -> Result<()> {
    if !(1 < alpha0 && alpha0 < alpha1) {
        return violation("need 1 < alpha0 < alpha1");
    }
    if alpha0.gcd(&alpha1) != 1 {
        return violation("alpha0 and alpha1 must be coprime");
    }
    check_degree(Some(alpha1 as u64)).map(|_| ())
}

fn check_avec(avec: &[Rat]) -> Result<u32> {
    if avec.len() < 2 {
        return Err(Error::EmptyVector);
    }
    if avec.last().unwrap().is_zero() {
        return violation("last coefficient of the J vector must be nonzero");
    }
    check_degree(Some(avec.len() as u64)).map(|_| (avec.len() - 1) as u32)
}

pub(super) fn check_case2(alpha0: u32, alpha1: u32, avec: &[Rat]) -> Result<u64> {
    check_alphas(alpha0, alpha1)?;
    let n = check_avec(avec)? as u64;
    let d = check_degree((n + 1).checked_mul(alpha0 as u64))?;
    if alpha1 as u64 >= d {
        return violation("this case needs alpha1 < (n+1) alpha0");
    }
    Ok(d)
}

pub(super) fn check_case3(alpha0: u32, alpha1: u32, avec: &[Rat]) -> Result<u64> {
    check_alphas(alpha0, alpha1)?;
    let n = check_avec(avec)? as u64;
    if (n + 1) * alpha0 as u64 >= alpha1 as u64 {
        return violation("this case needs (n+1) alpha0 < alpha1");
    }
    Ok(alpha1 as u64)
}

pub(super) fn check_chain(degree: u64, transforms: &[DeJonquieres]) -> Result<()> {
    let mut d = Some(degree);
    for t in transforms {
        t.validate()?;
        d = d.and_then(|d| d.checked_mul(t.m() as u64 + 1));
        check_degree(d)?;
    }
    Ok(())
}

fn product(parts: &Parts) -> Form {
    parts.iter().fold(Form::one(), |acc, (f, e, _)| &acc * &f.pow(*e))
}

fn coordinate_base_points(f: &Form, g: &Form) -> Vec<ProjPoint> {
    [ProjPoint::new(1, 0, 0), ProjPoint::new(0, 1, 0), ProjPoint::new(0, 0, 1)]
        .into_iter()
        .filter(|p| f.evaluate(p).is_zero() && g.evaluate(p).is_zero())
        .collect()
}

fn member(s: i64, t: i64, parts: Parts) -> Result<SpecialMember> {
    Ok(SpecialMember { st: Param::new(s, t)?, factors: FactoredDivisor::new(parts)? })
}

fn linear(cx: Rat, cy: Rat, cz: Rat) -> Result<Form> {
    Form::from_terms(1, [([1, 0, 0], cx), ([0, 1, 0], cy), ([0, 0, 1], cz)])
}

/// Bicuspidal curve F₁ + F₂ pulled back through the De Jonquières chain,
/// with the pencil ⟨F₁∘τ, F₂∘τ⟩.
pub fn tono_bicuspidal(spec: &FamilySpec) -> Result<FamilyInstance> {
    spec.validate()?;
    let x = Form::x();
    let (mut f1, mut f2, transforms): (Parts, Parts, &Vec<DeJonquieres>) = match spec {
        FamilySpec::TonoBicusp1 { alpha0, alpha1, a, transforms } => (
            vec![(Form::y(), *alpha1, true)],
            vec![
                (x, alpha1 - alpha0, true),
                (linear(Rat::zero(), a.clone(), Rat::one())?, *alpha0, true),
            ],
            transforms,
        ),
        FamilySpec::TonoBicusp2 { alpha0, alpha1, avec, transforms } => {
            let n = avec.len() as u32 - 1;
            (
                vec![(j_form(avec)?, *alpha0, true)],
                vec![(x, (n + 1) * alpha0 - alpha1, true), (Form::y(), *alpha1, true)],
                transforms,
            )
        }
        FamilySpec::TonoBicusp3 { alpha0, alpha1, avec, transforms } => {
            let n = avec.len() as u32 - 1;
            (
                vec![(Form::y(), *alpha1, true)],
                vec![(x, alpha1 - (n + 1) * alpha0, true), (j_form(avec)?, *alpha0, true)],
                transforms,
            )
        }
        _ => return violation("not a bicuspidal family"),
    };
    let mut curve = &product(&f1) + &product(&f2);
    let mut d_parts: Parts = vec![(curve.clone(), 1, true)];
    for tau in transforms.iter().rev() {
        f1 = transport_factors(&f1, tau)?;
        f2 = transport_factors(&f2, tau)?;
        d_parts = transport_factors(&d_parts, tau)?;
        curve = strict_transform(&curve, tau)?;
    }
    let (g1, g2) = (product(&f1), product(&f2));
    let pencil = Pencil::new(
        g1.clone(),
        g2.clone(),
        vec![member(1, 0, f1)?, member(0, 1, f2)?, member(1, 1, d_parts)?],
        coordinate_base_points(&g1, &g2),
    )?;
    let curve = curve.primitive_integer();
    Ok(FamilyInstance {
        divisor: FactoredDivisor::new([(curve.clone(), 1, true)])?,
        curve,
        pencil,
    })
}

pub(super) fn check_unicusp_i(n: u32, s: u32, a: &[Rat]) -> Result<u64> {
    if n < 2 || s < 2 {
        return violation("need n, s >= 2");
    }
    if a.len() != (s - 1) as usize {
        return violation("expected coefficients a_2, ..., a_s");
    }
    if a.last().unwrap().is_zero() {
        return violation("a_s must be nonzero");
    }
    let (n, s) = (n as u64, s as u64);
    let deg_a = (n + 1).checked_mul(s - 1).and_then(|v| v.checked_add(1));
    check_degree(deg_a.and_then(|d| d.checked_mul(n + 1)))
}

pub(super) fn check_unicusp_ii(n: u32) -> Result<u64> {
    if n < 2 {
        return violation("need n >= 2");
    }
    let n = n as u64;
    check_degree((2 * n + 1).checked_mul(4 * n + 1))
}

pub(super) fn check_unicusp_iii(n: u32, s: u32, a: &[Rat]) -> Result<u64> {
    if n < 2 || s < 1 {
        return violation("need n >= 2 and s >= 1");
    }
    if a.len() != s as usize {
        return violation("expected coefficients a_1, ..., a_s");
    }
    if a.last().unwrap().is_zero() {
        return violation("a_s must be nonzero");
    }
    let (n, s) = (n as u64, s as u64);
    let m = 4 * n + 1;
    let deg_a = m.checked_mul(s).and_then(|v| v.checked_mul(2)).map(|v| v - 2 * n);
    check_degree(deg_a.and_then(|d| d.checked_mul(m)))
}

fn mono(e: [u32; 3]) -> Form {
    Form::monomial(Rat::one(), e)
}

/// Unicuspidal curve (A^{μ_A} − G^{μ_G}) / q^n for q = X or g = XZ − Y²,
/// with the pencil ⟨A^{μ_A}, G^{μ_G}⟩.
pub fn tono_unicuspidal(spec: &FamilySpec) -> Result<FamilyInstance> {
    spec.validate()?;
    let (a_form, mu_a, g_form, mu_g, q, n) = match spec {
        FamilySpec::TonoUnicuspI { n, s, a } => {
            let (n, s) = (*n, *s);
            let f = &mono([n, 0, 1]) + &y_pow(n + 1);
            let mut a_form = &f.pow(s - 1) * &Form::y();
            for (idx, c) in a.iter().enumerate() {
                let i = idx as u32 + 2;
                let t = &f.pow(s - i) * &mono([(n + 1) * i - n, 0, 0]);
                a_form = &a_form + &t.scale(c);
            }
            (a_form, n + 1, f, (n + 1) * (s - 1) + 1, Form::x(), n)
        }
        FamilySpec::TonoUnicuspII { n } => {
            let n = *n;
            let g = &mono([1, 0, 1]) - &y_pow(2);
            let gn = g.pow(n);
            let a_form = &(&gn * &Form::y()) + &mono([2 * n + 1, 0, 0]);
            let b_form = unicusp_h(&g, n);
            (a_form, 4 * n + 1, b_form, 2 * n + 1, g, n)
        }
        FamilySpec::TonoUnicuspIII { n, s, a } => {
            let (n, s) = (*n, *s);
            let m = 4 * n + 1;
            let g = &mono([1, 0, 1]) - &y_pow(2);
            let h = unicusp_h(&g, n);
            let inner = &(&g.pow(n) * &Form::y()) + &mono([2 * n + 1, 0, 0]);
            let mut a_form = &h.pow(2 * s - 1) * &inner;
            for (idx, c) in a.iter().enumerate() {
                let i = idx as u32 + 1;
                let t = &h.pow(2 * (s - i)) * &g.pow(m * i - n);
                a_form = &a_form + &t.scale(c);
            }
            (a_form, m, h, 2 * (m * s - n), g, n)
        }
        _ => return violation("not a unicuspidal family"),
    };
    let big_f = a_form.pow(mu_a);
    let big_g = g_form.pow(mu_g);
    let special = &big_f - &big_g;
    let (k, curve) = special.extract_factor_multiplicity(&q)?;
    if k != n {
        return Err(Error::NotDivisible);
    }
    let curve = curve.primitive_integer();
    let pencil = Pencil::new(
        big_f.clone(),
        big_g.clone(),
        vec![
            member(1, 0, vec![(a_form, mu_a, true)])?,
            member(0, 1, vec![(g_form, mu_g, true)])?,
            member(1, -1, vec![(q, n, true), (curve.clone(), 1, true)])?,
        ],
        coordinate_base_points(&big_f, &big_g),
    )?;
    Ok(FamilyInstance {
        divisor: FactoredDivisor::new([(curve.clone(), 1, true)])?,
        curve,
        pencil,
    })
}

// g^{2n} Z + 2 X^{2n} Y g^n + X^{4n+1}
fn unicusp_h(g: &Form, n: u32) -> Form {
    let gn = g.pow(n);
    let t1 = &gn.pow(2) * &Form::var(Z);
    let t2 = (&mono([2 * n, 1, 0]) * &gn).scale(&Rat::from_integer(2.into()));
    &(&t1 + &t2) + &mono([4 * n + 1, 0, 0])
}
