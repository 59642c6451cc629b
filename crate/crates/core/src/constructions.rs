//! Explicit families of S-integral points built from S-units, with exact
//! verification of every emitted point.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_s_unit, is_s_unit_int, Rat};
use crate::error::{Error, Result};
use crate::forms::expr::parse_form;
use crate::forms::{FactoredDivisor, Form};
use crate::heights::is_s_integral;
use crate::places::PlaceSet;
use crate::point::{reduce_point, ProjPoint};

/// Largest exponent parameter accepted by the constructions.
pub const MAX_PARAM: u32 = 256;
/// Largest max-norm of exponent vectors tried by [`generalized_unit_stream`].
pub const MAX_UNIT_NORM: u32 = 64;

/// An S-unit together with its place set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitParam {
    u: Rat,
    s: PlaceSet,
}

impl UnitParam {
    pub fn new(u: Rat, s: PlaceSet) -> Result<Self> {
        if !is_s_unit(&u, &s) {
            return Err(Error::ParameterViolation(format!("{u} is not an S-unit for S = {{{s}}}")));
        }
        Ok(UnitParam { u, s })
    }

    pub fn u(&self) -> &Rat {
        &self.u
    }

    pub fn places(&self) -> &PlaceSet {
        &self.s
    }
}

fn check_param(name: &str, v: u32, min: u32) -> Result<()> {
    if v < min || v > MAX_PARAM {
        return Err(Error::ParameterViolation(format!("{name} must lie in {min}..={MAX_PARAM}")));
    }
    Ok(())
}

fn rpow(u: &Rat, e: u32) -> Rat {
    num_traits::pow(u.clone(), e as usize)
}

/// Y^{2α+1} + X (XZ + Y²)^α.
pub fn third_type_form(alpha: u32) -> Result<Form> {
    check_param("alpha", alpha, 2)?;
    parse_form(&format!("Y^{} + X*(X*Z + Y^2)^{alpha}", 2 * alpha + 1))
}

/// Y^{3b+1} + X (X²Z + aXY² + Y³)^b.
pub fn congruence_form(a: u32, b: u32) -> Result<Form> {
    check_param("a", a, 0)?;
    check_param("b", b, 2)?;
    parse_form(&format!("Y^{} + X*(X^2*Z + {a}*X*Y^2 + Y^3)^{b}", 3 * b + 1))
}

/// Z^{3b+1} + X (X²Y + (aX + Z) Z²)^b; the line-plus-curve divisor adds Z.
pub fn line_curve_form(a: u32, b: u32) -> Result<Form> {
    check_param("a", a, 0)?;
    check_param("b", b, 2)?;
    parse_form(&format!("Z^{} + X*(X^2*Y + ({a}*X + Z)*Z^2)^{b}", 3 * b + 1))
}

/// The point ((u−1)/u^{αm}, 1, (u^m−1)/(u−1) · u^{αm}) and the value of the
/// affine equation there, which equals u. For u = 1 the limit point
/// (0, 1, m) is returned.
pub fn third_type_point(alpha: u32, u: &UnitParam, m: u32) -> Result<(ProjPoint, Rat)> {
    let f = third_type_form(alpha)?;
    check_param("m", m, 1)?;
    let u = &u.u;
    let raw = if u.is_one() {
        [Rat::zero(), Rat::one(), Rat::from_integer(m.into())]
    } else {
        let uam = rpow(u, alpha * m);
        let geom = (rpow(u, m) - Rat::one()) / (u - Rat::one());
        [(u - Rat::one()) / &uam, Rat::one(), geom * uam]
    };
    Ok((reduce_point(&raw)?, f.eval_rat(&raw)))
}

/// (u^{a(b+1)} − u^{ab} − a(u−1)) / (u−1)².
pub fn congruence_quotient(a: u32, b: u32, u: &Rat) -> Result<Rat> {
    let um1 = u - Rat::one();
    if um1.is_zero() {
        return Err(Error::ParameterViolation("u must differ from 1".into()));
    }
    let t = rpow(u, a);
    let num = rpow(&t, b + 1) - rpow(&t, b) - Rat::from_integer(a.into()) * &um1;
    Ok(num / (&um1 * &um1))
}

/// True when the congruence quotient at u has no denominator outside S.
pub fn congruence_holds(a: u32, b: u32, u: &UnitParam) -> Result<bool> {
    let q = congruence_quotient(a, b, &u.u)?;
    Ok(is_s_unit_int(q.denom(), &u.s))
}

fn congruence_coords(a: u32, b: u32, u: &UnitParam) -> Result<(Rat, Rat, Rat)> {
    check_param("a", a, 0)?;
    check_param("b", b, 2)?;
    if !congruence_holds(a, b, u)? {
        return Err(Error::CongruenceFailure(u.u.to_string()));
    }
    let t = rpow(&u.u, a);
    let tb = rpow(&t, b);
    let x = (&u.u - Rat::one()) / &tb;
    let z = &tb * congruence_quotient(a, b, &u.u)?;
    Ok((t, x, z))
}

/// With t = u^a, the point ((u−1)/t^b, 1, t^b (t^{b+1} − t^b − a(u−1))/(u−1)²)
/// and the value u of the affine equation there.
pub fn congruence_point(a: u32, b: u32, u: &UnitParam) -> Result<(ProjPoint, Rat)> {
    let f = congruence_form(a, b)?;
    let (_, x, z) = congruence_coords(a, b, u)?;
    let raw = [x, Rat::one(), z];
    Ok((reduce_point(&raw)?, f.eval_rat(&raw)))
}

/// The same point with the roles of Y and Z exchanged, for the divisor
/// Z · [`line_curve_form`].
pub fn line_curve_congruence_point(a: u32, b: u32, u: &UnitParam) -> Result<(ProjPoint, Rat)> {
    let f = line_curve_form(a, b)?;
    let (_, x, y) = congruence_coords(a, b, u)?;
    let raw = [x, y, Rat::one()];
    Ok((reduce_point(&raw)?, f.eval_rat(&raw)))
}

/// Which explicit construction to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConstructionMode {
    ThirdType { alpha: u32, m: u32 },
    Congruence { a: u32, b: u32 },
    LineCurve { a: u32, b: u32 },
}

impl ConstructionMode {
    /// The divisor whose integral points the mode produces.
    pub fn divisor(&self) -> Result<FactoredDivisor> {
        match *self {
            ConstructionMode::ThirdType { alpha, .. } => {
                FactoredDivisor::new([(third_type_form(alpha)?, 1, true)])
            }
            ConstructionMode::Congruence { a, b } => FactoredDivisor::new([(congruence_form(a, b)?, 1, true)]),
            ConstructionMode::LineCurve { a, b } => {
                FactoredDivisor::new([(Form::z(), 1, true), (line_curve_form(a, b)?, 1, true)])
            }
        }
    }

    pub fn point(&self, u: &UnitParam) -> Result<(ProjPoint, Rat)> {
        match *self {
            ConstructionMode::ThirdType { alpha, m } => third_type_point(alpha, u, m),
            ConstructionMode::Congruence { a, b } => congruence_point(a, b, u),
            ConstructionMode::LineCurve { a, b } => line_curve_congruence_point(a, b, u),
        }
    }

    fn t(&self, u: &Rat) -> Option<Rat> {
        match *self {
            ConstructionMode::ThirdType { .. } => None,
            ConstructionMode::Congruence { a, .. } | ConstructionMode::LineCurve { a, .. } => Some(rpow(u, a)),
        }
    }
}

/// Record of one emitted point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub mode: ConstructionMode,
    pub point: ProjPoint,
    #[serde(with = "crate::serde_rat")]
    pub u: Rat,
    #[serde(with = "crate::serde_rat::option", skip_serializing_if = "Option::is_none")]
    pub t: Option<Rat>,
    /// The affine equation evaluated at the constructed coordinates.
    #[serde(with = "crate::serde_rat")]
    pub value: Rat,
    pub s_integral: bool,
}

/// Exponent vectors in ℕ^k with max-norm exactly n, ordered by the exponent
/// of the last prime first, then the previous one, and so on.
fn vectors_of_norm(k: usize, n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut v = vec![0u32; k];
    loop {
        if v.iter().copied().max() == Some(n) {
            out.push(v.clone());
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            if v[i] < n {
                v[i] += 1;
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

/// The S-units ∏ p^{e_p} with e ≠ 0 in ℕ^{|S|}, by increasing max-norm of e.
pub fn unit_candidates(s: &PlaceSet, max_norm: u32) -> impl Iterator<Item = Rat> + '_ {
    let primes: Vec<u64> = s.primes().collect();
    (1..=max_norm).flat_map(move |n| {
        let primes = primes.clone();
        vectors_of_norm(primes.len(), n).into_iter().map(move |e| {
            let v = primes
                .iter()
                .zip(&e)
                .fold(BigInt::one(), |acc, (&p, &k)| acc * num_traits::pow(BigInt::from(p), k as usize));
            Rat::from_integer(v)
        })
    })
}

/// Up to `count` pairwise distinct points produced by `mode`, each verified
/// S-integral, ranging over S-units of increasing exponent vectors.
pub fn generalized_unit_stream(mode: ConstructionMode, s: &PlaceSet, count: usize) -> Result<Vec<Certificate>> {
    let divisor = mode.divisor()?;
    let mut out: Vec<Certificate> = Vec::new();
    if count == 0 {
        return Ok(out);
    }
    for u in unit_candidates(s, MAX_UNIT_NORM) {
        let param = UnitParam::new(u.clone(), s.clone())?;
        let (point, value) = mode.point(&param)?;
        if out.iter().any(|c| c.point == point) {
            continue;
        }
        let s_integral = is_s_integral(&divisor, &point, s)?;
        if !s_integral || value != u {
            return Err(Error::CongruenceFailure(u.to_string()));
        }
        out.push(Certificate { mode, point, t: mode.t(&u), u, value, s_integral });
        if out.len() == count {
            return Ok(out);
        }
    }
    Err(Error::ExhaustedSearch { found: out.len(), requested: count })
}
