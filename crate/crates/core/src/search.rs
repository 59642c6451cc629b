//! Bounded searches: S-integral points of small height, the pencil members
//! they lie on, and small solutions of the S-unit equation u + v = 1.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::{is_s_unit, valuation, Rat};
use crate::error::{Error, Result};
use crate::forms::{FactoredDivisor, Form};
use crate::heights::is_s_integral;
use crate::pencils::{Param, Pencil};
use crate::places::PlaceSet;
use crate::point::ProjPoint;

/// Largest coordinate bound accepted by [`enumerate_integral_points`].
pub const MAX_BOUND: u64 = 1_000_000_000;

// A factor specialized for fast evaluation along lines x, z fixed:
// by_y[j] lists (c, i, k) for the terms c X^i Y^j Z^k.
struct FastFactor {
    by_y: Vec<Vec<(i128, u32, u32)>>,
}

impl FastFactor {
    // None when some coefficient or the worst-case value does not fit.
    fn new(f: &Form, bound: u64) -> Option<Self> {
        let d = f.degree();
        let mut by_y: Vec<Vec<(i128, u32, u32)>> = vec![Vec::new(); d as usize + 1];
        let mut worst: f64 = 0.0;
        for (e, c) in f.terms() {
            let c = c.to_integer().to_i128()?;
            worst += (c as f64).abs();
            by_y[e[1] as usize].push((c, e[0], e[2]));
        }
        worst *= (bound as f64).powi(d as i32);
        (worst < 2f64.powi(120)).then_some(FastFactor { by_y })
    }

    fn coeffs(&self, x: i128, z: i128) -> Vec<i128> {
        self.by_y
            .iter()
            .map(|terms| terms.iter().map(|&(c, i, k)| c * x.pow(i) * z.pow(k)).sum())
            .collect()
    }
}

fn horner(coeffs: &[i128], y: i128) -> i128 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * y + c)
}

fn is_s_unit_i128(v: i128, primes: &[u64]) -> bool {
    if v == 0 {
        return false;
    }
    let mut n = v.unsigned_abs();
    for &p in primes {
        if p == 2 {
            n >>= n.trailing_zeros();
        } else {
            let p = p as u128;
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
    }
    n == 1
}

fn coordinate_line(f: &Form) -> Option<usize> {
    (0..3).find(|&i| *f == Form::var(i))
}

fn s_units_up_to(bound: u64, primes: &[u64]) -> Vec<i128> {
    let mut pos = vec![1u64];
    for &p in primes {
        let mut next = Vec::new();
        for &u in &pos {
            let mut v = u;
            loop {
                next.push(v);
                match v.checked_mul(p) {
                    Some(w) if w <= bound => v = w,
                    _ => break,
                }
            }
        }
        pos = next;
    }
    pos.sort_unstable();
    let mut out: Vec<i128> = pos.iter().rev().map(|&u| -(u as i128)).collect();
    out.extend(pos.iter().map(|&u| u as i128));
    out
}

/// All points with canonical coordinates bounded by `bound` in absolute
/// value that lie off Supp D and are (D, S)-integral, sorted.
pub fn enumerate_integral_points(d: &FactoredDivisor, s: &PlaceSet, bound: u64) -> Result<Vec<ProjPoint>> {
    if bound == 0 || bound > MAX_BOUND {
        return Err(Error::ParameterViolation(format!("bound must lie in 1..={MAX_BOUND}")));
    }
    let primes: Vec<u64> = s.primes().collect();
    let b = bound as i128;
    let full: Vec<i128> = (-b..=b).collect();
    let units = s_units_up_to(bound, &primes);
    let mut ranges = [full.clone(), full.clone(), full];
    let mut rest: Vec<&Form> = Vec::new();
    for fac in d.factors() {
        match coordinate_line(&fac.form) {
            Some(i) => ranges[i] = units.clone(),
            None => rest.push(&fac.form),
        }
    }
    let fast: Option<Vec<FastFactor>> = rest.iter().map(|f| FastFactor::new(f, bound)).collect();
    let [xs, ys, zs] = ranges;
    let xs: Vec<i128> = xs.into_iter().filter(|&x| x >= 0).collect();

    let scan_x = |x: i128| -> Result<Vec<ProjPoint>> {
        let mut found = Vec::new();
        for &z in &zs {
            let g_xz = x.gcd(&z);
            let ys_here: Box<dyn Iterator<Item = i128>> = if x == 0 {
                Box::new(ys.iter().copied().filter(move |&y| y > 0 || (y == 0 && z == 1)))
            } else {
                Box::new(ys.iter().copied())
            };
            match &fast {
                Some(fast) => {
                    let coeffs: Vec<Vec<i128>> = fast.iter().map(|f| f.coeffs(x, z)).collect();
                    for y in ys_here {
                        if g_xz.gcd(&y) != 1 {
                            continue;
                        }
                        if coeffs.iter().all(|c| is_s_unit_i128(horner(c, y), &primes)) {
                            found.push(ProjPoint::new(x as i64, y as i64, z as i64));
                        }
                    }
                }
                None => {
                    for y in ys_here {
                        if g_xz.gcd(&y) != 1 {
                            continue;
                        }
                        let p = ProjPoint::new(x as i64, y as i64, z as i64);
                        if !d.contains_point(&p) && is_s_integral(d, &p, s)? {
                            found.push(p);
                        }
                    }
                }
            }
        }
        Ok(found)
    };
    let chunks: Vec<Result<Vec<ProjPoint>>> = xs.par_iter().map(|&x| scan_x(x)).collect();
    let mut out = Vec::new();
    for c in chunks {
        out.extend(c?);
    }
    out.sort();
    Ok(out)
}

/// A member of a pencil, or the marker for base points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiberKey {
    Member(Param),
    BasePoint,
}

impl fmt::Display for FiberKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberKey::Member(st) => st.fmt(f),
            FiberKey::BasePoint => f.write_str("BASE_POINT"),
        }
    }
}

impl Serialize for FiberKey {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Number of points on each member [G(P) : −F(P)] of the pencil.
pub fn fibers_hit(points: &[ProjPoint], pencil: &Pencil) -> BTreeMap<FiberKey, usize> {
    let mut out = BTreeMap::new();
    for p in points {
        let key = match pencil.member_through(p) {
            Some(st) => FiberKey::Member(st),
            None => FiberKey::BasePoint,
        };
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

/// A solution of u + v = 1 in S-units.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct UnitSolution {
    pub u: Rat,
    pub v: Rat,
}

impl Serialize for UnitSolution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.u.to_string(), self.v.to_string()].serialize(s)
    }
}

fn bounded_unit(x: &Rat, s: &PlaceSet, e: u32) -> bool {
    is_s_unit(x, s) && s.primes().all(|p| valuation(x, p).map(|v| v.unsigned_abs() <= e as u64).unwrap_or(false))
}

/// Every solution of u + v = 1 with u, v = ±∏_{p∈S} p^{e_p}, |e_p| ≤ E,
/// sorted. The list is complete only within the exponent box.
pub fn solve_s_unit_bounded(s: &PlaceSet, exp_bound: u32) -> Vec<UnitSolution> {
    let primes: Vec<u64> = s.primes().collect();
    let e = exp_bound as i64;
    let mut magnitudes = vec![Rat::one()];
    for &p in &primes {
        let mut next = Vec::new();
        for m in &magnitudes {
            for k in -e..=e {
                let pk = num_traits::pow(BigInt::from(p), k.unsigned_abs() as usize);
                let factor = if k >= 0 { Rat::from_integer(pk) } else { Rat::new(BigInt::one(), pk) };
                next.push(m * factor);
            }
        }
        magnitudes = next;
    }
    let mut out: Vec<UnitSolution> = magnitudes
        .iter()
        .flat_map(|m| [m.clone(), -m.clone()])
        .filter_map(|u| {
            let v = Rat::one() - &u;
            (!v.is_zero() && bounded_unit(&v, s, exp_bound)).then_some(UnitSolution { u, v })
        })
        .collect();
    out.sort();
    out.dedup();
    out
}
