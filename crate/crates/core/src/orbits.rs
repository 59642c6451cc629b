//! Endomorphisms of P²: orbits, pullbacks of divisors, integrality along
//! orbits and invariant lines.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::de::Deserializer;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::forms::{squarefree_decomposition, squarefree_part, FactoredDivisor, Form};
use crate::heights::{is_s_integral, point_height, LogCombination};
use crate::places::PlaceSet;
use crate::point::ProjPoint;

/// A rational self-map of P² given by three forms of a common degree d ≥ 1,
/// scaled jointly to coprime integer coefficients. Whether the forms have a
/// common zero over the algebraic closure is not checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endo {
    components: [Form; 3],
}

impl Endo {
    pub fn new(components: [Form; 3]) -> Result<Self> {
        let degs: Vec<u32> = components.iter().map(Form::degree).collect();
        if degs.iter().any(|&d| d != degs[0]) {
            return Err(Error::DegreeMismatch(degs));
        }
        if degs[0] == 0 {
            return Err(Error::ParameterViolation("components must have degree at least 1".into()));
        }
        if components.iter().any(Form::is_zero) {
            return Err(Error::ParameterViolation("components must be nonzero".into()));
        }
        let den = components
            .iter()
            .flat_map(|f| f.terms().map(|(_, c)| c.denom().clone()))
            .fold(BigInt::one(), |acc, d| acc.lcm(&d));
        let num = components
            .iter()
            .flat_map(|f| f.terms().map(|(_, c)| (c * &den).to_integer()))
            .fold(BigInt::zero(), |acc, n| acc.gcd(&n));
        let k = crate::arith::Rat::new(den, num);
        Ok(Endo { components: components.map(|f| f.scale(&k)) })
    }

    /// The coordinate power map (X^d, Y^d, Z^d).
    pub fn power_map(d: u32) -> Result<Self> {
        Endo::new([Form::x().pow(d), Form::y().pow(d), Form::z().pow(d)])
    }

    pub fn degree(&self) -> u32 {
        self.components[0].degree()
    }

    pub fn components(&self) -> &[Form; 3] {
        &self.components
    }

    /// g ∘ φ.
    pub fn pull(&self, g: &Form) -> Result<Form> {
        g.compose(&self.components)
    }
}

impl Serialize for Endo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            d: u32,
            components: &'a [Form; 3],
        }
        Out { d: self.degree(), components: &self.components }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Endo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct In {
            d: Option<u32>,
            components: [Form; 3],
        }
        let raw = In::deserialize(d)?;
        let endo = Endo::new(raw.components).map_err(serde::de::Error::custom)?;
        if raw.d.is_some_and(|d| d != endo.degree()) {
            return Err(serde::de::Error::custom(format!(
                "declared degree {} but components have degree {}",
                raw.d.unwrap(),
                endo.degree()
            )));
        }
        Ok(endo)
    }
}

/// φ(P) in canonical form and the positive content divided out.
pub fn apply_endo(phi: &Endo, p: &ProjPoint) -> Result<(ProjPoint, BigInt)> {
    apply_at(phi, p, 0)
}

fn apply_at(phi: &Endo, p: &ProjPoint, index: usize) -> Result<(ProjPoint, BigInt)> {
    let vals = phi
        .components
        .clone()
        .map(|f| f.evaluate_integral(p).expect("components have integer coefficients"));
    if vals.iter().all(Zero::is_zero) {
        return Err(Error::IndeterminatePoint { index });
    }
    Ok(ProjPoint::reduce_integers(vals))
}

/// Outcome of the integrality test at one orbit point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrality {
    Integral,
    NotIntegral,
    OnDivisor,
}

impl Integrality {
    pub fn as_str(&self) -> &'static str {
        match self {
            Integrality::Integral => "true",
            Integrality::NotIntegral => "false",
            Integrality::OnDivisor => "ON_DIVISOR",
        }
    }
}

impl Serialize for Integrality {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Integrality::Integral => s.serialize_bool(true),
            Integrality::NotIntegral => s.serialize_bool(false),
            Integrality::OnDivisor => s.serialize_str("ON_DIVISOR"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitRecord {
    pub index: usize,
    pub point: ProjPoint,
    /// Content removed when reducing φ(previous point); 1 at index 0.
    #[serde(serialize_with = "crate::serde_rat::display")]
    pub reduced_gcd: BigInt,
    /// log of the largest coordinate.
    pub height_log: LogCombination,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_integral: Option<Integrality>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Orbit {
    pub records: Vec<OrbitRecord>,
    /// First index whose point exceeded the height cap, if any.
    pub truncated_at: Option<usize>,
}

/// Number of decimal digits allowed in orbit coordinates by default.
pub const DEFAULT_CAP_DIGITS: u32 = 10_000;

/// 10^digits.
pub fn height_cap_digits(digits: u32) -> BigUint {
    num_traits::pow(BigUint::from(10u32), digits as usize)
}

/// P, φ(P), …, φ^{n_max}(P), stopping before the first point with a
/// coordinate larger than `height_cap` in absolute value.
pub fn iterate_orbit(phi: &Endo, p: &ProjPoint, n_max: usize, height_cap: &BigUint) -> Result<Orbit> {
    let mut records = Vec::new();
    let mut current = p.clone();
    let mut content = BigInt::one();
    for index in 0..=n_max {
        if index > 0 {
            let (next, g) = apply_at(phi, &current, index)?;
            current = next;
            content = g;
        }
        if &current.max_abs_coord() > height_cap {
            return Ok(Orbit { records, truncated_at: Some(index) });
        }
        records.push(OrbitRecord {
            index,
            point: current.clone(),
            reduced_gcd: content.clone(),
            height_log: point_height(&current),
            s_integral: None,
        });
    }
    Ok(Orbit { records, truncated_at: None })
}

/// Orbit of P with the integrality of every point relative to (D, S).
pub fn scan_orbit_integrality(
    phi: &Endo,
    p: &ProjPoint,
    d: &FactoredDivisor,
    s: &PlaceSet,
    n_max: usize,
    height_cap: &BigUint,
) -> Result<Orbit> {
    let mut orbit = iterate_orbit(phi, p, n_max, height_cap)?;
    let flags: Vec<Result<Integrality>> = orbit
        .records
        .par_iter()
        .map(|r| match is_s_integral(d, &r.point, s) {
            Ok(true) => Ok(Integrality::Integral),
            Ok(false) => Ok(Integrality::NotIntegral),
            Err(Error::OnDivisor) => Ok(Integrality::OnDivisor),
            Err(e) => Err(e),
        })
        .collect();
    for (r, flag) in orbit.records.iter_mut().zip(flags) {
        r.s_integral = Some(flag?);
    }
    Ok(orbit)
}

/// CSV with columns index, x, y, z, removed_content, s_integral.
pub fn orbit_csv(orbit: &Orbit) -> String {
    let mut out = String::from("index,x,y,z,removed_content,s_integral\n");
    for r in &orbit.records {
        let flag = r.s_integral.map(|f| f.as_str()).unwrap_or("");
        out.push_str(&format!("{},{},{},{}\n", r.index, r.point.to_csv_row(), r.reduced_gcd, flag));
    }
    out
}

/// φ*D with its Q-rational component count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pullback {
    pub divisor: FactoredDivisor,
    /// Number of distinct factors found; a lower bound for the number of
    /// irreducible components over Q.
    pub components: usize,
    /// True when every factor is known to be irreducible.
    pub complete: bool,
}

fn push_part(parts: &mut Vec<(Form, u32, bool)>, form: Form, mult: u32, hint: bool) {
    let form = form.primitive_integer();
    match parts.iter_mut().find(|(f, _, _)| *f == form) {
        Some(slot) => {
            slot.1 += mult;
            slot.2 |= hint;
        }
        None => parts.push((form, mult, hint)),
    }
}

/// Pulls each factor (g, m) back to (g∘φ, m), peeling off the given hint
/// factors and the coordinate lines first and splitting the remainder by
/// square-free decomposition.
pub fn pullback_divisor(phi: &Endo, d: &FactoredDivisor, hints: &[Form]) -> Result<Pullback> {
    let mut known: Vec<Form> = hints.iter().map(Form::primitive_integer).collect();
    for line in [Form::x(), Form::y(), Form::z()] {
        if !known.contains(&line) {
            known.push(line);
        }
    }
    let mut parts: Vec<(Form, u32, bool)> = Vec::new();
    for fac in d.factors() {
        let mut rest = phi.pull(&fac.form)?;
        for h in &known {
            if h.degree() == 0 || rest.degree() < h.degree() {
                continue;
            }
            let (k, r) = rest.extract_factor_multiplicity(h)?;
            if k > 0 {
                push_part(&mut parts, h.clone(), k * fac.mult, h.is_linear());
                rest = r;
            }
        }
        if rest.degree() > 0 {
            for (piece, k) in squarefree_decomposition(&rest)? {
                push_part(&mut parts, piece.clone(), k * fac.mult, piece.is_linear());
            }
        }
    }
    let complete = parts.iter().all(|p| p.2);
    let components = parts.len();
    let divisor = FactoredDivisor::new(parts)?;
    debug_assert_eq!(divisor.degree(), phi.degree() * d.degree());
    Ok(Pullback { divisor, components, complete })
}

fn check_line(l: &Form) -> Result<()> {
    if l.is_zero() || !l.is_linear() {
        return Err(Error::NotALine);
    }
    Ok(())
}

/// True iff ℓ∘φ = c·ℓ^d for a nonzero constant c.
pub fn is_invariant_line(phi: &Endo, l: &Form) -> Result<bool> {
    check_line(l)?;
    let pulled = phi.pull(l)?;
    Ok(!pulled.is_zero() && pulled.is_proportional(&l.pow(phi.degree())))
}

/// True iff the radical of (∏ℓᵢ)∘φ is proportional to ∏ℓᵢ.
pub fn is_completely_invariant_line_set(phi: &Endo, lines: &[Form]) -> Result<bool> {
    if lines.len() > 3 {
        return Err(Error::TooManyLines(lines.len()));
    }
    for (i, l) in lines.iter().enumerate() {
        check_line(l)?;
        if lines[..i].iter().any(|m| m.is_proportional(l)) {
            return Err(Error::InvalidDivisor(format!("repeated line {l}")));
        }
    }
    let product = lines.iter().fold(Form::one(), |acc, l| &acc * l);
    let pulled = phi.pull(&product)?;
    if pulled.is_zero() {
        return Ok(false);
    }
    Ok(squarefree_part(&pulled).is_proportional(&product))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateCheck {
    pub candidate: ProjPoint,
    pub maps_to_point: bool,
    pub singular_on_pullback: bool,
    pub verified: bool,
}

/// For each candidate Q, checks φ(Q) = P and that C∘φ is singular at Q.
pub fn singularity_chain_check(
    phi: &Endo,
    c: &Form,
    p: &ProjPoint,
    candidates: &[ProjPoint],
) -> Result<Vec<CandidateCheck>> {
    if !c.is_singular_at(p).unwrap_or(false) {
        return Err(Error::NotSingular);
    }
    let pulled = phi.pull(c)?;
    Ok(candidates
        .iter()
        .map(|q| {
            let maps_to_point = apply_endo(phi, q).map(|(img, _)| &img == p).unwrap_or(false);
            let singular_on_pullback = pulled.is_singular_at(q).unwrap_or(false);
            CandidateCheck {
                candidate: q.clone(),
                maps_to_point,
                singular_on_pullback,
                verified: maps_to_point && singular_on_pullback,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::expr::parse_form;

    fn f(s: &str) -> Form {
        parse_form(s).unwrap()
    }

    fn endo(a: &str, b: &str, c: &str) -> Endo {
        Endo::new([f(a), f(b), f(c)]).unwrap()
    }

    #[test]
    fn apply() {
        let sq = Endo::power_map(2).unwrap();
        assert_eq!(apply_endo(&sq, &ProjPoint::new(3, 2, 1)).unwrap(), (ProjPoint::new(9, 4, 1), BigInt::one()));
        assert_eq!(apply_endo(&sq, &ProjPoint::new(2, 2, 2)).unwrap().0, ProjPoint::new(1, 1, 1));
        let cr = endo("Y*Z", "X*Z", "X*Y");
        assert_eq!(
            apply_endo(&cr, &ProjPoint::new(1, 0, 0)).unwrap_err(),
            Error::IndeterminatePoint { index: 0 }
        );
        let halves = endo("X^2/2", "Y^2", "Z^2");
        assert_eq!(halves.components()[1], f("2*Y^2"));
        let (q, g) = apply_endo(&halves, &ProjPoint::new(2, 1, 1)).unwrap();
        assert_eq!((q, g), (ProjPoint::new(2, 1, 1), BigInt::from(2)));
    }

    #[test]
    fn orbit_truncation() {
        let sq = Endo::power_map(2).unwrap();
        let p = ProjPoint::new(3, 2, 1);
        let o = iterate_orbit(&sq, &p, 3, &height_cap_digits(100)).unwrap();
        let pts: Vec<ProjPoint> = o.records.iter().map(|r| r.point.clone()).collect();
        assert_eq!(
            pts,
            vec![p.clone(), ProjPoint::new(9, 4, 1), ProjPoint::new(81, 16, 1), ProjPoint::new(6561, 256, 1)]
        );
        assert_eq!(iterate_orbit(&sq, &p, 0, &height_cap_digits(100)).unwrap().records.len(), 1);
        let o = iterate_orbit(&sq, &p, 10, &height_cap_digits(6)).unwrap();
        assert_eq!(o.records.len(), 4);
        assert_eq!(o.truncated_at, Some(4));
    }

    #[test]
    fn pullbacks() {
        let sq = Endo::power_map(2).unwrap();
        let d = FactoredDivisor::new([(f("X*Y*Z"), 1, false)]).unwrap();
        let pb = pullback_divisor(&sq, &d, &[]).unwrap();
        let got: Vec<(Form, u32)> = pb.divisor.factors().iter().map(|x| (x.form.clone(), x.mult)).collect();
        assert_eq!(got, vec![(f("X"), 2), (f("Y"), 2), (f("Z"), 2)]);
        assert!(pb.complete);

        let phi = endo("X^2 + Y*Z", "X*Y - Z^2", "Z^2");
        let pb = pullback_divisor(&phi, &FactoredDivisor::new([(Form::z(), 1, true)]).unwrap(), &[]).unwrap();
        assert_eq!(pb.divisor.factors().len(), 1);
        assert_eq!(pb.divisor.factors()[0].mult, 2);

        let c = FactoredDivisor::new([(f("Y^2*Z - X^3"), 1, true)]).unwrap();
        let pb = pullback_divisor(&phi, &c, &[]).unwrap();
        assert_eq!(pb.divisor.degree(), 6);
    }

    #[test]
    fn invariant_lines() {
        let sq = Endo::power_map(2).unwrap();
        let swap = endo("Y^2", "X^2", "Z^2");
        assert!(is_invariant_line(&sq, &f("X")).unwrap());
        assert!(!is_invariant_line(&sq, &f("X+Y")).unwrap());
        assert!(!is_invariant_line(&swap, &f("X")).unwrap());
        assert_eq!(is_invariant_line(&sq, &f("X^2")).unwrap_err(), Error::NotALine);

        assert!(is_completely_invariant_line_set(&sq, &[f("X"), f("Y"), f("Z")]).unwrap());
        assert!(!is_completely_invariant_line_set(&swap, &[f("X")]).unwrap());
        assert!(is_completely_invariant_line_set(&swap, &[f("X"), f("Y")]).unwrap());
        assert!(is_completely_invariant_line_set(&sq, &[f("X"), f("Y")]).unwrap());
        let four = [f("X"), f("Y"), f("Z"), f("X+Y")];
        assert_eq!(is_completely_invariant_line_set(&sq, &four).unwrap_err(), Error::TooManyLines(4));
    }

    #[test]
    fn singular_chain() {
        let sq = Endo::power_map(2).unwrap();
        let c = f("Y^2*Z - X^3");
        let p = ProjPoint::new(0, 0, 1);
        let r = singularity_chain_check(&sq, &c, &p, &[p.clone(), ProjPoint::new(1, 1, 1)]).unwrap();
        assert!(r[0].verified);
        assert!(!r[1].maps_to_point);
        assert!(singularity_chain_check(&sq, &c, &p, &[]).unwrap().is_empty());
        assert_eq!(
            singularity_chain_check(&sq, &c, &ProjPoint::new(1, 1, 1), &[]).unwrap_err(),
            Error::NotSingular
        );
    }

    #[test]
    fn scan() {
        let sq = Endo::power_map(2).unwrap();
        let d = FactoredDivisor::new([(f("X*Y*Z"), 1, false)]).unwrap();
        let cap = height_cap_digits(DEFAULT_CAP_DIGITS);
        let p = ProjPoint::new(3, 2, 1);
        let o = scan_orbit_integrality(&sq, &p, &d, &PlaceSet::new([2, 3]).unwrap(), 5, &cap).unwrap();
        assert!(o.records.iter().all(|r| r.s_integral == Some(Integrality::Integral)));
        let o = scan_orbit_integrality(&sq, &p, &d, &PlaceSet::new([2]).unwrap(), 5, &cap).unwrap();
        assert_eq!(o.records[0].s_integral, Some(Integrality::NotIntegral));
        let on = scan_orbit_integrality(&sq, &ProjPoint::new(0, 1, 1), &d, &PlaceSet::new([2]).unwrap(), 1, &cap).unwrap();
        assert_eq!(on.records[1].s_integral, Some(Integrality::OnDivisor));
        assert!(orbit_csv(&o).starts_with("index,x,y,z,removed_content,s_integral\n0,3,2,1,1,false\n"));
    }
}
