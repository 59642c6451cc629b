//! Local, truncated and global heights with the canonical normalization:
//! primitive integer forms evaluated at canonical points.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{factorize, is_prime_u64, is_s_unit_int, valuation_int};
use crate::error::{Error, Result};
use crate::forms::{FactoredDivisor, Form};
use crate::places::PlaceSet;
use crate::point::ProjPoint;

/// An exact integer combination Σ c_b · log b over integer bases b ≥ 2.
#[derive(Debug, Clone, Default)]
pub struct LogCombination {
    terms: BTreeMap<BigUint, BigInt>,
}

impl LogCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    /// log n for a positive integer n (log 1 = 0).
    pub fn log(n: &BigUint) -> Self {
        let mut out = Self::zero();
        out.add_term(n.clone(), BigInt::one());
        out
    }

    pub fn add_term(&mut self, base: BigUint, coeff: BigInt) {
        if base <= BigUint::one() || coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(base.clone()).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&base);
        }
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        let mut out = Self::zero();
        for (b, c) in &self.terms {
            out.add_term(b.clone(), c * k);
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(&-BigInt::one()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &BigInt)> {
        self.terms.iter()
    }

    /// Rewrites the combination over pairwise coprime bases, in which
    /// form it is zero exactly when every coefficient vanishes.
    pub fn normalized(&self) -> Self {
        let mut cur = self.clone();
        'outer: loop {
            let bases: Vec<BigUint> = cur.terms.keys().cloned().collect();
            for i in 0..bases.len() {
                for j in i + 1..bases.len() {
                    let g = bases[i].gcd(&bases[j]);
                    if g.is_one() {
                        continue;
                    }
                    let ci = cur.terms.remove(&bases[i]).unwrap();
                    let cj = cur.terms.remove(&bases[j]).unwrap();
                    cur.add_term(g.clone(), &ci + &cj);
                    cur.add_term(&bases[i] / &g, ci);
                    cur.add_term(&bases[j] / &g, cj);
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Exact test for the real number being zero.
    pub fn is_zero(&self) -> bool {
        self.normalized().terms.is_empty()
    }

    /// Exact equality of the represented real numbers.
    pub fn same_value(&self, other: &Self) -> bool {
        self.minus(other).is_zero()
    }

    /// Floating-point value; for display only.
    pub fn approx(&self) -> f64 {
        self.terms
            .iter()
            .map(|(b, c)| c.to_f64().unwrap_or(f64::NAN) * approx_ln(b))
            .sum()
    }
}

/// Natural log of a positive integer, accurate to double precision.
pub fn approx_ln(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

impl PartialEq for LogCombination {
    fn eq(&self, other: &Self) -> bool {
        self.same_value(other)
    }
}

impl fmt::Display for LogCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let m = c.abs();
            if m.is_one() {
                write!(f, "log({b})")?;
            } else {
                write!(f, "{m}*log({b})")?;
            }
        }
        Ok(())
    }
}

impl Serialize for LogCombination {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

/// exponent · log prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalHeight {
    pub prime: BigUint,
    pub exponent: u64,
}

impl Serialize for LocalHeight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LocalHeight", 2)?;
        st.serialize_field("p", &self.prime.to_string())?;
        st.serialize_field("e", &self.exponent)?;
        st.end()
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p.to_string()))
    }
}

fn nonzero_value(f: &Form, p: &ProjPoint) -> Result<BigInt> {
    if !f.is_primitive_integer() {
        return Err(Error::NotPrimitive);
    }
    let v = f.evaluate_integral(p).expect("integer coefficients");
    if v.is_zero() {
        return Err(Error::OnDivisor);
    }
    Ok(v)
}

/// v_p(f(P)) for a primitive integer form f.
pub fn local_height(f: &Form, point: &ProjPoint, p: u64) -> Result<LocalHeight> {
    check_prime(p)?;
    let v = nonzero_value(f, point)?;
    Ok(LocalHeight { prime: p.into(), exponent: valuation_int(&v, p)? })
}

/// min(v_p(f(P)), 1).
pub fn truncated_local_height(f: &Form, point: &ProjPoint, p: u64) -> Result<LocalHeight> {
    let mut h = local_height(f, point, p)?;
    h.exponent = h.exponent.min(1);
    Ok(h)
}

/// log max |x_i| over the canonical coordinates.
pub fn point_height(point: &ProjPoint) -> LogCombination {
    LogCombination::log(&point.max_abs_coord())
}

/// deg(f) · h(P) + log |f|_∞, which equals the sum of all local heights.
pub fn divisor_height(f: &Form, point: &ProjPoint) -> Result<LogCombination> {
    nonzero_value(f, point)?;
    Ok(point_height(point)
        .scaled(&BigInt::from(f.degree()))
        .plus(&LogCombination::log(&coeff_max(f))))
}

/// The archimedean local height: log |f|_∞ + deg(f)·log max|x_i| − log |f(P)|.
pub fn archimedean_local_height(f: &Form, point: &ProjPoint) -> Result<LogCombination> {
    let v = nonzero_value(f, point)?;
    Ok(divisor_height(f, point)?.minus(&LogCombination::log(v.magnitude())))
}

/// Σ_p v_p(f(P)) · log p, read off a factorization of f(P). A composite
/// part the factorizer could not split enters as a single log term.
pub fn finite_local_sum(f: &Form, point: &ProjPoint) -> Result<LogCombination> {
    let v = nonzero_value(f, point)?;
    let fac = factorize(v.magnitude());
    let mut out = LogCombination::zero();
    for (p, e) in fac.primes {
        out.add_term(p, BigInt::from(e));
    }
    if let Some(c) = fac.cofactor {
        out.add_term(c, BigInt::one());
    }
    Ok(out)
}

fn coeff_max(f: &Form) -> BigUint {
    f.max_abs_coeff().numer().magnitude().clone()
}

/// True iff D(P) is an S-unit, i.e. no prime outside S divides the value of
/// any component at P. Only the support of D matters.
pub fn is_s_integral(d: &FactoredDivisor, point: &ProjPoint, s: &PlaceSet) -> Result<bool> {
    let values = component_values(d, point)?;
    Ok(values.iter().all(|v| is_s_unit_int(v, s)))
}

fn component_values(d: &FactoredDivisor, point: &ProjPoint) -> Result<Vec<BigInt>> {
    let mut out = Vec::with_capacity(d.factors().len());
    for fac in d.factors() {
        let v = fac
            .form
            .evaluate_integral(point)
            .expect("divisor factors are primitive integer forms");
        if v.is_zero() {
            return Err(Error::OnDivisor);
        }
        out.push(v);
    }
    Ok(out)
}

/// Everything known about the heights of one point relative to D.
#[derive(Debug, Clone)]
pub struct HeightReport {
    pub point: ProjPoint,
    /// Primitive integer equation of D, with multiplicities.
    pub divisor: Form,
    /// Primes with positive exponent in D(P).
    pub local: Vec<LocalHeight>,
    /// Composite part of |D(P)| left unsplit by the factorizer.
    pub unfactored_cofactor: Option<BigUint>,
    pub s_integral: bool,
    pub max_abs_coord: BigUint,
    pub coeff_max: BigUint,
    pub degree: u32,
}

impl HeightReport {
    /// Sum of all local heights: d·h(P) + log|f|_∞.
    pub fn global(&self) -> LogCombination {
        LogCombination::log(&self.max_abs_coord)
            .scaled(&BigInt::from(self.degree))
            .plus(&LogCombination::log(&self.coeff_max))
    }
}

/// Builds the height report of P relative to D and S.
pub fn height_report(d: &FactoredDivisor, point: &ProjPoint, s: &PlaceSet) -> Result<HeightReport> {
    let values = component_values(d, point)?;
    let mut exps: BTreeMap<BigUint, u64> = BTreeMap::new();
    let mut cofactor: Option<BigUint> = None;
    for (v, fac) in values.iter().zip(d.factors()) {
        let f = factorize(v.magnitude());
        for (p, e) in f.primes {
            *exps.entry(p).or_default() += e * fac.mult as u64;
        }
        if let Some(c) = f.cofactor {
            let c = c.pow(fac.mult);
            cofactor = Some(match cofactor {
                Some(prev) => prev * c,
                None => c,
            });
        }
    }
    let divisor = d.form().primitive_integer();
    Ok(HeightReport {
        point: point.clone(),
        local: exps
            .into_iter()
            .map(|(prime, exponent)| LocalHeight { prime, exponent })
            .collect(),
        unfactored_cofactor: cofactor,
        s_integral: values.iter().all(|v| is_s_unit_int(v, s)),
        max_abs_coord: point.max_abs_coord(),
        coeff_max: coeff_max(&divisor),
        degree: divisor.degree(),
        divisor,
    })
}

impl Serialize for HeightReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct HPoint {
            max_abs_coord: String,
        }
        #[derive(Serialize)]
        struct HDivisor {
            coeff_max: String,
            degree: u32,
        }
        let n = if self.unfactored_cofactor.is_some() { 8 } else { 7 };
        let mut st = s.serialize_struct("HeightReport", n)?;
        st.serialize_field("point", &self.point)?;
        st.serialize_field("divisor", &self.divisor)?;
        st.serialize_field("local", &self.local)?;
        if let Some(c) = &self.unfactored_cofactor {
            st.serialize_field("unfactored_cofactor", &c.to_string())?;
        }
        st.serialize_field("s_integral", &self.s_integral)?;
        st.serialize_field("h_point", &HPoint { max_abs_coord: self.max_abs_coord.to_string() })?;
        st.serialize_field(
            "h_divisor",
            &HDivisor { coeff_max: self.coeff_max.to_string(), degree: self.degree },
        )?;
        st.serialize_field("global", &self.global())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::expr::parse_form;

    fn f(s: &str) -> Form {
        parse_form(s).unwrap()
    }

    fn div(s: &str) -> FactoredDivisor {
        serde_json::from_str(&format!("{s:?}")).unwrap()
    }

    fn log(n: u64) -> LogCombination {
        LogCombination::log(&BigUint::from(n))
    }

    #[test]
    fn local_heights() {
        let e = |form: &str, p: ProjPoint, q| local_height(&f(form), &p, q).unwrap().exponent;
        assert_eq!(e("Z", ProjPoint::new(1, 1, 4), 2), 2);
        assert_eq!(e("X*Y*Z", ProjPoint::new(9, 4, 1), 3), 2);
        assert_eq!(e("X*Y*Z", ProjPoint::new(9, 4, 1), 5), 0);
        let t = |form: &str, p: ProjPoint, q| truncated_local_height(&f(form), &p, q).unwrap().exponent;
        assert_eq!(t("X*Y*Z", ProjPoint::new(9, 4, 1), 2), 1);
        assert_eq!(t("X*Y*Z", ProjPoint::new(9, 4, 1), 5), 0);
        assert_eq!(t("Z", ProjPoint::new(1, 1, 2), 2), 1);
        assert_eq!(local_height(&f("Z"), &ProjPoint::new(1, 1, 0), 2), Err(Error::OnDivisor));
        assert_eq!(local_height(&f("2*Z"), &ProjPoint::new(1, 1, 1), 2), Err(Error::NotPrimitive));
        assert!(matches!(local_height(&f("Z"), &ProjPoint::new(1, 1, 1), 4), Err(Error::NotPrime(_))));
    }

    #[test]
    fn point_and_divisor_heights() {
        assert_eq!(point_height(&ProjPoint::new(3, 2, 1)), log(3));
        assert!(point_height(&ProjPoint::new(1, 1, 1)).is_zero());
        assert_eq!(point_height(&ProjPoint::new(9, 4, 1)), log(9));
        assert_eq!(divisor_height(&f("Z"), &ProjPoint::new(3, 2, 1)).unwrap(), log(3));
        assert_eq!(
            divisor_height(&f("X*Y*Z"), &ProjPoint::new(9, 4, 1)).unwrap(),
            log(9).scaled(&3.into())
        );
        assert_eq!(divisor_height(&f("2*X+Z"), &ProjPoint::new(1, 1, 1)).unwrap(), log(2));
    }

    #[test]
    fn s_integrality() {
        let s = PlaceSet::new([2, 3]).unwrap();
        assert!(is_s_integral(&div("X*Y*Z"), &ProjPoint::new(9, 4, 1), &s).unwrap());
        assert!(is_s_integral(&div("Z"), &ProjPoint::new(3, 2, 1), &PlaceSet::archimedean()).unwrap());
        assert!(!is_s_integral(&div("X*Y*Z"), &ProjPoint::new(5, 2, 1), &s).unwrap());
        assert_eq!(is_s_integral(&div("X*Y*Z"), &ProjPoint::new(0, 2, 1), &s), Err(Error::OnDivisor));
    }

    #[test]
    fn sum_identity_on_example() {
        let form = f("X*Y*Z");
        let p = ProjPoint::new(9, 4, 1);
        let lhs = finite_local_sum(&form, &p)
            .unwrap()
            .plus(&archimedean_local_height(&form, &p).unwrap());
        assert_eq!(lhs, divisor_height(&form, &p).unwrap());
    }

    #[test]
    fn log_combination_normalizes() {
        // log 36 = 2 log 2 + 2 log 3 and log 8 = 3 log 2
        let a = log(36);
        let b = log(2).scaled(&2.into()).plus(&log(3).scaled(&2.into()));
        assert_eq!(a, b);
        assert_eq!(log(8), log(2).scaled(&3.into()));
        assert_ne!(log(6), log(2).plus(&log(5)));
        assert!((log(36).approx() - 36f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn report_json() {
        let s = PlaceSet::new([2, 3]).unwrap();
        let r = height_report(&div("X*Y*Z"), &ProjPoint::new(9, 4, 1), &s).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["local"][0]["p"], "2");
        assert_eq!(v["local"][0]["e"], 2);
        assert_eq!(v["local"][1]["p"], "3");
        assert_eq!(v["s_integral"], true);
        assert_eq!(v["h_point"]["max_abs_coord"], "9");
        assert_eq!(v["h_divisor"]["degree"], 3);
        assert_eq!(v["h_divisor"]["coeff_max"], "1");
    }
}
