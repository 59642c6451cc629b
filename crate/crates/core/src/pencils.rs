//! Pencils of plane curves and the Campana / gcd weights of a divisor
//! relative to a pencil.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::forms::{ExtMult, FactoredDivisor, Form};
use crate::point::ProjPoint;
use crate::serde_rat::RatRepr;

/// A point [s:t] of P^1 in coprime integers, first nonzero entry positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Param(pub BigInt, pub BigInt);

impl Param {
    pub fn new(s: i64, t: i64) -> Result<Param> {
        Param::from_rats(&Rat::from_integer(s.into()), &Rat::from_integer(t.into()))
    }

    pub fn from_rats(s: &Rat, t: &Rat) -> Result<Param> {
        if s.is_zero() && t.is_zero() {
            return Err(Error::ZeroParameter);
        }
        let l = s.denom().lcm(t.denom());
        let a = (s * Rat::from_integer(l.clone())).to_integer();
        let b = (t * Rat::from_integer(l)).to_integer();
        let g = a.gcd(&b);
        let (mut a, mut b) = (a / &g, b / &g);
        if a.is_negative() || (a.is_zero() && b.is_negative()) {
            a = -a;
            b = -b;
        }
        Ok(Param(a, b))
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.0, self.1)
    }
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.0.to_string(), self.1.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Param {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [s, t]: [RatRepr; 2] = Deserialize::deserialize(d)?;
        let s = s.into_rat().map_err(de::Error::custom)?;
        let t = t.into_rat().map_err(de::Error::custom)?;
        Param::from_rats(&s, &t).map_err(de::Error::custom)
    }
}

/// A member of the pencil with its caller-supplied factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialMember {
    pub st: Param,
    pub factors: FactoredDivisor,
}

/// The pencil spanned by F and G, with its special members and known base
/// points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pencil {
    f: Form,
    g: Form,
    special_members: Vec<SpecialMember>,
    base_witnesses: Vec<ProjPoint>,
}

fn member_of(f: &Form, g: &Form, st: &Param) -> Form {
    let s = Rat::from_integer(st.0.clone());
    let t = Rat::from_integer(st.1.clone());
    (&f.scale(&s) + &g.scale(&t)).primitive_integer()
}

impl Pencil {
    /// Validates the generators, every special member factorization and
    /// every base point witness.
    pub fn new(
        f: Form,
        g: Form,
        special_members: Vec<SpecialMember>,
        base_witnesses: Vec<ProjPoint>,
    ) -> Result<Pencil> {
        if f.is_zero() || g.is_zero() {
            return Err(Error::InvalidPencil("generator is zero".into()));
        }
        if f.degree() != g.degree() {
            return Err(Error::DegreeMismatch(vec![f.degree(), g.degree()]));
        }
        if f.degree() == 0 {
            return Err(Error::InvalidPencil("generators are constants".into()));
        }
        if f.is_proportional(&g) {
            return Err(Error::InvalidPencil("generators are proportional".into()));
        }
        for (i, m) in special_members.iter().enumerate() {
            if special_members[..i].iter().any(|o| o.st == m.st) {
                return Err(Error::InvalidPencil(format!("member {} listed twice", m.st)));
            }
            verify_member_factorization(&f, &g, m)?;
        }
        for w in &base_witnesses {
            if !f.evaluate(w).is_zero() || !g.evaluate(w).is_zero() {
                return Err(Error::InvalidPencil(format!("{w} is not a base point")));
            }
        }
        Ok(Pencil { f, g, special_members, base_witnesses })
    }

    /// Convenience constructor taking (s, t, factors) triples.
    pub fn with_members(
        f: Form,
        g: Form,
        members: Vec<((i64, i64), FactoredDivisor)>,
        base_witnesses: Vec<ProjPoint>,
    ) -> Result<Pencil> {
        let members = members
            .into_iter()
            .map(|((s, t), factors)| Ok(SpecialMember { st: Param::new(s, t)?, factors }))
            .collect::<Result<Vec<_>>>()?;
        Pencil::new(f, g, members, base_witnesses)
    }

    pub fn f(&self) -> &Form {
        &self.f
    }

    pub fn g(&self) -> &Form {
        &self.g
    }

    pub fn special_members(&self) -> &[SpecialMember] {
        &self.special_members
    }

    pub fn base_witnesses(&self) -> &[ProjPoint] {
        &self.base_witnesses
    }

    /// s·F + t·G as a primitive integer form.
    pub fn member(&self, st: &Param) -> Form {
        member_of(&self.f, &self.g, st)
    }

    /// The pencil parameter of the member through P, or None when P is a
    /// base point: [s:t] = [G(P) : −F(P)].
    pub fn member_through(&self, p: &ProjPoint) -> Option<Param> {
        let fv = self.f.evaluate(p);
        let gv = self.g.evaluate(p);
        Param::from_rats(&gv, &-fv).ok()
    }
}

fn verify_member_factorization(f: &Form, g: &Form, m: &SpecialMember) -> Result<()> {
    let target = member_of(f, g, &m.st);
    if m.factors.degree() != target.degree() {
        return Err(Error::FactorizationMismatch(format!(
            "member {} has degree {} but the factors have degree {}",
            m.st,
            target.degree(),
            m.factors.degree()
        )));
    }
    if !m.factors.form().is_proportional(&target) {
        return Err(Error::FactorizationMismatch(format!(
            "factors do not multiply out to member {}",
            m.st
        )));
    }
    Ok(())
}

/// Checks a factorization against the member s·F + t·G of the pencil.
pub fn check_member_factorization(pencil: &Pencil, m: &SpecialMember) -> Result<()> {
    verify_member_factorization(&pencil.f, &pencil.g, m)
}

/// Campana (minimum) and gcd multiplicities of a member, ignoring factors
/// that are components of D. Both are INFINITY when every factor lies in D.
pub fn member_multiplicities(member: &FactoredDivisor, d: &FactoredDivisor) -> (ExtMult, ExtMult) {
    let support = d.support_form();
    let mults: Vec<u64> = member
        .factors()
        .iter()
        .filter(|fac| support.exact_divide(&fac.form).is_err())
        .map(|fac| fac.mult as u64)
        .collect();
    if mults.is_empty() {
        return (ExtMult::Infinity, ExtMult::Infinity);
    }
    let min = *mults.iter().min().unwrap();
    let gcd = mults.iter().fold(0u64, |a, &b| a.gcd(&b));
    (ExtMult::Finite(min), ExtMult::Finite(gcd))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    DegenerateUnconditional,
    DegenerateEffective,
    DegenerateUnderAbc,
    NoVerdict,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::DegenerateUnconditional => "DEGENERATE_UNCONDITIONAL",
            Verdict::DegenerateEffective => "DEGENERATE_EFFECTIVE",
            Verdict::DegenerateUnderAbc => "DEGENERATE_UNDER_ABC",
            Verdict::NoVerdict => "NO_VERDICT",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MemberWeight {
    pub st: Param,
    pub campana: ExtMult,
    pub gcd: ExtMult,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightReport {
    pub campana_weight: Rat,
    pub gcd_weight: Rat,
    pub per_member: Vec<MemberWeight>,
    pub verdict: Verdict,
}

impl Serialize for WeightReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WeightReport", 6)?;
        st.serialize_field("campana_weight", &self.campana_weight.to_string())?;
        st.serialize_field("gcd_weight", &self.gcd_weight.to_string())?;
        st.serialize_field("per_member", &self.per_member)?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("base_point_check", "witness-level")?;
        st.serialize_field("special_members_complete", "assumed")?;
        st.end()
    }
}

fn two() -> Rat {
    Rat::from_integer(BigInt::from(2))
}

/// Weights of (D, Λ) summed over the listed special members, and the
/// resulting density verdict.
pub fn weight_report(pencil: &Pencil, d: &FactoredDivisor) -> Result<WeightReport> {
    for w in &pencil.base_witnesses {
        if !d.contains_point(w) {
            return Err(Error::BaseWitnessOffDivisor(w.to_string()));
        }
    }
    let mut per_member = Vec::new();
    let mut campana_weight = Rat::zero();
    let mut gcd_weight = Rat::zero();
    for m in &pencil.special_members {
        verify_member_factorization(&pencil.f, &pencil.g, m)?;
        let (campana, gcd) = member_multiplicities(&m.factors, d);
        campana_weight += campana.weight();
        gcd_weight += gcd.weight();
        per_member.push(MemberWeight { st: m.st.clone(), campana, gcd });
    }
    let verdict = if gcd_weight > two() {
        if per_member.iter().any(|m| m.gcd.is_infinite()) {
            Verdict::DegenerateEffective
        } else {
            Verdict::DegenerateUnconditional
        }
    } else if campana_weight > two() {
        Verdict::DegenerateUnderAbc
    } else {
        Verdict::NoVerdict
    };
    Ok(WeightReport { campana_weight, gcd_weight, per_member, verdict })
}

#[derive(Serialize)]
struct MemberOut<'a> {
    st: &'a Param,
    factors: &'a [crate::forms::Factor],
}

impl Serialize for Pencil {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let members: Vec<MemberOut> = self
            .special_members
            .iter()
            .map(|m| MemberOut { st: &m.st, factors: m.factors.factors() })
            .collect();
        let mut st = s.serialize_struct("Pencil", 4)?;
        st.serialize_field("F", &self.f)?;
        st.serialize_field("G", &self.g)?;
        st.serialize_field("special_members", &members)?;
        st.serialize_field("base_witnesses", &self.base_witnesses)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Pencil {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct MemberIn {
            st: Param,
            factors: FactoredDivisor,
        }
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct PencilIn {
            #[serde(rename = "F")]
            f: Form,
            #[serde(rename = "G")]
            g: Form,
            #[serde(default)]
            special_members: Vec<MemberIn>,
            #[serde(default)]
            base_witnesses: Vec<ProjPoint>,
        }
        let p = PencilIn::deserialize(d)?;
        Pencil::new(
            p.f,
            p.g,
            p.special_members
                .into_iter()
                .map(|m| SpecialMember { st: m.st, factors: m.factors })
                .collect(),
            p.base_witnesses,
        )
        .map_err(de::Error::custom)
    }
}
