//! Explicit curve families with their canonical pencils: bicuspidal and
//! unicuspidal curves, line-plus-curve divisors and a quintic with a
//! singular point of multiplicity three.

mod aoki;
mod quintic;
mod tono;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::forms::{FactoredDivisor, Form, X, Y};
use crate::pencils::Pencil;

pub use aoki::aoki_curve;
pub use quintic::{attempt_companion_cubic, yoshihara_quintic, CompanionCubic};
pub use tono::{tono_bicuspidal, tono_unicuspidal};

/// Largest degree a family instance may reach.
pub const MAX_FAMILY_DEGREE: u64 = 512;

/// X^n Z + Σ_{j=1}^{n+1} v_j X^{n+1-j} Y^j for v = (v_1, …, v_{n+1}).
pub fn j_form(v: &[Rat]) -> Result<Form> {
    if v.len() < 2 {
        return Err(Error::EmptyVector);
    }
    let n = (v.len() - 1) as u32;
    let mut terms = vec![([n, 0, 1], Rat::one())];
    for (j, c) in v.iter().enumerate() {
        let j = j as u32 + 1;
        terms.push(([n + 1 - j, j, 0], c.clone()));
    }
    Form::from_terms(n + 1, terms)
}

/// The De Jonquières map (X, Y, Z) ↦ (X^{m+1}, J_a, X^m Y) with
/// a = (a_1, …, a_{m+1}).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeJonquieres {
    #[serde(default, skip_serializing)]
    m: Option<u32>,
    #[serde(with = "crate::serde_rat::vec")]
    pub avec: Vec<Rat>,
}

impl DeJonquieres {
    pub fn new(avec: Vec<Rat>) -> Result<Self> {
        let t = DeJonquieres { m: None, avec };
        t.validate()?;
        Ok(t)
    }

    pub fn m(&self) -> u32 {
        (self.avec.len().max(1) - 1) as u32
    }

    pub fn validate(&self) -> Result<()> {
        if self.avec.len() < 2 {
            return Err(Error::ParameterViolation("a De Jonquieres vector needs m >= 1".into()));
        }
        if let Some(m) = self.m {
            if m != self.m() {
                return Err(Error::ParameterViolation(format!(
                    "m = {m} does not match a vector of length {}",
                    self.avec.len()
                )));
            }
        }
        if self.avec.last().unwrap().is_zero() {
            return Err(Error::ParameterViolation("last De Jonquieres coefficient must be nonzero".into()));
        }
        Ok(())
    }

    /// The three component forms.
    pub fn forms(&self) -> Result<[Form; 3]> {
        let m = self.m();
        Ok([
            Form::monomial(Rat::one(), [m + 1, 0, 0]),
            j_form(&self.avec)?,
            Form::monomial(Rat::one(), [m, 1, 0]),
        ])
    }
}

/// Pullback of the curve f = 0 under τ with the exceptional X-component
/// removed: if f = X^k g with X ∤ g, returns X^k times g∘τ stripped of its
/// X-power.
pub fn strict_transform(f: &Form, tau: &DeJonquieres) -> Result<Form> {
    let k = f.var_order(X);
    let g = f.div_monomial([k, 0, 0]);
    let h = g.compose(&tau.forms()?)?;
    let j = h.var_order(X);
    let h = h.div_monomial([j, 0, 0]);
    Ok(&Form::monomial(Rat::one(), [k, 0, 0]) * &h)
}

/// Carries a factored form through f ↦ f∘τ: each factor is replaced by its
/// strict transform and the X-powers it sheds are collected on X.
pub(crate) fn transport_factors(parts: &[(Form, u32, bool)], tau: &DeJonquieres) -> Result<Vec<(Form, u32, bool)>> {
    let phi = tau.forms()?;
    let mut x_mult = 0u32;
    let mut out = Vec::new();
    for (h, e, hint) in parts {
        let c = h.compose(&phi)?;
        let j = c.var_order(X);
        x_mult += j * e;
        let rest = c.div_monomial([j, 0, 0]);
        if rest.degree() > 0 {
            out.push((rest, *e, *hint));
        }
    }
    if x_mult > 0 {
        out.insert(0, (Form::x(), x_mult, true));
    }
    Ok(out)
}

/// Parameters of one family member. Coefficients are rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", deny_unknown_fields)]
pub enum FamilySpec {
    #[serde(rename = "TONO_BICUSP_1")]
    TonoBicusp1 {
        alpha0: u32,
        alpha1: u32,
        #[serde(with = "crate::serde_rat")]
        a: Rat,
        #[serde(default)]
        transforms: Vec<DeJonquieres>,
    },
    #[serde(rename = "TONO_BICUSP_2")]
    TonoBicusp2 {
        alpha0: u32,
        alpha1: u32,
        #[serde(with = "crate::serde_rat::vec")]
        avec: Vec<Rat>,
        #[serde(default)]
        transforms: Vec<DeJonquieres>,
    },
    #[serde(rename = "TONO_BICUSP_3")]
    TonoBicusp3 {
        alpha0: u32,
        alpha1: u32,
        #[serde(with = "crate::serde_rat::vec")]
        avec: Vec<Rat>,
        #[serde(default)]
        transforms: Vec<DeJonquieres>,
    },
    /// `a` lists a_2, …, a_s.
    #[serde(rename = "TONO_UNICUSP_I")]
    TonoUnicuspI {
        n: u32,
        s: u32,
        #[serde(with = "crate::serde_rat::vec")]
        a: Vec<Rat>,
    },
    #[serde(rename = "TONO_UNICUSP_II")]
    TonoUnicuspII { n: u32 },
    /// `a` lists a_1, …, a_s.
    #[serde(rename = "TONO_UNICUSP_III")]
    TonoUnicuspIII {
        n: u32,
        s: u32,
        #[serde(with = "crate::serde_rat::vec")]
        a: Vec<Rat>,
    },
    #[serde(rename = "AOKI_I")]
    AokiI { a: u32, b: u32 },
    /// `p` lists the coefficients of p(x), constant term first.
    #[serde(rename = "AOKI_II")]
    AokiII {
        a: u32,
        b: u32,
        l: u32,
        #[serde(with = "crate::serde_rat::vec")]
        p: Vec<Rat>,
    },
    /// Coefficients of a_0(x) and a_1(x), constant term first.
    #[serde(rename = "AOKI_III")]
    AokiIII {
        #[serde(with = "crate::serde_rat::vec")]
        a0: Vec<Rat>,
        #[serde(with = "crate::serde_rat::vec")]
        a1: Vec<Rat>,
    },
    #[serde(rename = "AOKI_IV")]
    AokiIV { a: u32, b: u32 },
    #[serde(rename = "YOSHIHARA")]
    Yoshihara,
}

/// A generated curve: its equation, the divisor (with the line Z for the
/// line-plus-curve families) and the pencil with its special members.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyInstance {
    pub curve: Form,
    pub divisor: FactoredDivisor,
    pub pencil: Pencil,
}

impl FamilySpec {
    /// Checks every parameter constraint and the degree budget without
    /// building any polynomial.
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::TonoBicusp1 { alpha0, alpha1, transforms, .. } => {
                tono::check_alphas(*alpha0, *alpha1)?;
                tono::check_chain(*alpha1 as u64, transforms)
            }
            FamilySpec::TonoBicusp2 { alpha0, alpha1, avec, transforms } => {
                let d = tono::check_case2(*alpha0, *alpha1, avec)?;
                tono::check_chain(d, transforms)
            }
            FamilySpec::TonoBicusp3 { alpha0, alpha1, avec, transforms } => {
                let d = tono::check_case3(*alpha0, *alpha1, avec)?;
                tono::check_chain(d, transforms)
            }
            FamilySpec::TonoUnicuspI { n, s, a } => tono::check_unicusp_i(*n, *s, a).map(|_| ()),
            FamilySpec::TonoUnicuspII { n } => tono::check_unicusp_ii(*n).map(|_| ()),
            FamilySpec::TonoUnicuspIII { n, s, a } => tono::check_unicusp_iii(*n, *s, a).map(|_| ()),
            FamilySpec::AokiI { a, b } => aoki::check_i(*a, *b),
            FamilySpec::AokiII { a, b, l, p } => aoki::check_ii(*a, *b, *l, p),
            FamilySpec::AokiIII { a0, a1 } => aoki::check_iii(a0, a1).map(|_| ()),
            FamilySpec::AokiIV { a, b } => aoki::check_iv(*a, *b),
            FamilySpec::Yoshihara => Ok(()),
        }
    }

    pub fn generate(&self) -> Result<FamilyInstance> {
        self.validate()?;
        match self {
            FamilySpec::TonoBicusp1 { .. } | FamilySpec::TonoBicusp2 { .. } | FamilySpec::TonoBicusp3 { .. } => {
                tono_bicuspidal(self)
            }
            FamilySpec::TonoUnicuspI { .. } | FamilySpec::TonoUnicuspII { .. } | FamilySpec::TonoUnicuspIII { .. } => {
                tono_unicuspidal(self)
            }
            FamilySpec::AokiI { .. } | FamilySpec::AokiII { .. } | FamilySpec::AokiIII { .. } | FamilySpec::AokiIV { .. } => {
                aoki_curve(self)
            }
            FamilySpec::Yoshihara => yoshihara_quintic(),
        }
    }
}

pub(crate) fn check_degree(d: Option<u64>) -> Result<u64> {
    match d {
        Some(d) if d <= MAX_FAMILY_DEGREE => Ok(d),
        _ => Err(Error::ParameterViolation(format!(
            "curve degree exceeds {MAX_FAMILY_DEGREE}"
        ))),
    }
}

pub(crate) fn violation<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::ParameterViolation(msg.into()))
}

pub(crate) fn y_pow(e: u32) -> Form {
    Form::var(Y).pow(e)
}
