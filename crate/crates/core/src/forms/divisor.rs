use std::fmt;

use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use super::gcd::{squarefree_decomposition, squarefree_part};
use super::Form;
use crate::arith::Rat;
use crate::error::{Error, Result};

/// A multiplicity that may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtMult {
    Finite(u64),
    Infinity,
}

impl ExtMult {
    /// 1 − 1/m, with ∞ contributing 1.
    pub fn weight(&self) -> Rat {
        match self {
            ExtMult::Finite(m) => Rat::one() - Rat::new(1.into(), (*m).into()),
            ExtMult::Infinity => Rat::one(),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtMult::Infinity)
    }
}

impl fmt::Display for ExtMult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtMult::Finite(m) => write!(f, "{m}"),
            ExtMult::Infinity => write!(f, "INFINITY"),
        }
    }
}

impl Serialize for ExtMult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtMult::Finite(m) => s.serialize_u64(*m),
            ExtMult::Infinity => s.serialize_str("INFINITY"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtMult {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            N(u64),
            S(String),
        }
        match Repr::deserialize(d)? {
            Repr::N(0) => Err(de::Error::custom("multiplicity must be positive")),
            Repr::N(m) => Ok(ExtMult::Finite(m)),
            Repr::S(s) if s == "INFINITY" => Ok(ExtMult::Infinity),
            Repr::S(s) => Err(de::Error::custom(format!("bad multiplicity {s:?}"))),
        }
    }
}

/// One component of a [`FactoredDivisor`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub form: Form,
    pub mult: u32,
    /// Caller's assertion that the form is irreducible over Q; never checked.
    pub irreducible_hint: bool,
    /// Set when the form passed the square-free test.
    pub reduced_verified: bool,
}

/// An effective divisor given as factors with multiplicities. Factors are
/// stored as primitive integer forms and are pairwise non-proportional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactoredDivisor {
    factors: Vec<Factor>,
}

fn is_squarefree(f: &Form) -> bool {
    squarefree_part(f).degree() == f.degree()
}

impl FactoredDivisor {
    /// Builds a divisor from (form, multiplicity, irreducible_hint) triples,
    /// running the square-free test on each factor.
    pub fn new<I: IntoIterator<Item = (Form, u32, bool)>>(parts: I) -> Result<Self> {
        let mut factors: Vec<Factor> = Vec::new();
        for (form, mult, hint) in parts {
            if form.is_zero() || form.degree() == 0 {
                return Err(Error::InvalidDivisor("factor of degree 0".into()));
            }
            if mult == 0 {
                return Err(Error::InvalidDivisor("multiplicity must be positive".into()));
            }
            let form = form.primitive_integer();
            if factors.iter().any(|f| f.form == form) {
                return Err(Error::InvalidDivisor(format!("repeated factor {form}")));
            }
            let reduced_verified = is_squarefree(&form);
            factors.push(Factor { form, mult, irreducible_hint: hint, reduced_verified });
        }
        if factors.is_empty() {
            return Err(Error::InvalidDivisor("no factors".into()));
        }
        Ok(FactoredDivisor { factors })
    }

    /// Divisor of a single form, split by square-free decomposition. The
    /// pieces are square-free but not necessarily irreducible.
    pub fn from_form(f: &Form) -> Result<Self> {
        let parts = squarefree_decomposition(f)?;
        if parts.is_empty() {
            return Err(Error::InvalidDivisor("constant form".into()));
        }
        Ok(FactoredDivisor {
            factors: parts
                .into_iter()
                .map(|(form, mult)| Factor { form, mult, irreducible_hint: false, reduced_verified: true })
                .collect(),
        })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Degree counted with multiplicity.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.form.degree() * f.mult).sum()
    }

    /// Product of the factors with multiplicity.
    pub fn form(&self) -> Form {
        self.factors
            .iter()
            .fold(Form::one(), |acc, f| &acc * &f.form.pow(f.mult))
    }

    /// Product of the factors, each to the first power: the equation of Supp D.
    pub fn support_form(&self) -> Form {
        self.factors.iter().fold(Form::one(), |acc, f| &acc * &f.form)
    }

    /// True when every factor carries an irreducibility hint.
    pub fn fully_hinted(&self) -> bool {
        self.factors.iter().all(|f| f.irreducible_hint)
    }

    /// True when g (nonconstant) divides the support equation.
    pub fn support_contains(&self, g: &Form) -> bool {
        if g.degree() == 0 {
            return false;
        }
        self.support_form().exact_divide(g).is_ok()
    }

    /// True when the point lies on Supp D.
    pub fn contains_point(&self, p: &crate::point::ProjPoint) -> bool {
        self.factors.iter().any(|f| f.form.evaluate(p).is_zero())
    }
}

/// Accepts `{"factors": [...]}`, a bare factor list, or a single form (split
/// by square-free decomposition).
impl<'de> Deserialize<'de> for FactoredDivisor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct FactorIn {
            form: Form,
            #[serde(default = "one")]
            mult: u32,
            #[serde(default)]
            irreducible_hint: bool,
        }
        fn one() -> u32 {
            1
        }
        #[derive(Deserialize)]
        struct DivisorIn {
            factors: Vec<FactorIn>,
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Factored(DivisorIn),
            List(Vec<FactorIn>),
            Plain(Form),
        }
        let list = |factors: Vec<FactorIn>| {
            FactoredDivisor::new(
                factors
                    .into_iter()
                    .map(|f| (f.form, f.mult, f.irreducible_hint)),
            )
        };
        match Repr::deserialize(d)? {
            Repr::Factored(div) => list(div.factors),
            Repr::List(factors) => list(factors),
            Repr::Plain(form) => FactoredDivisor::from_form(&form),
        }
        .map_err(de::Error::custom)
    }
}

impl fmt::Display for FactoredDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|fac| {
                if fac.mult == 1 {
                    format!("({})", fac.form)
                } else {
                    format!("({})^{}", fac.form, fac.mult)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}
