use num_traits::One;
use serde::Serialize;

use super::{violation, FamilyInstance};
use crate::arith::{rational_root, Rat};
use crate::error::{Error, Result};
use crate::forms::expr::parse_form;
use crate::forms::{FactoredDivisor, Form};
use crate::pencils::{Param, Pencil, SpecialMember};
use crate::point::ProjPoint;

/// The quintic (YZ − X²)(YZ² − X²Z − 2XY²) + Y⁵ with the pencil ⟨F², G⁵⟩,
/// G = YZ − X².
pub fn yoshihara_quintic() -> Result<FamilyInstance> {
    let f = parse_form("(Y*Z - X^2)*(Y*Z^2 - X^2*Z - 2*X*Y^2) + Y^5")?;
    let g = parse_form("Y*Z - X^2")?;
    let (f2, g5) = (f.pow(2), g.pow(5));
    let members = vec![
        SpecialMember { st: Param::new(1, 0)?, factors: FactoredDivisor::new([(f.clone(), 2, true)])? },
        SpecialMember { st: Param::new(0, 1)?, factors: FactoredDivisor::new([(g, 5, true)])? },
        SpecialMember { st: Param::new(1, 1)?, factors: FactoredDivisor::new([(&f2 + &g5, 1, false)])? },
    ];
    let pencil = Pencil::new(f2, g5, members, vec![ProjPoint::new(0, 0, 1)])?;
    let f = f.primitive_integer();
    Ok(FamilyInstance {
        divisor: FactoredDivisor::new([(f.clone(), 1, true)])?,
        curve: f,
        pencil,
    })
}

/// Output of [`attempt_companion_cubic`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompanionCubic {
    /// F = F₅(X, Y) + X·Y·L₃²·Z.
    pub quintic: Form,
    /// G = (F − (aX + bY)⁵) / (XY).
    pub cubic: Form,
    #[serde(with = "crate::serde_rat")]
    pub a: Rat,
    #[serde(with = "crate::serde_rat")]
    pub b: Rat,
}

fn free_of_z(f: &Form) -> bool {
    f.terms().all(|(e, _)| e[2] == 0)
}

/// Builds the quintic with singular point [0:0:1] from a binary quintic
/// F₅ and a linear form L₃, and its companion cubic, provided the X⁵ and Y⁵
/// coefficients of F₅ are fifth powers of rationals.
pub fn attempt_companion_cubic(f5: &Form, l3: &Form) -> Result<CompanionCubic> {
    if f5.degree() != 5 || f5.is_zero() || !free_of_z(f5) {
        return violation("F5 must be a nonzero quintic in X and Y");
    }
    if !l3.is_linear() || !free_of_z(l3) {
        return violation("L3 must be a linear form in X and Y");
    }
    if l3.is_proportional(&Form::x()) || l3.is_proportional(&Form::y()) {
        return violation("L3 must differ from the lines X and Y");
    }
    let xy = Form::monomial(Rat::one(), [1, 1, 0]);
    let quintic = &f5.clone() + &(&(&xy * &l3.pow(2)) * &Form::z());
    let root = |c: Rat| rational_root(&c, 5).ok_or_else(|| Error::IrrationalRoot(c.to_string()));
    let a = root(f5.coeff([5, 0, 0]))?;
    let b = root(f5.coeff([0, 5, 0]))?;
    let lin = &Form::x().scale(&a) + &Form::y().scale(&b);
    let cubic = (&quintic - &lin.pow(5)).exact_divide(&xy)?;
    Ok(CompanionCubic { quintic, cubic, a, b })
}
