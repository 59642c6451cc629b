use num_traits::Zero;
use plane_integral::arith::{rat, rat_frac};
use plane_integral::families::{
    attempt_companion_cubic, j_form, yoshihara_quintic, FamilyInstance, FamilySpec,
};
use plane_integral::forms::expr::parse_form;
use plane_integral::pencils::{weight_report, Verdict};
use plane_integral::{Error, ExtMult, FactoredDivisor, Form, ProjPoint};

fn f(s: &str) -> Form {
    parse_form(s).unwrap().primitive_integer()
}

fn spec(json: &str) -> FamilySpec {
    serde_json::from_str(json).unwrap()
}

fn generate(json: &str) -> FamilyInstance {
    spec(json).generate().unwrap()
}

fn weights(inst: &FamilyInstance) -> (plane_integral::Rat, plane_integral::Rat, Verdict) {
    let r = weight_report(&inst.pencil, &inst.divisor).unwrap();
    (r.campana_weight, r.gcd_weight, r.verdict)
}

#[test]
fn bicuspidal_goldens() {
    let c1 = generate(r#"{"family":"TONO_BICUSP_1","alpha0":2,"alpha1":3,"a":"5"}"#);
    assert_eq!(c1.curve, f("Y^3 + X*(Z+5*Y)^2"));
    assert_eq!(c1.curve.degree(), 3);
    assert!(c1.curve.is_singular_at(&ProjPoint::new(1, 0, 0)).unwrap());

    let c2 = generate(r#"{"family":"TONO_BICUSP_2","alpha0":2,"alpha1":3,"avec":["0","1"]}"#);
    assert_eq!(c2.curve, f("(X*Z+Y^2)^2 + X*Y^3"));

    let c3 = generate(r#"{"family":"TONO_BICUSP_3","alpha0":2,"alpha1":5,"avec":["0","1"]}"#);
    assert_eq!(c3.curve, f("Y^5 + X*(X*Z+Y^2)^2"));
    assert!(c3.curve.is_singular_at(&ProjPoint::new(0, 0, 1)).unwrap());
}

#[test]
fn bicuspidal_with_one_transform() {
    // D_1 = J_b^2 + X Y^3 (n = 1), pulled back through (X^2, XZ + a1 XY + a2 Y^2, XY).
    let inst = generate(
        r#"{"family":"TONO_BICUSP_2","alpha0":2,"alpha1":3,"avec":["1","2"],
            "transforms":[{"m":1,"avec":["3","5"]}]}"#,
    );
    let j = "(X*Z + 3*X*Y + 5*Y^2)";
    let expected = format!("(X^3*Y + X^2*{j} + 2*{j}^2)^2 + X^2*{j}^3");
    assert_eq!(inst.curve, f(&expected));
    assert_eq!(inst.curve.degree(), 8);
    // every member factorization multiplies out (checked by the pencil constructor)
    assert_eq!(inst.pencil.special_members().len(), 3);
}

#[test]
fn bicuspidal_parameter_checks() {
    let bad = [
        r#"{"family":"TONO_BICUSP_1","alpha0":2,"alpha1":4,"a":"1"}"#,
        r#"{"family":"TONO_BICUSP_1","alpha0":1,"alpha1":4,"a":"1"}"#,
        r#"{"family":"TONO_BICUSP_1","alpha0":3,"alpha1":2,"a":"1"}"#,
        r#"{"family":"TONO_BICUSP_2","alpha0":2,"alpha1":5,"avec":["0","1"]}"#,
        r#"{"family":"TONO_BICUSP_3","alpha0":2,"alpha1":3,"avec":["0","1"]}"#,
        r#"{"family":"TONO_BICUSP_3","alpha0":2,"alpha1":5,"avec":["1","0"]}"#,
        r#"{"family":"TONO_UNICUSP_I","n":1,"s":2,"a":["1"]}"#,
        r#"{"family":"TONO_UNICUSP_I","n":2,"s":2,"a":["0"]}"#,
        r#"{"family":"TONO_UNICUSP_II","n":1}"#,
        r#"{"family":"AOKI_I","a":2,"b":4}"#,
        r#"{"family":"AOKI_II","a":1,"b":2,"l":1,"p":["0"]}"#,
        r#"{"family":"AOKI_II","a":1,"b":2,"l":1,"p":["1","1"]}"#,
        r#"{"family":"AOKI_III","a0":["0","0","1"],"a1":["1"]}"#,
        r#"{"family":"AOKI_III","a0":["-1","0","1"],"a1":["1","1"]}"#,
        r#"{"family":"AOKI_IV","a":3,"b":9}"#,
    ];
    for s in bad {
        assert!(matches!(spec(s).generate(), Err(Error::ParameterViolation(_))), "{s}");
    }
    assert_eq!(
        spec(r#"{"family":"TONO_BICUSP_2","alpha0":2,"alpha1":3,"avec":["1"]}"#).generate().unwrap_err(),
        Error::EmptyVector
    );
}

#[test]
fn unicuspidal_first_case() {
    let inst = generate(r#"{"family":"TONO_UNICUSP_I","n":2,"s":2,"a":["1"]}"#);
    let full = f("((X^2*Z+Y^3)*Y + X^4)^3 - (X^2*Z+Y^3)^4");
    assert_eq!(inst.curve.degree(), 10);
    let x2 = f("X^2");
    assert!((&inst.curve * &x2).is_proportional(&full));
    let (c, g, v) = weights(&inst);
    assert_eq!(g, rat_frac(23, 12));
    assert_eq!(c, rat_frac(23, 12));
    assert_eq!(v, Verdict::NoVerdict);

    let inst = generate(r#"{"family":"TONO_UNICUSP_I","n":2,"s":3,"a":["1","1"]}"#);
    let r = weight_report(&inst.pencil, &inst.divisor).unwrap();
    let mults: Vec<ExtMult> = r.per_member.iter().map(|m| m.gcd).collect();
    assert_eq!(mults, vec![ExtMult::Finite(3), ExtMult::Finite(7), ExtMult::Finite(2)]);
    assert_eq!(r.gcd_weight, rat_frac(85, 42));
    assert_eq!(r.verdict, Verdict::DegenerateUnconditional);
}

#[test]
fn unicuspidal_second_case() {
    let inst = generate(r#"{"family":"TONO_UNICUSP_II","n":2}"#);
    assert_eq!(inst.curve.degree(), 45 - 4);
    let r = weight_report(&inst.pencil, &inst.divisor).unwrap();
    let mults: Vec<ExtMult> = r.per_member.iter().map(|m| m.gcd).collect();
    assert_eq!(mults, vec![ExtMult::Finite(9), ExtMult::Finite(5), ExtMult::Finite(2)]);
    assert_eq!(r.gcd_weight, rat_frac(8, 9) + rat_frac(4, 5) + rat_frac(1, 2));
    assert_eq!(r.verdict, Verdict::DegenerateUnconditional);
}

#[test]
fn aoki_goldens() {
    let i = generate(r#"{"family":"AOKI_I","a":2,"b":3}"#);
    assert_eq!(i.curve, f("X^2*Y^3 + Z^5"));
    assert_eq!(i.pencil.f(), &f("X^2*Y^3"));
    assert_eq!(i.pencil.g(), &f("Z^5"));
    assert!(i.divisor.support_contains(&f("Z")));
    let (c, g, v) = weights(&i);
    assert_eq!((c, g, v), (rat_frac(5, 2), rat(2), Verdict::DegenerateUnderAbc));

    let iv = generate(r#"{"family":"AOKI_IV","a":2,"b":3}"#);
    assert_eq!(iv.curve, f("X^2*Z - Y^3"));
    assert_eq!(iv.pencil.f(), &f("X^2*Z"));
    let (_, g, v) = weights(&iv);
    assert_eq!(g, rat_frac(13, 6));
    assert_eq!(v, Verdict::DegenerateEffective);

    let iv2 = generate(r#"{"family":"AOKI_IV","a":3,"b":2}"#);
    assert_eq!(iv2.curve, f("X^3 - Y^2*Z"));
    assert_eq!(weights(&iv2).1, rat_frac(13, 6));

    let ii = generate(r#"{"family":"AOKI_II","a":1,"b":2,"l":1,"p":["1"]}"#);
    assert_eq!(ii.curve, f("X*(X*Y + Z^2)^2 + Z^5"));
    assert_eq!(ii.divisor.factors().len(), 2);

    let iii = generate(r#"{"family":"AOKI_III","a0":["-1","0","1"],"a1":["1"]}"#);
    assert_eq!(iii.curve, f("(X^2 - Z^2)*Y + Z^3"));
    assert_eq!(weights(&iii).2, Verdict::NoVerdict);
}

#[test]
fn yoshihara() {
    let inst = yoshihara_quintic().unwrap();
    let p = ProjPoint::new(0, 0, 1);
    assert!(inst.curve.evaluate(&p).is_zero());
    assert!(inst.curve.is_singular_at(&p).unwrap());
    let r = weight_report(&inst.pencil, &inst.divisor).unwrap();
    assert_eq!(r.per_member[0].gcd, ExtMult::Infinity);
    assert_eq!(r.per_member[1].gcd, ExtMult::Finite(5));

    // relative to the member F^2 + G^5 the F^2 fiber has gcd multiplicity 2
    let other = FactoredDivisor::new([(inst.pencil.member(&inst.pencil.special_members()[2].st), 1, false)]).unwrap();
    let r = weight_report(&inst.pencil, &other).unwrap();
    assert_eq!(r.per_member[0].gcd, ExtMult::Finite(2));

    let g = parse_form("Y*Z - X^2").unwrap();
    let d3 = FactoredDivisor::new([
        (inst.curve.clone(), 1, true),
        (g.clone(), 1, true),
        (&inst.curve.pow(2) + &g.pow(5), 1, false),
    ])
    .unwrap();
    let r = weight_report(&inst.pencil, &d3).unwrap();
    assert_eq!(r.gcd_weight, rat(3));
    assert_eq!(r.verdict, Verdict::DegenerateEffective);
}

#[test]
fn companion_cubic() {
    let f5 = f("X^5 + X^2*Y^3 + 32*Y^5");
    let c = attempt_companion_cubic(&f5, &f("X + Y")).unwrap();
    assert_eq!((c.a.clone(), c.b.clone()), (rat(1), rat(2)));
    assert_eq!(c.cubic.degree(), 3);
    let lin = f("X + 2*Y");
    let xy = f("X*Y");
    assert_eq!(&lin.pow(5) + &(&xy * &c.cubic), c.quintic);
    let err = attempt_companion_cubic(&f("2*X^5 + Y^5"), &f("X + Y"));
    assert!(matches!(err, Err(Error::IrrationalRoot(_))));
}

#[test]
fn j_form_of_pairs() {
    assert_eq!(j_form(&[rat(0), rat(1)]).unwrap(), f("X*Z + Y^2"));
}
