//! Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Time limits are pinned below.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use plane_integral::arith::{rat, rat_frac};
use plane_integral::constructions::{congruence_holds, congruence_point, third_type_point, UnitParam};
use plane_integral::families::{yoshihara_quintic, FamilySpec};
use plane_integral::forms::expr::parse_form;
use plane_integral::heights::{archimedean_local_height, divisor_height, finite_local_sum, LogCombination};
use plane_integral::orbits::{
    height_cap_digits, is_completely_invariant_line_set, scan_orbit_integrality, Integrality, DEFAULT_CAP_DIGITS,
};
use plane_integral::pencils::{weight_report, Param, Pencil, SpecialMember, Verdict};
use plane_integral::search::{enumerate_integral_points, fibers_hit, solve_s_unit_bounded, FiberKey};
use plane_integral::{Endo, ExtMult, FactoredDivisor, Form, PlaceSet, ProjPoint, Rat};

const WEIGHT_LIMIT: Duration = Duration::from_secs(1);
const CONSTRUCTION_LIMIT: Duration = Duration::from_secs(10);
const ORBIT_LIMIT: Duration = Duration::from_secs(1);
const ENUMERATION_LIMIT: Duration = Duration::from_secs(60);
const CONSTRUCTION_CASES: u32 = 150;
const HEIGHT_CASES: u32 = 1000;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn f(s: &str) -> Form {
    parse_form(s).unwrap()
}

fn places(ps: &[u64]) -> PlaceSet {
    PlaceSet::new(ps.iter().copied()).unwrap()
}

fn divisor(parts: &[(&str, u32)]) -> FactoredDivisor {
    FactoredDivisor::new(parts.iter().map(|(s, m)| (f(s), *m, true))).unwrap()
}

fn member(s: i64, t: i64, parts: &[(&str, u32)]) -> SpecialMember {
    SpecialMember { st: Param::new(s, t).unwrap(), factors: divisor(parts) }
}

fn timed<T>(limit: Duration, what: &str, run: impl FnOnce() -> T) -> Result<T, String> {
    let start = Instant::now();
    let out = run();
    let spent = start.elapsed();
    ensure!(spent <= limit, "{what} took {spent:?}, limit {limit:?}");
    Ok(out)
}

fn cusp_pencil() -> Pencil {
    Pencil::new(
        f("Y^2*Z"),
        f("X^3"),
        vec![member(1, 0, &[("Y", 2), ("Z", 1)]), member(0, 1, &[("X", 3)]), member(1, -1, &[("Y^2*Z - X^3", 1)])],
        vec![ProjPoint::new(0, 0, 1), ProjPoint::new(0, 1, 0)],
    )
    .unwrap()
}

fn weight_goldens() -> Outcome {
    let r = timed(WEIGHT_LIMIT, "cuspidal cubic", || {
        weight_report(&cusp_pencil(), &divisor(&[("Z", 1), ("Y^2*Z - X^3", 1)]))
    })?
    .map_err(|e| e.to_string())?;
    ensure!(r.gcd_weight == rat_frac(13, 6), "cuspidal cubic gcd weight {}", r.gcd_weight);
    ensure!(r.verdict == Verdict::DegenerateEffective, "cuspidal cubic verdict {:?}", r.verdict);

    let r = timed(WEIGHT_LIMIT, "powerful fiber", || {
        let p = Pencil::new(
            f("Y^2*Z^3"),
            f("X^5"),
            vec![member(1, 0, &[("Y", 2), ("Z", 3)]), member(0, 1, &[("X", 5)]), member(1, -1, &[("Y^2*Z^3 - X^5", 1)])],
            vec![ProjPoint::new(0, 0, 1), ProjPoint::new(0, 1, 0)],
        )
        .unwrap();
        weight_report(&p, &divisor(&[("Y^2*Z^3 - X^5", 1)]))
    })?
    .map_err(|e| e.to_string())?;
    ensure!(r.campana_weight == rat_frac(23, 10), "campana weight {}", r.campana_weight);
    ensure!(r.gcd_weight == rat_frac(9, 5), "gcd weight {}", r.gcd_weight);
    ensure!(r.verdict == Verdict::DegenerateUnderAbc, "verdict {:?}", r.verdict);

    for (json, check) in [
        (r#"{"family":"TONO_UNICUSP_I","n":2,"s":2,"a":["1"]}"#, 0),
        (r#"{"family":"TONO_UNICUSP_I","n":2,"s":3,"a":["1","1"]}"#, 1),
    ] {
        let r = timed(WEIGHT_LIMIT, json, || {
            let inst = serde_json::from_str::<FamilySpec>(json).unwrap().generate().unwrap();
            weight_report(&inst.pencil, &inst.divisor)
        })?
        .map_err(|e| e.to_string())?;
        if check == 0 {
            ensure!(r.gcd_weight == rat_frac(23, 12), "unicuspidal n=s=2 weight {}", r.gcd_weight);
        } else {
            ensure!(r.gcd_weight >= rat_frac(85, 42), "unicuspidal n=2, s=3 weight {}", r.gcd_weight);
        }
    }

    let r = timed(WEIGHT_LIMIT, "quintic", || {
        let inst = yoshihara_quintic().unwrap();
        let g = f("Y*Z - X^2");
        let d = FactoredDivisor::new([
            (inst.curve.clone(), 1, true),
            (g.clone(), 1, true),
            (&inst.curve.pow(2) + &g.pow(5), 1, false),
        ])
        .unwrap();
        weight_report(&inst.pencil, &d)
    })?
    .map_err(|e| e.to_string())?;
    let infinite = r.per_member.iter().filter(|m| m.gcd == ExtMult::Infinity).count();
    ensure!(infinite == 3, "quintic: {infinite} members inside the divisor");
    ensure!(r.verdict == Verdict::DegenerateEffective, "quintic verdict {:?}", r.verdict);
    Ok(())
}

fn unit_strategy() -> impl Strategy<Value = (Vec<u64>, Rat)> {
    let sets: Vec<Vec<u64>> = vec![vec![2], vec![3], vec![2, 3], vec![2, 5], vec![3, 7]];
    (prop::sample::select(sets), prop::collection::vec(-3i32..=3, 2), any::<bool>()).prop_map(|(s, e, neg)| {
        let mut u = Rat::one();
        for (p, k) in s.iter().zip(&e) {
            let pk = Rat::from_integer(BigInt::from(*p).pow(k.unsigned_abs()));
            u = if *k >= 0 { u * pk } else { u / pk };
        }
        (s, if neg { -u } else { u })
    })
}

fn scaled_value_matches(value: &BigInt, lambda: &BigInt, deg: u32, u: &Rat) -> bool {
    value * u.denom() == lambda.pow(deg) * u.numer()
}

fn construction_identities() -> Outcome {
    let start = Instant::now();
    let mut runner = TestRunner::new(Config { cases: CONSTRUCTION_CASES, failure_persistence: None, ..Config::default() });
    runner
        .run(&(2u32..=5, 1u32..=3, unit_strategy()), |(alpha, m, (s, u))| {
            let s = places(&s);
            let param = UnitParam::new(u.clone(), s.clone()).unwrap();
            let (p, value) = third_type_point(alpha, &param, m).unwrap();
            prop_assert_eq!(&value, &u);
            let oracle = common::third_type_value(alpha, p.coords());
            prop_assert!(scaled_value_matches(&oracle, &p.coords()[1], 2 * alpha + 1, &u));
            let d = FactoredDivisor::new([(plane_integral::constructions::third_type_form(alpha).unwrap(), 1, true)])
                .unwrap();
            prop_assert!(plane_integral::heights::is_s_integral(&d, &p, &s).unwrap());
            Ok(())
        })
        .map_err(|e| format!("third type: {e}"))?;
    runner
        .run(&(0u32..=4, 2u32..=4, unit_strategy()), |(a, b, (s, u))| {
            if u.is_one() {
                return Err(TestCaseError::reject("u = 1"));
            }
            let s = places(&s);
            let param = UnitParam::new(u.clone(), s.clone()).unwrap();
            let (p, value) = congruence_point(a, b, &param).unwrap();
            prop_assert_eq!(&value, &u);
            let oracle = common::congruence_value(a, b, p.coords());
            prop_assert!(scaled_value_matches(&oracle, &p.coords()[1], 3 * b + 1, &u));
            let d = FactoredDivisor::new([(plane_integral::constructions::congruence_form(a, b).unwrap(), 1, true)])
                .unwrap();
            prop_assert!(plane_integral::heights::is_s_integral(&d, &p, &s).unwrap());
            Ok(())
        })
        .map_err(|e| format!("congruence: {e}"))?;

    let unit = |u: i64, s: &[u64]| UnitParam::new(rat(u), places(s)).unwrap();
    let goldens = [
        (third_type_point(2, &unit(2, &[2]), 1), (1, 4, 16), 2048u64),
        (third_type_point(2, &unit(3, &[3]), 1), (2, 9, 81), 177_147),
        (congruence_point(1, 2, &unit(2, &[2])), (1, 4, 48), 32_768),
        (congruence_point(2, 2, &unit(2, &[2])), (1, 16, 11_776), 1 << 29),
    ];
    for (k, (got, (x, y, z), value)) in goldens.into_iter().enumerate() {
        let p = got.map_err(|e| e.to_string())?.0;
        ensure!(p == ProjPoint::new(x, y, z), "expected [{x}:{y}:{z}], got {p}");
        let oracle = match k {
            0 | 1 => common::third_type_value(2, p.coords()),
            2 => common::congruence_value(1, 2, p.coords()),
            _ => common::congruence_value(2, 2, p.coords()),
        };
        ensure!(oracle == BigInt::from(value), "value at {p} is {oracle}, expected {value}");
    }
    let spent = start.elapsed();
    ensure!(spent <= CONSTRUCTION_LIMIT, "took {spent:?}, limit {CONSTRUCTION_LIMIT:?}");
    Ok(())
}

fn congruence_property() -> Outcome {
    let s = places(&[2, 3]);
    for e2 in -8i32..=8 {
        for e3 in -8i32..=8 {
            for neg in [false, true] {
                let mag = |p: i64, k: i32| {
                    let pk = Rat::from_integer(BigInt::from(p).pow(k.unsigned_abs()));
                    if k >= 0 {
                        pk
                    } else {
                        pk.recip()
                    }
                };
                let mut u = mag(2, e2) * mag(3, e3);
                if neg {
                    u = -u;
                }
                if u.is_one() {
                    continue;
                }
                let (n, m) = (u.numer().clone(), u.denom().clone());
                let param = UnitParam::new(u.clone(), s.clone()).unwrap();
                for a in 0u32..=10 {
                    for b in 0u32..=6 {
                        // M^{a(b+1)} (u^{a(b+1)} - u^{ab} - a(u-1)) must be divisible by (N-M)^2.
                        let big = a * (b + 1);
                        let lhs = n.pow(big) - n.pow(a * b) * m.pow(a)
                            - if big == 0 { BigInt::zero() } else { BigInt::from(a) * (&n - &m) * m.pow(big - 1) };
                        let sq = (&n - &m) * (&n - &m);
                        ensure!((&lhs % &sq).is_zero(), "oracle divisibility fails for u = {u}, a = {a}, b = {b}");
                        ensure!(
                            congruence_holds(a, b, &param).map_err(|e| e.to_string())?,
                            "library congruence fails for u = {u}, a = {a}, b = {b}"
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

fn orbit_scan() -> Outcome {
    let sq = Endo::power_map(2).unwrap();
    let d = divisor(&[("X", 1), ("Y", 1), ("Z", 1)]);
    let p = ProjPoint::new(3, 2, 1);
    let cap = height_cap_digits(10 * DEFAULT_CAP_DIGITS * 100);
    let o = timed(ORBIT_LIMIT, "orbit scan to index 20", || scan_orbit_integrality(&sq, &p, &d, &places(&[2, 3]), 20, &cap))?
        .map_err(|e| e.to_string())?;
    ensure!(o.records.len() == 21, "only {} orbit points computed", o.records.len());
    for r in &o.records {
        ensure!(r.s_integral == Some(Integrality::Integral), "index {} not integral", r.index);
        let expect_x = BigInt::from(3).pow(1u32 << r.index);
        ensure!(r.point.coords()[0] == expect_x, "index {} has the wrong x coordinate", r.index);
    }
    let o = scan_orbit_integrality(&sq, &p, &d, &places(&[2]), 0, &cap).map_err(|e| e.to_string())?;
    ensure!(o.records[0].s_integral == Some(Integrality::NotIntegral), "index 0 with S = {{2}} should fail");
    Ok(())
}

fn invariant_sets() -> Outcome {
    let sq = Endo::power_map(2).unwrap();
    let swap = Endo::new([f("Y^2"), f("X^2"), f("Z^2")]).unwrap();
    let check = |phi: &Endo, lines: &[&str]| {
        let lines: Vec<Form> = lines.iter().map(|s| f(s)).collect();
        is_completely_invariant_line_set(phi, &lines).unwrap()
    };
    ensure!(check(&sq, &["X", "Y", "Z"]), "coordinate triangle should be invariant");
    ensure!(!check(&swap, &["X"]), "{{X}} should not be invariant under the swap");
    ensure!(check(&swap, &["X", "Y"]), "{{X, Y}} should be invariant under the swap");
    Ok(())
}

fn oracle_value(terms: &[([u32; 3], i64)], p: &[BigInt; 3]) -> BigInt {
    terms
        .iter()
        .map(|(e, c)| BigInt::from(*c) * p[0].pow(e[0]) * p[1].pow(e[1]) * p[2].pow(e[2]))
        .sum()
}

fn height_sum_identity() -> Outcome {
    let form_strategy = (1u32..=5).prop_flat_map(|d| {
        let monomials: Vec<[u32; 3]> =
            (0..=d).flat_map(|i| (0..=d - i).map(move |j| [i, j, d - i - j])).collect();
        let n = monomials.len();
        (Just(monomials), prop::collection::vec(-50i64..=50, n))
    });
    let coord = -1_000_000i64..=1_000_000;
    let mut runner = TestRunner::new(Config { cases: HEIGHT_CASES, failure_persistence: None, ..Config::default() });
    let checked = std::cell::Cell::new(0u32);
    runner
        .run(&(form_strategy, coord.clone(), coord.clone(), coord), |((monos, coeffs), x, y, z)| {
            let terms: Vec<([u32; 3], i64)> = monos.iter().copied().zip(coeffs).filter(|t| t.1 != 0).collect();
            if terms.is_empty() || (x, y, z) == (0, 0, 0) {
                return Err(TestCaseError::reject("degenerate input"));
            }
            let deg = monos[0].iter().sum::<u32>();
            let form = Form::from_terms(deg, terms.iter().map(|(e, c)| (*e, rat(*c)))).unwrap().primitive_integer();
            let p = ProjPoint::new(x, y, z);
            let terms: Vec<([u32; 3], i64)> = form
                .terms()
                .map(|(e, c)| (*e, i64::try_from(c.to_integer()).unwrap()))
                .collect();
            let value = oracle_value(&terms, p.coords());
            if value.is_zero() {
                return Err(TestCaseError::reject("point on the curve"));
            }
            let finite = finite_local_sum(&form, &p).unwrap();
            let arch = archimedean_local_height(&form, &p).unwrap();
            let total = divisor_height(&form, &p).unwrap();
            prop_assert!(finite.plus(&arch) == total);
            prop_assert!(finite == LogCombination::log(value.magnitude()));
            let hmax = p.coords().iter().map(|c| c.magnitude().clone()).max().unwrap();
            let cmax = terms.iter().map(|t| t.1.unsigned_abs()).max().unwrap();
            let expect = LogCombination::log(&hmax)
                .scaled(&BigInt::from(deg))
                .plus(&LogCombination::log(&cmax.into()));
            prop_assert!(total == expect);
            checked.set(checked.get() + 1);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    ensure!(checked.get() >= HEIGHT_CASES, "only {} pairs checked", checked.get());
    Ok(())
}

fn enumeration_oracle() -> Outcome {
    fn z(_x: i128, _y: i128, z: i128) -> i128 {
        z
    }
    fn x(x: i128, _y: i128, _z: i128) -> i128 {
        x
    }
    fn y(_x: i128, y: i128, _z: i128) -> i128 {
        y
    }
    fn cusp(x: i128, y: i128, z: i128) -> i128 {
        y * y * z - x * x * x
    }
    let cases: [(FactoredDivisor, Vec<fn(i128, i128, i128) -> i128>); 3] = [
        (divisor(&[("Z", 1)]), vec![z]),
        (divisor(&[("X", 1), ("Y", 1), ("Z", 1)]), vec![x, y, z]),
        (divisor(&[("Y^2*Z - X^3", 1), ("Z", 1)]), vec![z, cusp]),
    ];
    let start = Instant::now();
    let mut lib_time = Duration::ZERO;
    for (d, oracle_factors) in &cases {
        for s in [vec![], vec![2u64], vec![2, 3]] {
            for b in [5u64, 20, 50] {
                let t = Instant::now();
                let got = enumerate_integral_points(d, &places(&s), b).map_err(|e| e.to_string())?;
                lib_time += t.elapsed();
                let want = common::naive_enumerate(oracle_factors, &s, b as i64);
                let got: Vec<[i64; 3]> = got
                    .iter()
                    .map(|p| p.coords().clone().map(|c| i64::try_from(c).unwrap()))
                    .collect();
                ensure!(got == want, "D = {}, S = {s:?}, B = {b}: {} vs {} points", d.form(), got.len(), want.len());
            }
        }
    }
    ensure!(lib_time <= ENUMERATION_LIMIT, "library enumeration took {lib_time:?}");
    ensure!(start.elapsed() <= 2 * ENUMERATION_LIMIT, "oracle comparison took {:?}", start.elapsed());
    Ok(())
}

fn fiber_concentration() -> Outcome {
    let golden: BTreeMap<FiberKey, usize> = include_str!("data/fibers_b1000.csv")
        .lines()
        .skip(1)
        .map(|line| {
            let v: Vec<i64> = line.split(',').map(|t| t.parse().unwrap()).collect();
            (FiberKey::Member(Param::new(v[0], v[1]).unwrap()), v[2] as usize)
        })
        .collect();
    let d = divisor(&[("Z", 1), ("Y^2*Z - X^3", 1)]);
    let pts = enumerate_integral_points(&d, &places(&[2, 3]), 1000).map_err(|e| e.to_string())?;
    let hits = fibers_hit(&pts, &cusp_pencil());
    ensure!(pts.len() == golden.values().sum::<usize>(), "{} points, golden has {}", pts.len(), golden.values().sum::<usize>());
    for key in hits.keys() {
        ensure!(golden.contains_key(key), "point on unlisted fiber {key}");
    }
    ensure!(hits == golden, "fiber counts differ from the golden list");
    Ok(())
}

fn canonical(f: &Form) -> String {
    serde_json::to_string(&f.primitive_integer()).unwrap()
}

fn family_round_trips() -> Outcome {
    let cases = [
        (r#"{"family":"TONO_BICUSP_1","alpha0":2,"alpha1":3,"a":"5"}"#, "Y^3 + X*(Z + 5*Y)^2"),
        (r#"{"family":"TONO_BICUSP_2","alpha0":2,"alpha1":3,"avec":["0","1"]}"#, "(X*Z + Y^2)^2 + X*Y^3"),
        (r#"{"family":"TONO_BICUSP_3","alpha0":2,"alpha1":5,"avec":["0","1"]}"#, "Y^5 + X*(X*Z + Y^2)^2"),
        (r#"{"family":"AOKI_I","a":2,"b":3}"#, "X^2*Y^3 + Z^5"),
        (r#"{"family":"AOKI_IV","a":2,"b":3}"#, "X^2*Z - Y^3"),
        (r#"{"family":"YOSHIHARA"}"#, "(Y*Z - X^2)*(Y*Z^2 - X^2*Z - 2*X*Y^2) + Y^5"),
    ];
    for (json, display) in cases {
        let inst = serde_json::from_str::<FamilySpec>(json).map_err(|e| e.to_string())?.generate().map_err(|e| e.to_string())?;
        let got = serde_json::to_string(&inst.curve).unwrap();
        ensure!(got == canonical(&f(display)), "{json}: got {}", inst.curve);
        let back: Form = serde_json::from_str(&got).unwrap();
        ensure!(back == inst.curve, "{json}: serialization does not round-trip");
    }
    let inst = serde_json::from_str::<FamilySpec>(r#"{"family":"TONO_UNICUSP_I","n":2,"s":2,"a":["1"]}"#)
        .unwrap()
        .generate()
        .map_err(|e| e.to_string())?;
    let full = f("((X^2*Z + Y^3)*Y + X^4)^3 - (X^2*Z + Y^3)^4");
    let expected = full.exact_divide(&f("X^2")).map_err(|e| e.to_string())?;
    ensure!(serde_json::to_string(&inst.curve).unwrap() == canonical(&expected), "unicuspidal n=s=2 curve differs");
    Ok(())
}

fn unit_equation() -> Outcome {
    let sols = solve_s_unit_bounded(&places(&[2, 3]), 6);
    let got: Vec<((i128, i128), (i128, i128))> = sols
        .iter()
        .map(|s| {
            let fr = |r: &Rat| (i128::try_from(r.numer()).unwrap(), i128::try_from(r.denom()).unwrap());
            (fr(&s.u), fr(&s.v))
        })
        .collect();
    let want = common::naive_unit_equation(&[2, 3], 6);
    ensure!(got == want, "{} solutions, oracle has {}", got.len(), want.len());
    for (u, v) in [(rat(2), rat(-1)), (rat(4), rat(-3)), (rat(9), rat(-8)), (rat_frac(1, 2), rat_frac(1, 2)), (rat_frac(3, 4), rat_frac(1, 4))] {
        ensure!(sols.iter().any(|s| s.u == u && s.v == v), "missing ({u}, {v})");
    }
    for s in &sols {
        ensure!(sols.iter().any(|t| t.u == s.v && t.v == s.u), "({}, {}) has no swapped partner", s.u, s.v);
    }
    ensure!(sols.iter().all(|s| !s.u.is_negative() || !s.v.is_negative()), "two negative units cannot sum to 1");
    Ok(())
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "weight golden values", weight_goldens),
        (2, "construction identities", construction_identities),
        (3, "congruence property", congruence_property),
        (4, "orbit scan integrality", orbit_scan),
        (5, "invariant line sets", invariant_sets),
        (6, "height sum identity", height_sum_identity),
        (7, "enumeration oracle equivalence", enumeration_oracle),
        (8, "fiber concentration golden", fiber_concentration),
        (9, "family round trips", family_round_trips),
        (10, "bounded S-unit solver", unit_equation),
    ];
    let mut failed = 0;
    for (n, name, check) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {n:>2} {name} ({secs:.2}s)"),
            Err(e) => {
                failed += 1;
                println!("FAIL {n:>2} {name} ({secs:.2}s): {e}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
