//! Replays the checked-in fuzz corpus through the same checks the fuzz
//! targets make, so the seeds stay meaningful under plain `cargo test`.

use std::fs;
use std::path::PathBuf;

use plane_integral::families::FamilySpec;
use plane_integral::forms::expr::parse_form;
use plane_integral::point::{parse_points_csv, write_points_csv};
use plane_integral::{Endo, FactoredDivisor, Form, Pencil, PlaceSet, ProjPoint};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    assert!(!paths.is_empty(), "no seeds for {target}");
    paths.iter().map(|p| fs::read_to_string(p).unwrap()).collect()
}

fn accepted<T>(results: impl IntoIterator<Item = Option<T>>) -> usize {
    results.into_iter().flatten().count()
}

#[test]
fn parse_form_seeds() {
    let n = accepted(seeds("parse_form").iter().map(|s| {
        let f = parse_form(s).ok()?;
        if !f.is_zero() {
            assert_eq!(parse_form(&f.to_string()).unwrap(), f);
        }
        Some(())
    }));
    assert!(n >= 5);
}

#[test]
fn json_seeds() {
    let n = accepted(seeds("form_json").iter().map(|s| {
        let f: Form = serde_json::from_str(s).ok()?;
        assert_eq!(serde_json::from_str::<Form>(&serde_json::to_string(&f).unwrap()).unwrap(), f);
        Some(())
    }));
    assert!(n >= 2);
    assert!(accepted(seeds("divisor_json").iter().map(|s| serde_json::from_str::<FactoredDivisor>(s).ok())) >= 3);
    assert!(accepted(seeds("pencil_json").iter().map(|s| serde_json::from_str::<Pencil>(s).ok())) >= 1);
    let n = accepted(seeds("endo_json").iter().map(|s| {
        let phi: Endo = serde_json::from_str(s).ok()?;
        assert_eq!(serde_json::from_str::<Endo>(&serde_json::to_string(&phi).unwrap()).unwrap(), phi);
        Some(())
    }));
    assert!(n >= 3);
    let n = accepted(seeds("family_spec_json").iter().map(|s| {
        let spec: FamilySpec = serde_json::from_str(s).ok()?;
        spec.validate().ok()
    }));
    assert!(n >= 2);
}

#[test]
fn text_seeds() {
    let n = accepted(seeds("points_csv").iter().map(|s| {
        let pts = parse_points_csv(s).ok()?;
        assert_eq!(parse_points_csv(&write_points_csv(&pts)).unwrap(), pts);
        Some(())
    }));
    assert!(n >= 3);
    assert!(accepted(seeds("place_list").iter().map(|s| PlaceSet::parse_list(s).ok())) >= 3);
    let n = accepted(seeds("proj_point").iter().map(|s| {
        let p: ProjPoint = s.parse().ok()?;
        assert_eq!(p.to_string().parse::<ProjPoint>().unwrap(), p);
        Some(())
    }));
    assert!(n >= 3);
}
