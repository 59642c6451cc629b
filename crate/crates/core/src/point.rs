use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_all, Rat};
use crate::error::{Error, Result};

/// A rational point of P^2 in canonical form: coprime integer coordinates,
/// first nonzero coordinate positive. Equality is coordinate equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [BigInt; 3],
}

/// Canonical representative of the projective point with rational
/// coordinates `raw`.
pub fn reduce_point(raw: &[Rat; 3]) -> Result<ProjPoint> {
    if raw.iter().all(Zero::is_zero) {
        return Err(Error::AllZero);
    }
    let lcm = raw
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints = [
        (&raw[0] * &lcm).to_integer(),
        (&raw[1] * &lcm).to_integer(),
        (&raw[2] * &lcm).to_integer(),
    ];
    Ok(ProjPoint::reduce_integers(ints).0)
}

impl ProjPoint {
    /// Divides out the content and fixes the sign; returns the point together
    /// with the positive content removed.
    pub fn reduce_integers(coords: [BigInt; 3]) -> (ProjPoint, BigInt) {
        let g = gcd_all(coords.iter());
        assert!(!g.is_zero(), "reduce_integers called on the zero vector");
        let first_negative = coords
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_negative())
            .unwrap_or(false);
        let mut out = coords;
        if !g.is_one() {
            for c in out.iter_mut() {
                *c = &*c / &g;
            }
        }
        if first_negative {
            for c in out.iter_mut() {
                *c = -&*c;
            }
        }
        (ProjPoint { coords: out }, g)
    }

    pub fn try_from_integers(coords: [BigInt; 3]) -> Result<ProjPoint> {
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::AllZero);
        }
        Ok(Self::reduce_integers(coords).0)
    }

    /// Convenience constructor; panics on (0,0,0).
    pub fn new(x: i64, y: i64, z: i64) -> ProjPoint {
        Self::try_from_integers([x.into(), y.into(), z.into()]).expect("nonzero point")
    }

    pub fn coords(&self) -> &[BigInt; 3] {
        &self.coords
    }

    pub fn max_abs_coord(&self) -> BigUint {
        self.coords
            .iter()
            .map(|c| c.magnitude().clone())
            .max()
            .unwrap()
    }

    pub fn as_rationals(&self) -> [Rat; 3] {
        self.coords.clone().map(Rat::from_integer)
    }

    pub fn to_csv_row(&self) -> String {
        format!("{},{},{}", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// Parses `"x,y,z"` (optionally bracketed or colon-separated); entries may
/// be rationals. The result is reduced to canonical form.
impl FromStr for ProjPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = inner.split([',', ':']).map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected three coordinates in {s:?}")));
        }
        let mut raw: [Rat; 3] = Default::default();
        for (slot, tok) in raw.iter_mut().zip(&parts) {
            *slot = crate::serde_rat::parse_rat(tok)?;
        }
        reduce_point(&raw)
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(3))?;
        for c in &self.coords {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<crate::serde_rat::RatRepr> = Vec::deserialize(d)?;
        if raw.len() != 3 {
            return Err(de::Error::invalid_length(raw.len(), &"three coordinates"));
        }
        let mut vals: [Rat; 3] = Default::default();
        for (slot, r) in vals.iter_mut().zip(raw) {
            *slot = r.into_rat().map_err(de::Error::custom)?;
        }
        reduce_point(&vals).map_err(de::Error::custom)
    }
}

/// Reads points from CSV rows `x,y,z`. A leading `x,y,z` header row is
/// skipped; extra columns are ignored.
pub fn parse_points_csv(text: &str) -> Result<Vec<ProjPoint>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        if rec.len() < 3 {
            return Err(Error::Parse(format!("row {} has {} columns", i + 1, rec.len())));
        }
        if i == 0 && &rec[0] == "x" {
            continue;
        }
        if i == 0 && &rec[0] == "index" {
            return parse_orbit_csv_points(text);
        }
        let mut raw: [Rat; 3] = Default::default();
        for (slot, tok) in raw.iter_mut().zip(rec.iter()) {
            *slot = crate::serde_rat::parse_rat(tok)?;
        }
        out.push(reduce_point(&raw)?);
    }
    Ok(out)
}

// Orbit CSV files carry the point in columns 1..=3.
fn parse_orbit_csv_points(text: &str) -> Result<Vec<ProjPoint>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        if rec.len() < 4 {
            return Err(Error::Parse("orbit row needs index,x,y,z".into()));
        }
        let coords: Result<Vec<BigInt>> = (1..4)
            .map(|i| {
                rec[i]
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad integer {:?}", &rec[i])))
            })
            .collect();
        let c = coords?;
        out.push(ProjPoint::try_from_integers([c[0].clone(), c[1].clone(), c[2].clone()])?);
    }
    Ok(out)
}

pub fn write_points_csv(points: &[ProjPoint]) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(["x", "y", "z"]).expect("in-memory write");
    for p in points {
        w.write_record(p.coords.iter().map(|c| c.to_string()))
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}
