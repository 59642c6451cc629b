//! Rationals on the wire: decimal strings `"num/den"` (or plain integers).

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::Rat;
use crate::error::{Error, Result};

pub fn parse_rat(tok: &str) -> Result<Rat> {
    let tok = tok.trim();
    let bad = || Error::Parse(format!("not a rational: {tok:?}"));
    match tok.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator in {tok:?}")));
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = tok.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
pub(crate) enum RatRepr {
    Text(String),
    Signed(i64),
    Unsigned(u64),
}

impl RatRepr {
    pub(crate) fn into_rat(self) -> Result<Rat> {
        match self {
            RatRepr::Text(s) => parse_rat(&s),
            RatRepr::Signed(n) => Ok(Rat::from_integer(n.into())),
            RatRepr::Unsigned(n) => Ok(Rat::from_integer(n.into())),
        }
    }
}

pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    r.to_string().serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
    RatRepr::deserialize(d)?
        .into_rat()
        .map_err(serde::de::Error::custom)
}

/// Serializes any displayable value as its string form.
pub fn display<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(|r| r.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        Vec::<RatRepr>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_rat().map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
        v.as_ref().map(|r| r.to_string()).serialize(s)
    }
}
