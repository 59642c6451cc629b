use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::{expr::parse_form, Form, MAX_INPUT_DEGREE};
use crate::arith::Rat;

#[derive(Serialize)]
struct TermOut {
    e: [u32; 3],
    c: String,
}

#[derive(Serialize)]
struct FormOut {
    degree: u32,
    terms: Vec<TermOut>,
}

impl Serialize for Form {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FormOut {
            degree: self.degree,
            terms: self.terms().map(|(e, c)| TermOut { e: *e, c: c.to_string() }).collect(),
        }
        .serialize(s)
    }
}


#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermIn {
    e: [u32; 3],
    #[serde(with = "crate::serde_rat")]
    c: Rat,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FormIn {
    degree: u32,
    terms: Vec<TermIn>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FormRepr {
    Text(String),
    Object(FormIn),
}

/// Accepts the object form `{"degree": d, "terms": [...]}` or an expression
/// string such as `"Y^2*Z - X^3"`.
impl<'de> Deserialize<'de> for Form {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match FormRepr::deserialize(d)? {
            FormRepr::Text(s) => parse_form(&s).map_err(de::Error::custom),
            FormRepr::Object(obj) => {
                if obj.degree > MAX_INPUT_DEGREE {
                    return Err(de::Error::custom(format!(
                        "degree {} exceeds {MAX_INPUT_DEGREE}",
                        obj.degree
                    )));
                }
                if obj.terms.iter().any(|t| t.e.iter().any(|&k| k > MAX_INPUT_DEGREE)) {
                    return Err(de::Error::custom("exponent too large"));
                }
                Form::from_terms(obj.degree, obj.terms.into_iter().map(|t| (t.e, t.c)))
                    .map_err(de::Error::custom)
            }
        }
    }
}
