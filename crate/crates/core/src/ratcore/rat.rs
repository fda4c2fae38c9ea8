//! Exact rationals and their string form.
//!
//! Rationals travel through every file format as `"n"` or `"n/d"` strings,
//! never as floats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn parse_rat(text: &str) -> Result<Rat> {
    let text = text.trim();
    let parse_int = |s: &str| {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not a rational: {text:?}")))
    };
    match text.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(text)?)),
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rat::new(parse_int(n)?, d))
        }
    }
}

pub fn format_rat(value: &Rat) -> String {
    value.to_string()
}

pub fn abs(value: &Rat) -> Rat {
    value.abs()
}

/// Serde adapter for a single rational stored as a string.
pub mod as_string {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rat, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rat(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Rat, D::Error> {
        let text = RatText::deserialize(deserializer)?;
        text.into_rat().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a list of rationals stored as strings.
pub mod list_as_strings {
    use super::*;

    pub fn serialize<S: Serializer>(values: &[Rat], serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let texts: Vec<String> = values.iter().map(format_rat).collect();
        texts.serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Vec<Rat>, D::Error> {
        let texts = Vec::<RatText>::deserialize(deserializer)?;
        texts
            .into_iter()
            .map(|t| t.into_rat().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Accepts `"3/4"`, `"-2"`, or a bare JSON integer.
#[derive(Deserialize)]
#[serde(untagged)]
enum RatText {
    Text(String),
    Integer(i64),
}

impl RatText {
    fn into_rat(self) -> Result<Rat> {
        match self {
            RatText::Text(s) => parse_rat(&s),
            RatText::Integer(n) => Ok(int(n)),
        }
    }
}

/// Newtype used where a rational has to be serialized on its own.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatString(pub Rat);

impl Serialize for RatString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        as_string::serialize(&self.0, serializer)
    }
}

impl<'de> Deserialize<'de> for RatString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        as_string::deserialize(deserializer).map(RatString)
    }
}
