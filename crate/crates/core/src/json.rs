//! Serde adapters that write exact integers as plain JSON numbers of any size.
//!
//! `serde_json` is built with `arbitrary_precision`, so a [`Number`] carries
//! its decimal text verbatim. Non-integral numbers are rejected on input.

use std::fmt::Display;
use std::str::FromStr;

use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;

pub fn number<T: Display>(v: &T) -> std::result::Result<Number, String> {
    v.to_string().parse::<Number>().map_err(|e| e.to_string())
}

pub fn integer<T: FromStr>(n: &Number) -> std::result::Result<T, String> {
    let text = n.to_string();
    text.parse::<T>()
        .map_err(|_| format!("expected an integer, found {text}"))
}

/// `#[serde(with = "crate::json::exact")]` for `BigInt`, `BigUint` or any
/// `Display + FromStr` integer type.
pub mod exact {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        number(v).map_err(S::Error::custom)?.serialize(s)
    }

    pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        let n = Number::deserialize(d)?;
        integer(&n).map_err(D::Error::custom)
    }
}

pub mod exact_opt {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => number(v).map_err(S::Error::custom)?.serialize(s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Option<T>, D::Error> {
        match Option::<Number>::deserialize(d)? {
            Some(n) => integer(&n).map(Some).map_err(D::Error::custom),
            None => Ok(None),
        }
    }
}

pub mod exact_rows {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(rows: &[Vec<T>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Number>> = rows
            .iter()
            .map(|r| r.iter().map(number).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()
            .map_err(S::Error::custom)?;
        rows.serialize(s)
    }

    pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<Vec<T>>, D::Error> {
        let rows = Vec::<Vec<Number>>::deserialize(d)?;
        rows.iter()
            .map(|r| r.iter().map(integer).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()
            .map_err(D::Error::custom)
    }
}
