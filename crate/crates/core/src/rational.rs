//! Exact rational helpers. Thresholds such as `k* = 15/2` are never rounded.

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serializer};

pub type Rational = Ratio<i64>;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Ratio::new(numer, denom)
}

pub fn int(value: i64) -> Rational {
    Ratio::from_integer(value)
}

/// Formats as `p/q`, always with an explicit denominator.
pub fn to_fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_fraction(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            (q != 0).then(|| Ratio::new(p, q))
        }
        None => s.parse::<i64>().ok().map(Ratio::from_integer),
    }
}

/// Smallest integer `>= r`.
pub fn ceil(r: &Rational) -> i64 {
    r.ceil().to_integer()
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod as_fraction {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_fraction_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_fraction(&s).ok_or_else(|| serde::de::Error::custom(format!("bad fraction {s:?}")))
    }
}

/// Same as [`as_fraction`] for optional values (`null` when absent).
pub mod as_opt_fraction {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&to_fraction_string(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        match s {
            None => Ok(None),
            Some(s) => parse_fraction(&s)
                .map(Some)
                .ok_or_else(|| serde::de::Error::custom(format!("bad fraction {s:?}"))),
        }
    }
}
