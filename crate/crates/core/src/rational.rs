//! Exact rational scalars and their string encoding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::Error;

/// Arbitrary-precision rational; `num_rational` keeps it in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn half() -> Rational {
    frac(1, 2)
}

pub fn is_integral(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn is_positive(q: &Rational) -> bool {
    q.is_positive()
}

pub fn is_nonnegative(q: &Rational) -> bool {
    !q.is_negative()
}

pub fn is_zero(q: &Rational) -> bool {
    q.is_zero()
}

/// Lowest-terms string: `"3"`, `"-1/2"`.
pub fn to_string(q: &Rational) -> String {
    q.to_string()
}

/// Accepts `"p"` or `"p/q"` with optional sign; the result is reduced.
pub fn parse(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => s
            .parse::<BigInt>()
            .map(Rational::from_integer)
            .map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

pub fn serialize<S: Serializer>(q: &Rational, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&to_string(q))
}

pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
    let s = String::deserialize(de)?;
    parse(&s).map_err(serde::de::Error::custom)
}

/// Serde adapter for `Option<Rational>`, used where a slope may be infinite.
pub mod opt {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Option<Rational>, ser: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => ser.serialize_str(&to_string(q)),
            None => ser.serialize_str("inf"),
        }
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&to_string(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(de)?;
        v.iter()
            .map(|s| parse(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
