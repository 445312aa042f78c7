//! Exact arithmetic used for every duration, event time and makespan.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

pub fn int(v: i128) -> Rational {
    Rational::from_integer(v)
}

pub fn ratio(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

pub fn ceil_div(n: u64, d: u64) -> u64 {
    n.div_ceil(d)
}

/// Parses `"p/q"` or `"p"`; negative values are rejected.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    let r = match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(s.parse().map_err(|_| bad())?),
    };
    if r < Rational::zero() {
        return Err(Error::Parse(format!("negative value `{s}`")));
    }
    Ok(r)
}

pub fn to_big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn from_big(r: &BigRational) -> Result<Rational> {
    match (r.numer().to_i128(), r.denom().to_i128()) {
        (Some(n), Some(d)) => Ok(Rational::new(n, d)),
        _ => Err(Error::Numerical(format!("value {r} does not fit in 128-bit rational"))),
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Smallest integer `>= r` for a non-negative rational.
pub fn ceil_u64(r: &Rational) -> u64 {
    r.ceil().to_integer().max(0) as u64
}

/// serde adapter writing rationals as `"p/q"` strings.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = RawRational::deserialize(d)?;
        raw.into_rational().map_err(serde::de::Error::custom)
    }

    #[derive(serde::Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RawRational {
        Text(String),
        Int(u64),
    }

    impl RawRational {
        pub(crate) fn into_rational(self) -> Result<Rational, String> {
            match self {
                RawRational::Text(t) => super::parse(&t).map_err(|e| e.to_string()),
                RawRational::Int(i) => Ok(Rational::from_integer(i as i128)),
            }
        }
    }
}

pub mod serde_opt_str {
    use super::serde_str::RawRational;
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let raw = Option::<RawRational>::deserialize(d)?;
        raw.map(|r| r.into_rational().map_err(serde::de::Error::custom)).transpose()
    }
}
