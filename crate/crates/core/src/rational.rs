//! Exact rational helpers shared by every module.
//!
//! Rationals are always printed as `p/q` (or `p` when the denominator is one).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in '{s}'")));
    }
    Ok(Q::new(n, d))
}

pub fn floor_q(x: &Q) -> BigInt {
    x.floor().to_integer()
}

/// Fractional part in `[0, 1)`.
pub fn frac_q(x: &Q) -> Q {
    x - Q::from_integer(floor_q(x))
}

pub fn ser_q<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

pub fn de_q<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
    let s = String::deserialize(d)?;
    parse_q(&s).map_err(serde::de::Error::custom)
}

pub fn ser_opt_q<S: Serializer>(x: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&fmt_q(v)),
        None => s.serialize_none(),
    }
}

pub fn de_opt_q<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Q>, D::Error> {
    let s: Option<String> = Option::deserialize(d)?;
    s.map(|s| parse_q(&s).map_err(serde::de::Error::custom))
        .transpose()
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}

pub fn max_q(a: Q, b: Q) -> Q {
    if a >= b {
        a
    } else {
        b
    }
}

pub fn min_q(a: Q, b: Q) -> Q {
    if a <= b {
        a
    } else {
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        assert_eq!(fmt_q(&q(6, 4)), "3/2");
        assert_eq!(fmt_q(&q(-4, 2)), "-2");
        assert_eq!(parse_q(" -3/9 ").unwrap(), q(-1, 3));
        assert_eq!(parse_q("7").unwrap(), qi(7));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn floor_and_frac() {
        assert_eq!(floor_q(&q(-1, 3)), BigInt::from(-1));
        assert_eq!(frac_q(&q(-1, 3)), q(2, 3));
        assert_eq!(frac_q(&q(5, 1)), qi(0));
    }
}
