use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A nonseparating curve class on the torus (or once-punctured torus): a
/// primitive integer vector up to sign.
///
/// Canonical form: `q > 0`, or `q = 0` and `p = 1`. The derived ordering is
/// lexicographic on `(p, q)`, which is the tie-break used everywhere.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slope {
    p: BigInt,
    q: BigInt,
}

impl Slope {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Slope> {
        canonicalize(p.into(), q.into())
    }

    /// Canonical slope of a vector that is already known to be primitive.
    pub(crate) fn from_primitive(p: BigInt, q: BigInt) -> Slope {
        debug_assert!(p.gcd(&q).is_one());
        if q.is_negative() || (q.is_zero() && p.is_negative()) {
            Slope { p: -p, q: -q }
        } else {
            Slope { p, q }
        }
    }

    pub fn infinity() -> Slope {
        Slope {
            p: BigInt::one(),
            q: BigInt::zero(),
        }
    }

    pub fn zero() -> Slope {
        Slope {
            p: BigInt::zero(),
            q: BigInt::one(),
        }
    }

    pub fn integer(n: i64) -> Slope {
        Slope {
            p: BigInt::from(n),
            q: BigInt::one(),
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// Largest absolute coordinate.
    pub fn height(&self) -> BigInt {
        self.p.abs().max(self.q.abs())
    }
}

/// Projective canonical form of `(p, q)`; fails on the zero vector and on
/// non-primitive vectors.
pub fn canonicalize(p: BigInt, q: BigInt) -> Result<Slope> {
    if p.is_zero() && q.is_zero() || !p.gcd(&q).is_one() {
        return Err(Error::NotACurveClass(p.to_string(), q.to_string()));
    }
    Ok(Slope::from_primitive(p, q))
}

/// `|p_s q_t - q_s p_t|`: the minimal intersection number of the two classes.
pub fn intersection_number(s: &Slope, t: &Slope) -> BigInt {
    (&s.p * &t.q - &s.q * &t.p).abs()
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Slope> {
        let (p, q) = s
            .trim()
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("slope '{s}' is not of the form p/q")))?;
        let p: BigInt = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad slope '{s}'")))?;
        let q: BigInt = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad slope '{s}'")))?;
        canonicalize(p, q)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Slope, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(s(-2, -3), s(2, 3));
        assert_eq!(s(-2, -3).p(), &BigInt::from(2));
        assert_eq!(s(1, 0), Slope::infinity());
        assert_eq!(s(-1, 0), Slope::infinity());
        assert_eq!(s(3, -1), s(-3, 1));
        assert!(matches!(Slope::new(3, 0), Err(Error::NotACurveClass(..))));
        assert!(Slope::new(0, 0).is_err());
        assert!(Slope::new(4, 6).is_err());
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(intersection_number(&s(1, 0), &s(0, 1)), BigInt::from(1));
        assert_eq!(intersection_number(&s(1, 0), &s(1, 0)), BigInt::from(0));
        assert_eq!(intersection_number(&s(2, 1), &s(5, 3)), BigInt::from(1));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("1/0".parse::<Slope>().unwrap(), Slope::infinity());
        assert!("-4/-6".parse::<Slope>().is_err());
        assert_eq!("2/-5".parse::<Slope>().unwrap().to_string(), "-2/5");
        assert!("25".parse::<Slope>().is_err());
        let j = serde_json::to_string(&s(2, 5)).unwrap();
        assert_eq!(j, "\"2/5\"");
        assert_eq!(serde_json::from_str::<Slope>(&j).unwrap(), s(2, 5));
    }

    #[test]
    fn lex_order() {
        assert!(s(-1, 1) < s(0, 1));
        assert!(s(1, 0) < s(1, 2));
        assert!(s(1, 2) < s(2, 1));
    }
}
