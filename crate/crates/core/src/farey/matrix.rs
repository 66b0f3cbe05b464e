use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::slope::Slope;
use crate::error::{Error, Result};

/// An element of SL(2, Z) acting on column vectors `(p, q)`:
/// `[[a, b], [c, d]] (p, q) = (a p + b q, c p + d q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ToralMatrix {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixClass {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl fmt::Display for MatrixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MatrixClass::Identity => "identity",
            MatrixClass::Elliptic => "elliptic",
            MatrixClass::Parabolic => "parabolic",
            MatrixClass::Hyperbolic => "hyperbolic",
        };
        f.write_str(s)
    }
}

impl ToralMatrix {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let m = ToralMatrix {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        let det = m.det();
        if !det.is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        ToralMatrix::new(1, 0, 0, 1).unwrap()
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn mul(&self, o: &ToralMatrix) -> ToralMatrix {
        ToralMatrix {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn inverse(&self) -> ToralMatrix {
        ToralMatrix {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn pow(&self, n: u64) -> ToralMatrix {
        let mut acc = ToralMatrix::identity();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `A^n` for any integer `n`.
    pub fn powi(&self, n: i64) -> ToralMatrix {
        if n >= 0 {
            self.pow(n as u64)
        } else {
            self.inverse().pow(n.unsigned_abs())
        }
    }

    pub fn apply_vec(&self, p: &BigInt, q: &BigInt) -> (BigInt, BigInt) {
        (&self.a * p + &self.b * q, &self.c * p + &self.d * q)
    }

    pub fn is_plus_minus_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d && self.a.abs().is_one()
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

/// Canonical image of a slope.
pub fn matrix_act(m: &ToralMatrix, s: &Slope) -> Slope {
    let (p, q) = m.apply_vec(s.p(), s.q());
    Slope::from_primitive(p, q)
}

/// Exact classification by `|trace|`: below 2 elliptic, equal to 2 parabolic
/// (±identity reported as identity), above 2 hyperbolic.
pub fn classify_matrix(m: &ToralMatrix) -> MatrixClass {
    if m.is_plus_minus_identity() {
        return MatrixClass::Identity;
    }
    let t = m.trace().abs();
    let two = BigInt::from(2);
    if t < two {
        MatrixClass::Elliptic
    } else if t == two {
        MatrixClass::Parabolic
    } else {
        MatrixClass::Hyperbolic
    }
}

/// A matrix `B` with `B s = 1/0`.
pub fn send_to_infinity(s: &Slope) -> ToralMatrix {
    let g = s.p().extended_gcd(s.q());
    // g.x * p + g.y * q = gcd = ±1
    let (u, v) = if g.gcd.is_one() {
        (g.x, g.y)
    } else {
        (-g.x, -g.y)
    };
    ToralMatrix {
        a: u,
        b: v,
        c: -s.q().clone(),
        d: s.p().clone(),
    }
}

impl fmt::Display for ToralMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for ToralMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("matrix '{s}' must be a,b,c,d")));
        }
        let mut v = Vec::with_capacity(4);
        for p in parts {
            v.push(
                p.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad matrix entry '{p}'")))?,
            );
        }
        let d = v.pop().unwrap();
        let c = v.pop().unwrap();
        let b = v.pop().unwrap();
        let a = v.pop().unwrap();
        ToralMatrix::new(a, b, c, d)
    }
}

impl Serialize for ToralMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ToralMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> ToralMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn act_examples() {
        let f = m("2,1,1,1");
        assert_eq!(
            matrix_act(&f, &Slope::infinity()),
            Slope::new(2, 1).unwrap()
        );
        assert_eq!(
            matrix_act(&f, &Slope::new(2, 1).unwrap()),
            Slope::new(5, 3).unwrap()
        );
        let s = Slope::new(-3, 7).unwrap();
        assert_eq!(matrix_act(&ToralMatrix::identity(), &s), s);
    }

    #[test]
    fn classification() {
        assert_eq!(classify_matrix(&m("0,-1,1,0")), MatrixClass::Elliptic);
        assert_eq!(classify_matrix(&m("1,1,0,1")), MatrixClass::Parabolic);
        assert_eq!(classify_matrix(&m("2,1,1,1")), MatrixClass::Hyperbolic);
        assert_eq!(classify_matrix(&m("-1,0,0,-1")), MatrixClass::Identity);
        assert_eq!(classify_matrix(&m("-1,1,0,-1")), MatrixClass::Parabolic);
    }

    #[test]
    fn parse_rejects_non_unimodular() {
        assert!(matches!(
            "2,0,0,1".parse::<ToralMatrix>(),
            Err(Error::NotUnimodular(_))
        ));
        assert!(matches!(
            "1,2,3".parse::<ToralMatrix>(),
            Err(Error::Parse(_))
        ));
        assert!("0,1,-1,0".parse::<ToralMatrix>().is_ok());
    }

    #[test]
    fn powers_and_inverse() {
        let f = m("2,1,1,1");
        assert_eq!(f.pow(2), m("5,3,3,2"));
        assert_eq!(f.mul(&f.inverse()), ToralMatrix::identity());
        assert_eq!(f.powi(-2).mul(&f.pow(2)), ToralMatrix::identity());
    }

    #[test]
    fn infinity_normalizer() {
        for (p, q) in [(2, 5), (-7, 3), (1, 0), (0, 1), (13, 8)] {
            let s = Slope::new(p, q).unwrap();
            let b = send_to_infinity(&s);
            assert!(b.det().is_one());
            assert_eq!(matrix_act(&b, &s), Slope::infinity());
        }
    }
}
