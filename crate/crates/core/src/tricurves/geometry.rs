//! Exact planar predicates on rational points.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, fmt_q, frac_q, Q};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct V2 {
    #[serde(
        serialize_with = "rational::ser_q",
        deserialize_with = "rational::de_q"
    )]
    pub x: Q,
    #[serde(
        serialize_with = "rational::ser_q",
        deserialize_with = "rational::de_q"
    )]
    pub y: Q,
}

impl V2 {
    pub fn new(x: Q, y: Q) -> V2 {
        V2 { x, y }
    }

    pub fn int(x: i64, y: i64) -> V2 {
        V2 {
            x: Q::from_integer(x.into()),
            y: Q::from_integer(y.into()),
        }
    }

    pub fn from_big(x: &BigInt, y: &BigInt) -> V2 {
        V2 {
            x: Q::from_integer(x.clone()),
            y: Q::from_integer(y.clone()),
        }
    }

    pub fn zero() -> V2 {
        V2 {
            x: Q::zero(),
            y: Q::zero(),
        }
    }

    pub fn cross(&self, o: &V2) -> Q {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn dot(&self, o: &V2) -> Q {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn norm2(&self) -> Q {
        self.dot(self)
    }

    pub fn scale(&self, t: &Q) -> V2 {
        V2 {
            x: &self.x * t,
            y: &self.y * t,
        }
    }

    /// Representative in `[0, 1)^2`.
    pub fn reduce(&self) -> V2 {
        V2 {
            x: frac_q(&self.x),
            y: frac_q(&self.y),
        }
    }

    /// Integer vector `n` with `self - n` in `[0, 1)^2`.
    pub fn floor(&self) -> (BigInt, BigInt) {
        (self.x.floor().to_integer(), self.y.floor().to_integer())
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl fmt::Display for V2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_q(&self.x), fmt_q(&self.y))
    }
}

impl<'a> Add<&'a V2> for &'a V2 {
    type Output = V2;
    fn add(self, o: &V2) -> V2 {
        V2 {
            x: &self.x + &o.x,
            y: &self.y + &o.y,
        }
    }
}

impl<'a> Sub<&'a V2> for &'a V2 {
    type Output = V2;
    fn sub(self, o: &V2) -> V2 {
        V2 {
            x: &self.x - &o.x,
            y: &self.y - &o.y,
        }
    }
}

impl Add for V2 {
    type Output = V2;
    fn add(self, o: V2) -> V2 {
        &self + &o
    }
}

impl Sub for V2 {
    type Output = V2;
    fn sub(self, o: V2) -> V2 {
        &self - &o
    }
}

impl Neg for V2 {
    type Output = V2;
    fn neg(self) -> V2 {
        V2 {
            x: -self.x,
            y: -self.y,
        }
    }
}

impl Neg for &V2 {
    type Output = V2;
    fn neg(self) -> V2 {
        V2 {
            x: -&self.x,
            y: -&self.y,
        }
    }
}

impl<'a> Mul<&'a Q> for &'a V2 {
    type Output = V2;
    fn mul(self, t: &Q) -> V2 {
        self.scale(t)
    }
}

/// Sign of `cross(b - a, c - a)`: positive for a counterclockwise turn.
pub fn orient(a: &V2, b: &V2, c: &V2) -> Ordering {
    (b - a).cross(&(c - a)).cmp(&Q::zero())
}

/// Sign of the in-circle test of `d` against the counterclockwise triangle
/// `abc`, for the flat metric perturbed to `x^2 (1 + e) + 2 e^2 x y + y^2`
/// with `e` infinitesimal. `Greater` means `d` is strictly inside.
///
/// The perturbation breaks every cocircular tie in a translation-invariant
/// way, so the resulting Delaunay triangulation of a periodic point set is
/// unique.
pub fn incircle_perturbed(a: &V2, b: &V2, c: &V2, d: &V2) -> Ordering {
    let rows = [a - d, b - d, c - d];
    let det_with = |f: &dyn Fn(&V2) -> Q| -> Q {
        let z: Vec<Q> = rows.iter().map(f).collect();
        let (r0, r1, r2) = (&rows[0], &rows[1], &rows[2]);
        &z[0] * r1.cross(r2) - &z[1] * r0.cross(r2) + &z[2] * r0.cross(r1)
    };
    let d0 = det_with(&|v: &V2| v.norm2());
    if !d0.is_zero() {
        return d0.cmp(&Q::zero());
    }
    let d1 = det_with(&|v: &V2| &v.x * &v.x);
    if !d1.is_zero() {
        return d1.cmp(&Q::zero());
    }
    let d2 = det_with(&|v: &V2| Q::from_integer(2.into()) * &v.x * &v.y);
    d2.cmp(&Q::zero())
}

/// Plain in-circle sign (no perturbation).
pub fn incircle(a: &V2, b: &V2, c: &V2, d: &V2) -> Ordering {
    let rows = [a - d, b - d, c - d];
    let (r0, r1, r2) = (&rows[0], &rows[1], &rows[2]);
    let det = r0.norm2() * r1.cross(r2) - r1.norm2() * r0.cross(r2) + r2.norm2() * r0.cross(r1);
    det.cmp(&Q::zero())
}

/// How two closed segments `[p0, p1]` and `[q0, q1]` meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegHit {
    None,
    /// Interiors cross transversally at parameters `s` (on p) and `t` (on q),
    /// both strictly inside `(0, 1)`.
    Proper {
        s: Q,
        t: Q,
        point: V2,
    },
    /// Anything else: touching at an endpoint, or collinear overlap.
    Degenerate,
}

pub fn segment_hit(p0: &V2, p1: &V2, q0: &V2, q1: &V2) -> SegHit {
    let r = p1 - p0;
    let s = q1 - q0;
    let denom = r.cross(&s);
    let qp = q0 - p0;
    if denom.is_zero() {
        if !qp.cross(&r).is_zero() {
            return SegHit::None;
        }
        // collinear: overlap test on the projection
        let rr = r.norm2();
        let t0 = qp.dot(&r) / &rr;
        let t1 = (q1 - p0).dot(&r) / &rr;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let zero = Q::zero();
        let one = Q::from_integer(1.into());
        return if hi < zero || lo > one {
            SegHit::None
        } else {
            SegHit::Degenerate
        };
    }
    let sp = qp.cross(&s) / &denom;
    let tq = qp.cross(&r) / &denom;
    let zero = Q::zero();
    let one = Q::from_integer(1.into());
    if sp < zero || sp > one || tq < zero || tq > one {
        return SegHit::None;
    }
    if sp == zero || sp == one || tq == zero || tq == one {
        return SegHit::Degenerate;
    }
    let point = p0 + &r.scale(&sp);
    SegHit::Proper {
        s: sp,
        t: tq,
        point,
    }
}

/// Integer translations `n` for which the boxes of `[a0, a1]` and
/// `[b0, b1] + n` can overlap.
pub fn translations_between(a0: &V2, a1: &V2, b0: &V2, b1: &V2) -> Vec<(i64, i64)> {
    use num_traits::ToPrimitive;
    let lo = |u: &Q, v: &Q| if u <= v { u.clone() } else { v.clone() };
    let hi = |u: &Q, v: &Q| if u >= v { u.clone() } else { v.clone() };
    let range = |amin: Q, amax: Q, bmin: Q, bmax: Q| -> (i64, i64) {
        let from = (amin - bmax).floor().to_integer().to_i64().unwrap();
        let to = (amax - bmin).ceil().to_integer().to_i64().unwrap();
        (from, to)
    };
    let (x0, x1) = range(
        lo(&a0.x, &a1.x),
        hi(&a0.x, &a1.x),
        lo(&b0.x, &b1.x),
        hi(&b0.x, &b1.x),
    );
    let (y0, y1) = range(
        lo(&a0.y, &a1.y),
        hi(&a0.y, &a1.y),
        lo(&b0.y, &b1.y),
        hi(&b0.y, &b1.y),
    );
    let mut out = Vec::new();
    for nx in x0..=x1 {
        for ny in y0..=y1 {
            out.push((nx, ny));
        }
    }
    out
}

/// Squared distance from `p` to the segment `[a, b]`.
pub fn dist2_point_segment(p: &V2, a: &V2, b: &V2) -> Q {
    let ab = b - a;
    let ap = p - a;
    let len = ab.norm2();
    if len.is_zero() {
        return ap.norm2();
    }
    let t = ap.dot(&ab) / &len;
    let zero = Q::zero();
    let one = Q::from_integer(1.into());
    if t <= zero {
        ap.norm2()
    } else if t >= one {
        (p - b).norm2()
    } else {
        let c = ap.cross(&ab);
        &c * &c / len
    }
}

/// Point strictly inside a simple polygon (even-odd rule; callers guarantee
/// `p` is not on the boundary).
pub fn point_in_polygon(p: &V2, poly: &[V2]) -> bool {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let t = (&p.y - &a.y) / (&b.y - &a.y);
            let x = &a.x + t * (&b.x - &a.x);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Twice the signed area of a closed polygon.
pub fn signed_area2(poly: &[V2]) -> Q {
    let n = poly.len();
    let mut acc = Q::zero();
    for i in 0..n {
        acc += poly[i].cross(&poly[(i + 1) % n]);
    }
    acc
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn p(x: i64, y: i64) -> V2 {
        V2::int(x, y)
    }

    #[test]
    fn orientation() {
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(0, 1)), Ordering::Greater);
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(2, 0)), Ordering::Equal);
    }

    #[test]
    fn incircle_square_tie_is_broken() {
        let (a, b, c, d) = (p(0, 0), p(1, 0), p(1, 1), p(0, 1));
        assert_eq!(incircle(&a, &b, &c, &d), Ordering::Equal);
        let s1 = incircle_perturbed(&a, &b, &c, &d);
        assert_ne!(s1, Ordering::Equal);
        // the other diagonal gets the opposite verdict
        let s2 = incircle_perturbed(&b, &c, &d, &a);
        assert_eq!(s1, s2.reverse());
        assert_eq!(
            incircle(&a, &b, &c, &V2::new(q(1, 2), q(1, 2))),
            Ordering::Greater
        );
    }

    #[test]
    fn segments() {
        match segment_hit(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)) {
            SegHit::Proper { point, .. } => assert_eq!(point, p(1, 1)),
            h => panic!("{h:?}"),
        }
        assert_eq!(
            segment_hit(&p(0, 0), &p(1, 0), &p(0, 1), &p(1, 1)),
            SegHit::None
        );
        assert_eq!(
            segment_hit(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 0)),
            SegHit::Degenerate
        );
        assert_eq!(
            segment_hit(&p(0, 0), &p(2, 0), &p(1, 0), &p(1, 1)),
            SegHit::Degenerate
        );
    }

    #[test]
    fn polygons() {
        let sq = vec![p(0, 0), p(2, 0), p(2, 2), p(0, 2)];
        assert!(point_in_polygon(&p(1, 1), &sq));
        assert!(!point_in_polygon(&p(3, 1), &sq));
        assert_eq!(signed_area2(&sq), Q::from_integer(8.into()));
    }
}
