//! Polylines on the torus and their crossing sequences.

use super::geometry::{dist2_point_segment, segment_hit, translations_between, SegHit, V2};
use super::normal::{trace_indexed, NormalCurve, Token, DEFAULT_MAX_WEIGHT};
use super::triangulation::Triangulation;
use crate::error::{Error, Result};
use crate::rational::{q, Q};

/// Closed polyline in the plane: consecutive vertices are joined by
/// segments and the last vertex joins `vertices[0] + displacement`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyline {
    pub vertices: Vec<V2>,
    pub displacement: (i64, i64),
}

impl Polyline {
    pub fn new(vertices: Vec<V2>, displacement: (i64, i64)) -> Polyline {
        Polyline {
            vertices,
            displacement,
        }
    }

    pub fn segments(&self) -> Vec<(V2, V2)> {
        let n = self.vertices.len();
        (0..n)
            .map(|k| {
                let a = self.vertices[k].clone();
                let b = if k + 1 < n {
                    self.vertices[k + 1].clone()
                } else {
                    &self.vertices[0] + &V2::int(self.displacement.0, self.displacement.1)
                };
                (a, b)
            })
            .collect()
    }

    pub fn translated(&self, v: &V2) -> Polyline {
        Polyline {
            vertices: self.vertices.iter().map(|x| x + v).collect(),
            displacement: self.displacement,
        }
    }

    /// Squared distance from the curve to the nearest point of `pts + Z^2`.
    pub fn clearance2(&self, pts: &[V2]) -> Q {
        let mut best: Option<Q> = None;
        for (a, b) in self.segments() {
            for p in pts {
                for (nx, ny) in translations_between(&a, &b, p, p) {
                    let d = dist2_point_segment(&(p + &V2::int(nx, ny)), &a, &b);
                    if best.as_ref().is_none_or(|x| d < *x) {
                        best = Some(d);
                    }
                }
            }
        }
        best.unwrap_or_else(|| Q::from_integer(1.into()))
    }
}

/// Crossing sequence of a polyline in general position.
pub fn crossings(t: &Triangulation, poly: &Polyline) -> Result<Vec<Token>> {
    let pts = t.punctures().points();
    let mut seq = Vec::new();
    for (a, b) in poly.segments() {
        let dir = &b - &a;
        let mut hits: Vec<(Q, Token)> = Vec::new();
        for (ei, e) in t.edges().iter().enumerate() {
            let p0 = &pts[e.tail];
            let p1 = p0 + &e.vec;
            for (nx, ny) in translations_between(&a, &b, p0, &p1) {
                let n = V2::int(nx, ny);
                match segment_hit(&a, &b, &(p0 + &n), &(&p1 + &n)) {
                    SegHit::None => {}
                    SegHit::Degenerate => {
                        return Err(Error::NonTransverse(format!(
                            "polyline meets edge {ei} non-transversally"
                        )))
                    }
                    SegHit::Proper { s, .. } => {
                        let up = e.vec.cross(&dir) < Q::from_integer(0.into());
                        hits.push((s, Token::new(ei, up)));
                    }
                }
            }
        }
        hits.sort_by(|x, y| x.0.cmp(&y.0));
        if hits.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::NonTransverse(
                "polyline passes through a vertex".into(),
            ));
        }
        seq.extend(hits.into_iter().map(|(_, x)| x));
    }
    Ok(seq)
}

/// Crossing sequence after translating the polyline by a small vector that
/// stays clear of the punctures, if needed for general position.
pub fn crossings_perturbed(t: &Triangulation, poly: &Polyline) -> Result<Vec<Token>> {
    let clear = poly.clearance2(t.punctures().points());
    if clear == Q::from_integer(0.into()) {
        return Err(Error::PunctureOnCurve(
            "polyline passes through a puncture".into(),
        ));
    }
    match crossings(t, poly) {
        Err(Error::NonTransverse(_)) => {}
        other => return other,
    }
    let mut r = q(1, 4);
    while &r * &r * Q::from_integer(16.into()) > clear {
        r /= Q::from_integer(2.into());
    }
    for k in 1..40i64 {
        let dir = V2::new(q(1, 1), q(7 * k, 13 * k + 11));
        let v = dir.scale(&(&r / Q::from_integer(2.into()) / Q::from_integer(k.into())));
        match crossings(t, &poly.translated(&v)) {
            Err(Error::NonTransverse(_)) => continue,
            other => return other,
        }
    }
    Err(Error::NonTransverse(
        "no small translation puts the polyline in general position".into(),
    ))
}

impl NormalCurve {
    /// Class of a closed polyline avoiding the punctures.
    pub fn from_polyline(t: &Triangulation, poly: &Polyline) -> Result<NormalCurve> {
        NormalCurve::normalize(&crossings_perturbed(t, poly)?, t)
    }

    /// A polyline representative: one vertex on each crossed edge.
    pub fn to_polyline(&self, t: &Triangulation) -> Result<Polyline> {
        let comps = trace_indexed(t, self.weights(), DEFAULT_MAX_WEIGHT)?;
        let comp = &comps[0];
        let mut off = V2::zero();
        let mut verts = Vec::with_capacity(comp.len());
        for &(x, i) in comp {
            let e = t.edge(x.edge);
            let w = self.weights()[x.edge] as i64;
            let (lt, ls) = t.locate(super::Side::new(x.edge, true));
            let tail = t.corners(lt)[ls].clone();
            let n = t.chart_shift(x.edge);
            let frac = q(i as i64 + 1, w + 1);
            let along = e.vec.scale(&frac);
            if x.up {
                verts.push(&(&off + &tail) + &along);
                off = &off - &n;
            } else {
                verts.push(&(&(&off + &tail) + &n) + &along);
                off = &off + &n;
            }
        }
        use num_traits::ToPrimitive;
        let d = (
            off.x.to_integer().to_i64().unwrap(),
            off.y.to_integer().to_i64().unwrap(),
        );
        Ok(Polyline::new(verts, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::farey::Slope;
    use crate::tricurves::{straight_curves, PunctureSet};

    fn v(a: i64, b: i64, c: i64, d: i64) -> V2 {
        V2::new(q(a, b), q(c, d))
    }

    fn one() -> Triangulation {
        Triangulation::build(&PunctureSet::origin()).unwrap()
    }

    #[test]
    fn horizontal_loop() {
        let t = one();
        let c =
            NormalCurve::from_polyline(&t, &Polyline::new(vec![v(0, 1, 1, 2)], (1, 0))).unwrap();
        assert_eq!(c.homology(), (1, 0));
    }

    #[test]
    fn loop_around_puncture_is_inessential() {
        let t = one();
        let sq = Polyline::new(
            vec![
                v(-1, 4, -1, 4),
                v(1, 4, -1, 4),
                v(1, 4, 1, 4),
                v(-1, 4, 1, 4),
            ],
            (0, 0),
        );
        assert_eq!(
            NormalCurve::from_polyline(&t, &sq).unwrap_err(),
            Error::Inessential
        );
    }

    #[test]
    fn contractible_wiggle_is_inessential() {
        let t = one();
        let tri = Polyline::new(vec![v(1, 5, 1, 2), v(4, 5, 1, 2), v(1, 2, 3, 5)], (0, 0));
        assert_eq!(
            NormalCurve::from_polyline(&t, &tri).unwrap_err(),
            Error::Inessential
        );
    }

    #[test]
    fn touching_an_edge_is_perturbed() {
        let t = one();
        let c =
            NormalCurve::from_polyline(&t, &Polyline::new(vec![v(1, 2, 1, 2)], (1, 0))).unwrap();
        assert_eq!(c.homology(), (1, 0));
        let through = Polyline::new(vec![v(1, 3, 1, 3)], (1, 1));
        assert!(matches!(
            NormalCurve::from_polyline(&t, &through),
            Err(Error::PunctureOnCurve(_))
        ));
    }

    #[test]
    fn polyline_roundtrip() {
        let p = PunctureSet::new(vec![V2::int(0, 0), v(1, 3, 1, 2), v(2, 3, 1, 5)]).unwrap();
        let t = Triangulation::build(&p).unwrap();
        for s in [
            Slope::new(1, 0).unwrap(),
            Slope::new(2, 3).unwrap(),
            Slope::new(-1, 2).unwrap(),
        ] {
            for c in straight_curves(&t, &s).unwrap() {
                let poly = c.to_polyline(&t).unwrap();
                let back = NormalCurve::from_polyline(&t, &poly).unwrap();
                assert_eq!(back, c);
            }
        }
    }
}
