//! Fine curves: rational polygonal loops on the flat torus, bigons and
//! minimal position rel a puncture set, and fine distances computed through
//! the punctured curve graph.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, Q};
use crate::tricurves::geometry::{point_in_polygon, segment_hit, signed_area2, translations_between, SegHit};
use crate::tricurves::{distance_bracket, BracketBudget, DistanceBracket, NormalCurve, Polyline, PunctureSet, Triangulation, V2};

/// Simple closed polygonal curve on the torus with nonzero homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCurve {
    line: Polyline,
}

fn adjacent_pair(n: usize, k: usize, l: usize, shift: (i64, i64), d: (i64, i64)) -> bool {
    let zero = shift == (0, 0);
    let back = (-d.0, -d.1);
    (zero && n > 1 && (l == k + 1 || k == l + 1))
        || (k == n - 1 && l == 0 && (shift == d || shift == back))
        || (k == 0 && l == n - 1 && (shift == d || shift == back))
}

impl PolyCurve {
    /// Checks simplicity and essentiality exactly.
    pub fn validate(vertices: Vec<V2>, displacement: (i64, i64)) -> Result<PolyCurve> {
        if vertices.is_empty() {
            return Err(Error::Parse("polygon has no vertices".into()));
        }
        let line = Polyline::new(vertices, displacement);
        let segs = line.segments();
        let n = segs.len();
        for (k, (a, b)) in segs.iter().enumerate() {
            if a == b {
                return Err(Error::SelfCrossing(format!("segment {k} has zero length")));
            }
        }
        for k in 0..n {
            for l in k..n {
                let (a0, a1) = &segs[k];
                let (b0, b1) = &segs[l];
                for (nx, ny) in translations_between(a0, a1, b0, b1) {
                    if k == l && (nx, ny) == (0, 0) {
                        continue;
                    }
                    let sh = V2::int(nx, ny);
                    let (c0, c1) = (b0 + &sh, b1 + &sh);
                    let hit = segment_hit(a0, a1, &c0, &c1);
                    if hit == SegHit::None {
                        continue;
                    }
                    if adjacent_pair(n, k, l, (nx, ny), displacement) && hit == SegHit::Degenerate {
                        // consecutive segments: only the shared vertex may be common
                        let shared = if *a1 == c0 {
                            Some((a0 - a1, &c1 - &c0))
                        } else if *a0 == c1 {
                            Some((a1 - a0, &c0 - &c1))
                        } else {
                            None
                        };
                        if let Some((u, v)) = shared {
                            if !(u.cross(&v).is_zero() && u.dot(&v).is_positive()) {
                                continue;
                            }
                        }
                    }
                    return Err(Error::SelfCrossing(format!("segments {k} and {l}{} meet", if (nx, ny) == (0, 0) { String::new() } else { format!(" + ({nx}, {ny})") })));
                }
            }
        }
        if displacement == (0, 0) {
            return Err(Error::InessentialFine);
        }
        Ok(PolyCurve { line })
    }

    pub fn vertices(&self) -> &[V2] {
        &self.line.vertices
    }

    pub fn displacement(&self) -> (i64, i64) {
        self.line.displacement
    }

    pub fn polyline(&self) -> &Polyline {
        &self.line
    }

    /// Straight loop of direction `(p, q)` through `start`.
    pub fn straight(start: V2, p: i64, q: i64) -> Result<PolyCurve> {
        PolyCurve::validate(vec![start], (p, q))
    }

    /// `.poly` text: `displacement p q`, then one vertex per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("displacement {} {}\n", self.line.displacement.0, self.line.displacement.1);
        for v in &self.line.vertices {
            s.push_str(&format!("{} {}\n", fmt_q(&v.x), fmt_q(&v.y)));
        }
        s
    }

    pub fn parse(text: &str) -> Result<PolyCurve> {
        let mut lines = text.lines().map(|l| l.trim()).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty .poly file".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let d = match parts.as_slice() {
            ["displacement", p, q] => (
                p.parse().map_err(|_| Error::Parse(format!("bad displacement {p:?}")))?,
                q.parse().map_err(|_| Error::Parse(format!("bad displacement {q:?}")))?,
            ),
            _ => return Err(Error::Parse(format!("expected 'displacement p q', got {header:?}"))),
        };
        let verts = lines
            .map(|l| {
                let c: Vec<&str> = l.split_whitespace().collect();
                match c.as_slice() {
                    [x, y] => Ok(V2::new(parse_q(x)?, parse_q(y)?)),
                    _ => Err(Error::Parse(format!("expected 'x y', got {l:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        PolyCurve::validate(verts, d)
    }
}

/// A transverse crossing: position along each curve and the point mod `Z^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Crossing {
    /// (segment, parameter) on `a` and on `b`.
    on_a: (usize, Q),
    on_b: (usize, Q),
    /// Lift on segment `on_a.0` of `a`.
    point: V2,
    /// Translation taking the `b` segment's standard lift to this crossing.
    shift: V2,
}

fn crossings(a: &PolyCurve, b: &PolyCurve) -> Result<Vec<Crossing>> {
    let (sa, sb) = (a.line.segments(), b.line.segments());
    let mut out = Vec::new();
    for (i, (a0, a1)) in sa.iter().enumerate() {
        for (j, (b0, b1)) in sb.iter().enumerate() {
            for (nx, ny) in translations_between(a0, a1, b0, b1) {
                let sh = V2::int(nx, ny);
                match segment_hit(a0, a1, &(b0 + &sh), &(b1 + &sh)) {
                    SegHit::None => {}
                    SegHit::Degenerate => {
                        return Err(Error::NonTransverse(format!("segment {i} of the first curve and {j} of the second touch or overlap")))
                    }
                    SegHit::Proper { s, t, point } => out.push(Crossing { on_a: (i, s), on_b: (j, t), point, shift: sh }),
                }
            }
        }
    }
    Ok(out)
}

/// Intersection points mod `Z^2`, in order along `a`.
pub fn transverse_intersections(a: &PolyCurve, b: &PolyCurve) -> Result<Vec<V2>> {
    let mut cs = crossings(a, b)?;
    cs.sort_by(|x, y| x.on_a.cmp(&y.on_a));
    Ok(cs.into_iter().map(|c| c.point.reduce()).collect())
}

/// Half-edge of the overlay: a chain of points from one crossing to the next
/// along one curve, starting at the start node's canonical position.
#[derive(Clone, Debug)]
struct Half {
    from: usize,
    to: usize,
    chain: Vec<V2>,
    on_a: bool,
}

fn half_plane(v: &V2) -> u8 {
    if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
        0
    } else {
        1
    }
}

fn angle_cmp(u: &V2, v: &V2) -> Ordering {
    half_plane(u).cmp(&half_plane(v)).then_with(|| Q::zero().cmp(&u.cross(v)))
}

/// Edges of one curve between consecutive crossings. `keys` lists, in order
/// along the curve, each crossing's position, its point on the standard lift
/// of that segment, and its node.
fn curve_halves(curve: &PolyCurve, keys: &[((usize, Q), V2, usize)], canon: &[V2], on_a: bool) -> Vec<Half> {
    let segs = curve.line.segments();
    let n = segs.len();
    let m = keys.len();
    let d = V2::int(curve.line.displacement.0, curve.line.displacement.1);
    let mut out = Vec::new();
    for k in 0..m {
        let ((seg0, _), p0, node0) = &keys[k];
        let ((seg1, _), p1, node1) = &keys[(k + 1) % m];
        let mut chain = vec![p0.clone()];
        let wrap = k + 1 == m;
        // vertices strictly between the two crossings along the curve
        let mut s = *seg0;
        let end_seg = if wrap { seg1 + n } else { *seg1 };
        let mut off = V2::zero();
        while s < end_seg {
            let (_, b) = &segs[s % n];
            chain.push(&off + b);
            s += 1;
            if s % n == 0 {
                off = &off + &d;
            }
        }
        chain.push(if wrap { p1 + &d } else { p1.clone() });
        // move the chain so it starts at the canonical node position
        let t0 = &canon[*node0] - p0;
        let chain: Vec<V2> = chain.iter().map(|x| x + &t0).collect();
        out.push(Half { from: *node0, to: *node1, chain, on_a });
    }
    out
}

/// Bigon faces of the overlay of `a` and `b` not containing a puncture,
/// returned as polygons in the plane.
pub fn empty_bigons(a: &PolyCurve, b: &PolyCurve, p: &PunctureSet) -> Result<Vec<Vec<V2>>> {
    if a.line.clearance2(p.points()).is_zero() || b.line.clearance2(p.points()).is_zero() {
        return Err(Error::PunctureOnCurve("a puncture lies on a curve".into()));
    }
    let cs = crossings(a, b)?;
    if cs.len() < 2 {
        return Ok(Vec::new());
    }
    let canon: Vec<V2> = cs.iter().map(|c| c.point.reduce()).collect();
    let mut ka: Vec<((usize, Q), V2, usize)> = cs.iter().enumerate().map(|(i, c)| (c.on_a.clone(), c.point.clone(), i)).collect();
    ka.sort_by(|x, y| x.0.cmp(&y.0));
    let mut kb: Vec<((usize, Q), V2, usize)> = cs.iter().enumerate().map(|(i, c)| (c.on_b.clone(), &c.point - &c.shift, i)).collect();
    kb.sort_by(|x, y| x.0.cmp(&y.0));
    let mut halves = curve_halves(a, &ka, &canon, true);
    halves.extend(curve_halves(b, &kb, &canon, false));
    // twins
    let fwd = halves.len();
    for h in 0..fwd {
        let mut chain: Vec<V2> = halves[h].chain.iter().rev().cloned().collect();
        let t = &canon[halves[h].to] - &chain[0];
        chain = chain.iter().map(|x| x + &t).collect();
        halves.push(Half { from: halves[h].to, to: halves[h].from, chain, on_a: halves[h].on_a });
    }
    let twin = |h: usize| if h < fwd { h + fwd } else { h - fwd };
    let mut out_at: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, h) in halves.iter().enumerate() {
        out_at.entry(h.from).or_default().push(i);
    }
    let dir = |h: &Half| &h.chain[1] - &h.chain[0];
    for list in out_at.values_mut() {
        list.sort_by(|&x, &y| angle_cmp(&dir(&halves[x]), &dir(&halves[y])));
    }
    let next = |h: usize| -> usize {
        let v = halves[h].to;
        let back = twin(h);
        let list = &out_at[&v];
        let pos = list.iter().position(|&x| x == back).unwrap();
        list[(pos + list.len() - 1) % list.len()]
    };
    let mut seen = vec![false; halves.len()];
    let mut bigons = Vec::new();
    for start in 0..halves.len() {
        if seen[start] {
            continue;
        }
        let mut face = Vec::new();
        let mut h = start;
        loop {
            seen[h] = true;
            face.push(h);
            h = next(h);
            if h == start {
                break;
            }
        }
        if face.len() != 2 || halves[face[0]].on_a == halves[face[1]].on_a {
            continue;
        }
        let mut poly: Vec<V2> = Vec::new();
        let mut end: Option<V2> = None;
        for &f in &face {
            let c = &halves[f].chain;
            let t = end.as_ref().map_or_else(V2::zero, |e| e - &c[0]);
            for x in &c[..c.len() - 1] {
                poly.push(x + &t);
            }
            end = Some(&c[c.len() - 1] + &t);
        }
        let closing = &end.unwrap() - &poly[0];
        if !closing.is_zero() || !signed_area2(&poly).is_positive() {
            continue;
        }
        let has_puncture = p.points().iter().any(|x| {
            let (lo, hi) = bbox(&poly);
            translations_between(&lo, &hi, x, x)
                .into_iter()
                .any(|(nx, ny)| point_in_polygon(&(x + &V2::int(nx, ny)), &poly))
        });
        if !has_puncture {
            bigons.push(poly);
        }
    }
    Ok(bigons)
}

fn bbox(poly: &[V2]) -> (V2, V2) {
    let min = |f: fn(&V2) -> &Q| poly.iter().map(f).min().unwrap().clone();
    let max = |f: fn(&V2) -> &Q| poly.iter().map(f).max().unwrap().clone();
    (V2::new(min(|v| &v.x), min(|v| &v.y)), V2::new(max(|v| &v.x), max(|v| &v.y)))
}

/// `true` iff no bigon between `a` and `b` avoids `P`.
pub fn minimal_position_rel(a: &PolyCurve, b: &PolyCurve, p: &PunctureSet) -> Result<bool> {
    Ok(empty_bigons(a, b, p)?.is_empty())
}

/// Distance in the fine nonseparating curve graph, computed as the distance
/// of the classes rel `P`; requires minimal position rel `P`.
pub fn fine_distance(a: &PolyCurve, b: &PolyCurve, p: &PunctureSet, budget: &BracketBudget) -> Result<DistanceBracket> {
    fine_distance_on(a, b, &Triangulation::build(p)?, budget)
}

pub fn fine_distance_on(a: &PolyCurve, b: &PolyCurve, t: &Triangulation, budget: &BracketBudget) -> Result<DistanceBracket> {
    let bigons = empty_bigons(a, b, t.punctures())?;
    if let Some(g) = bigons.first() {
        let pts: Vec<String> = g.iter().map(|v| v.to_string()).collect();
        return Err(Error::NotMinimal(pts.join(" ")));
    }
    let ca = NormalCurve::from_polyline(t, a.polyline())?;
    let cb = NormalCurve::from_polyline(t, b.polyline())?;
    distance_bracket(t, &ca, &cb, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn v(a: i64, b: i64, c: i64, d: i64) -> V2 {
        V2::new(q(a, b), q(c, d))
    }

    fn horiz(y: Q) -> PolyCurve {
        PolyCurve::straight(V2::new(Q::zero(), y), 1, 0).unwrap()
    }

    fn bump() -> PolyCurve {
        PolyCurve::validate(vec![v(0, 1, 1, 4), v(1, 4, 1, 4), v(3, 8, 3, 4), v(5, 8, 3, 4), v(3, 4, 1, 4)], (1, 0)).unwrap()
    }

    #[test]
    fn validation() {
        assert!(PolyCurve::validate(vec![v(0, 1, 1, 3)], (1, 0)).is_ok());
        let eight = vec![v(0, 1, 0, 1), v(1, 4, 1, 4), v(1, 4, 0, 1), v(0, 1, 1, 4)];
        assert!(matches!(PolyCurve::validate(eight, (0, 0)), Err(Error::SelfCrossing(_))));
        let square = vec![v(1, 4, 1, 4), v(3, 4, 1, 4), v(3, 4, 3, 4), v(1, 4, 3, 4)];
        assert_eq!(PolyCurve::validate(square, (0, 0)).unwrap_err(), Error::InessentialFine);
        assert!(matches!(PolyCurve::validate(vec![v(0, 1, 1, 3)], (2, 0)), Err(Error::SelfCrossing(_))));
        assert!(matches!(
            PolyCurve::validate(vec![v(0, 1, 1, 3), v(1, 2, 1, 3), v(1, 4, 1, 3)], (1, 0)),
            Err(Error::SelfCrossing(_))
        ));
    }

    #[test]
    fn poly_roundtrip() {
        let b = bump();
        assert_eq!(PolyCurve::parse(&b.to_text()).unwrap(), b);
    }

    #[test]
    fn intersection_counts() {
        let a = horiz(q(1, 3));
        let b = PolyCurve::straight(v(1, 3, 0, 1), 0, 1).unwrap();
        assert_eq!(transverse_intersections(&a, &b).unwrap().len(), 1);
        assert_eq!(transverse_intersections(&a, &horiz(q(2, 3))).unwrap().len(), 0);
        let c = PolyCurve::straight(v(1, 7, 1, 11), 2, 5).unwrap();
        assert_eq!(transverse_intersections(&a, &c).unwrap().len(), 5);
    }

    #[test]
    fn bigon_detection() {
        let a = horiz(q(1, 2));
        let b = bump();
        assert_eq!(transverse_intersections(&a, &b).unwrap().len(), 2);
        // the two curves bound two bigons: the bump and the strip below `a`
        assert_eq!(empty_bigons(&a, &b, &PunctureSet::origin()).unwrap().len(), 2);
        let outside = PunctureSet::new(vec![v(0, 1, 3, 8)]).unwrap();
        assert_eq!(empty_bigons(&a, &b, &outside).unwrap().len(), 1);
        assert!(!minimal_position_rel(&a, &b, &outside).unwrap());
        let inside = PunctureSet::new(vec![v(0, 1, 3, 8), v(1, 2, 5, 8)]).unwrap();
        assert!(minimal_position_rel(&a, &b, &inside).unwrap());
        let c = PolyCurve::straight(v(1, 7, 1, 11), 2, 5).unwrap();
        assert!(minimal_position_rel(&horiz(q(1, 3)), &c, &PunctureSet::origin()).unwrap());
        let err = fine_distance(&a, &b, &outside, &BracketBudget::default()).unwrap_err();
        assert!(matches!(err, Error::NotMinimal(_)));
    }

    #[test]
    fn fine_distances() {
        let budget = BracketBudget::default();
        let a = horiz(q(1, 3));
        let b = PolyCurve::straight(v(1, 3, 0, 1), 0, 1).unwrap();
        let d = fine_distance(&a, &b, &PunctureSet::origin(), &budget).unwrap();
        assert_eq!((d.lo, d.hi), (1, Some(1)));
        let c = PolyCurve::straight(v(1, 7, 1, 11), 2, 5).unwrap();
        for p in [PunctureSet::origin(), PunctureSet::new(vec![v(1, 2, 1, 2)]).unwrap()] {
            let d = fine_distance(&a, &c, &p, &budget).unwrap();
            assert_eq!((d.lo, d.hi), (3, Some(3)));
        }
    }
}
