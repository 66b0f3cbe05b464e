//! Geometric triangulations of the flat torus with vertices at the
//! punctures, and the canonical (perturbed-Delaunay) triangulation.

use std::cmp::Ordering;

use sha2::{Digest, Sha256};

use super::geometry::{incircle_perturbed, orient, V2};
use super::punctures::PunctureSet;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};

/// One side of a triangle: an edge traversed forwards (tail to head) or
/// backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Side {
    pub edge: usize,
    pub fwd: bool,
}

impl Side {
    pub fn new(edge: usize, fwd: bool) -> Side {
        Side { edge, fwd }
    }

    pub fn rev(self) -> Side {
        Side {
            edge: self.edge,
            fwd: !self.fwd,
        }
    }
}

/// An edge from `tail` to `head` realised by the straight segment
/// `pos(tail) -> pos(tail) + vec` in the universal cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub vec: V2,
}

/// Triangulation of the torus whose vertex set is a [`PunctureSet`].
///
/// Triangles list their sides counterclockwise. Edge vectors are kept
/// consistent under flips, so they always describe a lift of each edge even
/// when a flip sequence is replayed purely combinatorially.
#[derive(Clone, Debug)]
pub struct Triangulation {
    punctures: PunctureSet,
    edges: Vec<Edge>,
    tris: Vec<[Side; 3]>,
    /// `loc[e][0]`: (triangle, slot) of the forward side; `loc[e][1]`: backward.
    loc: Vec<[(usize, usize); 2]>,
    id: std::sync::OnceLock<String>,
}

/// The four outer sides of the quadrilateral around an edge and its corners
/// in a local chart with the edge tail at the origin.
pub(crate) struct Quad {
    pub t1: usize,
    pub t2: usize,
    /// `a`, `b` follow the forward side in `t1`; `c`, `d` follow the backward
    /// side in `t2`. Opposite pairs are `(a, c)` and `(b, d)`.
    pub a: Side,
    pub b: Side,
    pub c: Side,
    pub d: Side,
    pub p: V2,
    pub q: V2,
    pub r: V2,
    pub s: V2,
}

impl Triangulation {
    pub fn punctures(&self) -> &PunctureSet {
        &self.punctures
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_triangles(&self) -> usize {
        self.tris.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.punctures.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn triangle(&self, t: usize) -> &[Side; 3] {
        &self.tris[t]
    }

    pub fn triangles(&self) -> &[[Side; 3]] {
        &self.tris
    }

    /// (triangle, slot) holding the given side.
    pub fn locate(&self, s: Side) -> (usize, usize) {
        self.loc[s.edge][if s.fwd { 0 } else { 1 }]
    }

    pub fn side_vec(&self, s: Side) -> V2 {
        let v = &self.edges[s.edge].vec;
        if s.fwd {
            v.clone()
        } else {
            -v
        }
    }

    pub fn side_start(&self, s: Side) -> usize {
        let e = &self.edges[s.edge];
        if s.fwd {
            e.tail
        } else {
            e.head
        }
    }

    pub fn side_end(&self, s: Side) -> usize {
        let e = &self.edges[s.edge];
        if s.fwd {
            e.head
        } else {
            e.tail
        }
    }

    /// Corner positions of triangle `t` in its chart: the start of side 0 at
    /// its puncture position in `[0, 1)^2`.
    pub fn corners(&self, t: usize) -> [V2; 3] {
        let [s0, s1, _] = self.tris[t];
        let c0 = self.punctures.points()[self.side_start(s0)].clone();
        let c1 = &c0 + &self.side_vec(s0);
        let c2 = &c1 + &self.side_vec(s1);
        [c0, c1, c2]
    }

    /// Integer translation `n` such that a point `z` of the chart of the
    /// triangle left of `e` sits at `z + n` in the chart of the triangle
    /// right of `e`.
    pub fn chart_shift(&self, e: usize) -> V2 {
        let (t1, i1) = self.loc[e][0];
        let (t2, i2) = self.loc[e][1];
        let tail_in_t1 = self.corners(t1)[i1].clone();
        let tail_in_t2 = self.corners(t2)[(i2 + 1) % 3].clone();
        &tail_in_t2 - &tail_in_t1
    }

    fn rebuild_loc(&mut self) {
        self.id = Default::default();
        self.loc = vec![[(usize::MAX, 0); 2]; self.edges.len()];
        for (t, sides) in self.tris.iter().enumerate() {
            for (i, s) in sides.iter().enumerate() {
                self.loc[s.edge][if s.fwd { 0 } else { 1 }] = (t, i);
            }
        }
    }

    fn set_loc(&mut self, t: usize) {
        for i in 0..3 {
            let s = self.tris[t][i];
            self.loc[s.edge][if s.fwd { 0 } else { 1 }] = (t, i);
        }
    }

    pub(crate) fn quad(&self, e: usize) -> Quad {
        let (t1, i1) = self.loc[e][0];
        let (t2, i2) = self.loc[e][1];
        let a = self.tris[t1][(i1 + 1) % 3];
        let b = self.tris[t1][(i1 + 2) % 3];
        let c = self.tris[t2][(i2 + 1) % 3];
        let d = self.tris[t2][(i2 + 2) % 3];
        let p = V2::zero();
        let q = self.edges[e].vec.clone();
        let r = &q + &self.side_vec(a);
        let s = self.side_vec(c);
        Quad {
            t1,
            t2,
            a,
            b,
            c,
            d,
            p,
            q,
            r,
            s,
        }
    }

    /// Edge `e` passes the (perturbed) empty-circle test.
    pub fn is_locally_delaunay(&self, e: usize) -> bool {
        let qd = self.quad(e);
        incircle_perturbed(&qd.p, &qd.q, &qd.r, &qd.s) != Ordering::Greater
    }

    /// The quadrilateral around `e` is strictly convex.
    pub fn is_flippable(&self, e: usize) -> bool {
        let qd = self.quad(e);
        let o1 = orient(&qd.r, &qd.s, &qd.p);
        let o2 = orient(&qd.r, &qd.s, &qd.q);
        o1 != Ordering::Equal && o2 != Ordering::Equal && o1 != o2
    }

    /// Replaces `e` by the other diagonal of its quadrilateral, keeping the
    /// label. No geometric check.
    pub fn flip(&mut self, e: usize) {
        let qd = self.quad(e);
        let tail = self.side_start(qd.b);
        let head = self.side_end(qd.c);
        let vec = &self.side_vec(qd.b) + &self.side_vec(qd.c);
        self.edges[e] = Edge { tail, head, vec };
        self.tris[qd.t1] = [Side::new(e, true), qd.d, qd.a];
        self.tris[qd.t2] = [Side::new(e, false), qd.b, qd.c];
        self.set_loc(qd.t1);
        self.set_loc(qd.t2);
        self.id = Default::default();
    }

    /// Lawson flips until every edge is locally Delaunay (perturbed metric).
    /// Returns the flipped edge labels in order.
    pub fn make_delaunay(&mut self, max_flips: usize) -> Result<Vec<usize>> {
        let mut flips = Vec::new();
        let mut stack: Vec<usize> = (0..self.edges.len()).rev().collect();
        let mut queued = vec![true; self.edges.len()];
        while let Some(e) = stack.pop() {
            queued[e] = false;
            if self.is_locally_delaunay(e) {
                continue;
            }
            if !self.is_flippable(e) {
                return Err(Error::Flip(format!(
                    "edge {e} violates Delaunay but is not flippable"
                )));
            }
            let qd = self.quad(e);
            self.flip(e);
            flips.push(e);
            if flips.len() > max_flips {
                return Err(Error::Budget(format!("more than {max_flips} Lawson flips")));
            }
            for s in [qd.a, qd.b, qd.c, qd.d] {
                if !queued[s.edge] {
                    queued[s.edge] = true;
                    stack.push(s.edge);
                }
            }
        }
        Ok(flips)
    }

    /// Canonical triangulation of the punctured torus: Delaunay for the flat
    /// metric with cocircular ties broken by a fixed infinitesimal
    /// perturbation of the metric; labels sorted by geometry.
    pub fn build(punctures: &PunctureSet) -> Result<Triangulation> {
        let pts = punctures.points();
        let mut t = Triangulation::one_vertex(punctures.clone());
        for v in 1..pts.len() {
            t.insert(v)?;
        }
        t.make_delaunay(1_000_000)?;
        Ok(t.canonical())
    }

    fn one_vertex(punctures: PunctureSet) -> Triangulation {
        let edges = vec![
            Edge {
                tail: 0,
                head: 0,
                vec: V2::int(1, 0),
            },
            Edge {
                tail: 0,
                head: 0,
                vec: V2::int(0, 1),
            },
            Edge {
                tail: 0,
                head: 0,
                vec: V2::int(1, 1),
            },
        ];
        let tris = vec![
            [Side::new(0, true), Side::new(1, true), Side::new(2, false)],
            [Side::new(2, true), Side::new(0, false), Side::new(1, false)],
        ];
        let mut t = Triangulation {
            punctures,
            edges,
            tris,
            loc: Vec::new(),
            id: Default::default(),
        };
        t.rebuild_loc();
        t
    }

    /// Inserts puncture `v` (whose position is already in the set) into the
    /// current triangulation of the punctures `0..v`.
    fn insert(&mut self, v: usize) -> Result<()> {
        let x = self.punctures.points()[v].clone();
        for t in 0..self.tris.len() {
            let cs = self.corners(t);
            let min = |f: &dyn Fn(&V2) -> &Q| cs.iter().map(f).min().unwrap().clone();
            let max = |f: &dyn Fn(&V2) -> &Q| cs.iter().map(f).max().unwrap().clone();
            let (x0, x1) = (min(&|p| &p.x), max(&|p| &p.x));
            let (y0, y1) = (min(&|p| &p.y), max(&|p| &p.y));
            use num_traits::ToPrimitive;
            let nx0 = (x0 - &x.x).floor().to_integer().to_i64().unwrap();
            let nx1 = (x1 - &x.x).ceil().to_integer().to_i64().unwrap();
            let ny0 = (y0 - &x.y).floor().to_integer().to_i64().unwrap();
            let ny1 = (y1 - &x.y).ceil().to_integer().to_i64().unwrap();
            for nx in nx0..=nx1 {
                for ny in ny0..=ny1 {
                    let y = &x + &V2::int(nx, ny);
                    let o: Vec<Ordering> = (0..3)
                        .map(|i| orient(&cs[i], &cs[(i + 1) % 3], &y))
                        .collect();
                    if o.contains(&Ordering::Less) {
                        continue;
                    }
                    let zeros: Vec<usize> = (0..3).filter(|&i| o[i] == Ordering::Equal).collect();
                    match zeros.len() {
                        0 => {
                            self.split_triangle(t, v, &y, &cs);
                            return Ok(());
                        }
                        1 => {
                            self.split_edge(t, zeros[0], v, &y, &cs);
                            return Ok(());
                        }
                        _ => return Err(Error::DuplicatePuncture(x.to_string())),
                    }
                }
            }
        }
        Err(Error::Degenerate(format!("could not locate puncture {x}")))
    }

    fn split_triangle(&mut self, t: usize, v: usize, y: &V2, cs: &[V2; 3]) {
        let sides = self.tris[t];
        let base = self.edges.len();
        for (i, c) in cs.iter().enumerate() {
            let start = self.side_start(sides[i]);
            self.edges.push(Edge {
                tail: start,
                head: v,
                vec: y - c,
            });
        }
        let f = |i: usize| base + i;
        self.tris[t] = [sides[0], Side::new(f(1), true), Side::new(f(0), false)];
        self.tris
            .push([sides[1], Side::new(f(2), true), Side::new(f(1), false)]);
        self.tris
            .push([sides[2], Side::new(f(0), true), Side::new(f(2), false)]);
        self.rebuild_loc();
    }

    fn split_edge(&mut self, t: usize, slot: usize, v: usize, y: &V2, cs: &[V2; 3]) {
        let e = self.tris[t][slot].edge;
        // chart position of the tail of e in triangle t
        let side = self.tris[t][slot];
        let tail_pos = if side.fwd {
            cs[slot].clone()
        } else {
            cs[(slot + 1) % 3].clone()
        };
        let vrel = y - &tail_pos;
        let qd = self.quad(e);
        let (p_idx, q_idx) = (self.edges[e].tail, self.edges[e].head);
        let r_idx = self.side_end(qd.a);
        let s_idx = self.side_end(qd.c);
        let g = self.edges.len();
        let h = g + 1;
        let k = g + 2;
        let evec = self.edges[e].vec.clone();
        self.edges[e] = Edge {
            tail: p_idx,
            head: v,
            vec: vrel.clone(),
        };
        self.edges.push(Edge {
            tail: v,
            head: q_idx,
            vec: &evec - &vrel,
        });
        self.edges.push(Edge {
            tail: v,
            head: r_idx,
            vec: &qd.r - &vrel,
        });
        self.edges.push(Edge {
            tail: v,
            head: s_idx,
            vec: &qd.s - &vrel,
        });
        let t1b = self.tris.len();
        let t2b = t1b + 1;
        self.tris[qd.t1] = [Side::new(e, true), Side::new(h, true), qd.b];
        self.tris
            .push([Side::new(g, true), qd.a, Side::new(h, false)]);
        self.tris[qd.t2] = [Side::new(g, false), Side::new(k, true), qd.d];
        self.tris
            .push([Side::new(e, false), qd.c, Side::new(k, false)]);
        debug_assert_eq!(self.tris.len(), t2b + 1);
        self.rebuild_loc();
    }

    /// Key identifying an edge as a segment of the torus, independent of its
    /// label and direction.
    pub fn edge_key(&self, e: usize) -> (usize, usize, V2) {
        let ed = &self.edges[e];
        let neg = -&ed.vec;
        let pos_dir = ed.vec > neg;
        if ed.tail < ed.head || (ed.tail == ed.head && pos_dir) {
            (ed.tail, ed.head, ed.vec.clone())
        } else {
            (ed.head, ed.tail, neg)
        }
    }

    /// Relabels edges and triangles in a canonical geometric order.
    /// Returns the triangulation and `perm[old] = new`.
    pub fn canonical_with_perm(&self) -> (Triangulation, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.edges.len()).collect();
        order.sort_by_key(|&e| self.edge_key(e));
        let mut perm = vec![0; self.edges.len()];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        let edges: Vec<Edge> = order
            .iter()
            .map(|&old| {
                let (tail, head, vec) = self.edge_key(old);
                Edge { tail, head, vec }
            })
            .collect();
        let flipped: Vec<bool> = (0..self.edges.len())
            .map(|old| self.edge_key(old).2 != self.edges[old].vec)
            .collect();
        let mut tris: Vec<[Side; 3]> = self
            .tris
            .iter()
            .map(|tri| {
                let mut s = tri.map(|s| Side::new(perm[s.edge], s.fwd != flipped[s.edge]));
                let k = (0..3).min_by_key(|&i| s[i]).unwrap();
                s.rotate_left(k);
                s
            })
            .collect();
        tris.sort();
        let mut t = Triangulation {
            punctures: self.punctures.clone(),
            edges,
            tris,
            loc: Vec::new(),
            id: Default::default(),
        };
        t.rebuild_loc();
        (t, perm)
    }

    pub fn canonical(&self) -> Triangulation {
        self.canonical_with_perm().0
    }

    /// Structural and geometric consistency.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Degenerate(m));
        let (v, e, f) = (
            self.num_vertices() as i64,
            self.num_edges() as i64,
            self.num_triangles() as i64,
        );
        if v - e + f != 0 {
            return bad(format!("Euler count {v} - {e} + {f} != 0"));
        }
        for (t, sides) in self.tris.iter().enumerate() {
            let mut sum = V2::zero();
            for i in 0..3 {
                if self.side_end(sides[i]) != self.side_start(sides[(i + 1) % 3]) {
                    return bad(format!("triangle {t} is not closed"));
                }
                sum = &sum + &self.side_vec(sides[i]);
            }
            if !sum.is_zero() {
                return bad(format!("triangle {t} vectors do not close"));
            }
            if sides[0].edge == sides[1].edge
                || sides[1].edge == sides[2].edge
                || sides[0].edge == sides[2].edge
            {
                return bad(format!("triangle {t} repeats an edge"));
            }
        }
        for (i, ed) in self.edges.iter().enumerate() {
            let p = self.punctures.points();
            if !(&(&p[ed.tail] + &ed.vec) - &p[ed.head]).is_integral() {
                return bad(format!("edge {i} does not end at its head"));
            }
        }
        Ok(())
    }

    /// Every triangle is positively oriented in the flat metric.
    pub fn is_geometric(&self) -> bool {
        (0..self.tris.len()).all(|t| {
            let c = self.corners(t);
            orient(&c[0], &c[1], &c[2]) == Ordering::Greater
        })
    }

    /// Weights of the peripheral curve around puncture `v`.
    pub fn link_weights(&self, v: usize) -> Vec<u64> {
        self.edges
            .iter()
            .map(|e| (e.tail == v) as u64 + (e.head == v) as u64)
            .collect()
    }

    /// Stable text form; its SHA-256 is the triangulation hash.
    pub fn to_text(&self) -> String {
        let mut s = String::from("curvelab-triangulation v1\n");
        for p in self.punctures.points() {
            s.push_str(&format!("vertex {} {}\n", fmt_q(&p.x), fmt_q(&p.y)));
        }
        for e in &self.edges {
            s.push_str(&format!(
                "edge {} {} {} {}\n",
                e.tail,
                e.head,
                fmt_q(&e.vec.x),
                fmt_q(&e.vec.y)
            ));
        }
        for t in &self.tris {
            let parts: Vec<String> = t
                .iter()
                .map(|s| format!("{}{}", if s.fwd { "+" } else { "-" }, s.edge))
                .collect();
            s.push_str(&format!("triangle {}\n", parts.join(" ")));
        }
        s
    }

    pub fn hash(&self) -> String {
        self.id
            .get_or_init(|| {
                let digest = Sha256::digest(self.to_text().as_bytes());
                hex::encode(&digest[..8])
            })
            .clone()
    }

    /// Same combinatorics and geometry.
    pub fn same_as(&self, other: &Triangulation) -> bool {
        self.to_text() == other.to_text()
    }

    /// Image of this triangulation under the linear map `m` (which must
    /// preserve the puncture set); `perm[i]` is the index of the image of
    /// puncture `i`. Labels are kept.
    pub fn transformed(&self, m: &crate::farey::ToralMatrix, perm: &[usize]) -> Triangulation {
        let apply = |v: &V2| -> V2 {
            let a = Q::from_integer(m.a.clone());
            let b = Q::from_integer(m.b.clone());
            let c = Q::from_integer(m.c.clone());
            let d = Q::from_integer(m.d.clone());
            V2::new(&a * &v.x + &b * &v.y, &c * &v.x + &d * &v.y)
        };
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                tail: perm[e.tail],
                head: perm[e.head],
                vec: apply(&e.vec),
            })
            .collect();
        let mut t = Triangulation {
            punctures: self.punctures.clone(),
            edges,
            tris: self.tris.clone(),
            loc: Vec::new(),
            id: Default::default(),
        };
        t.rebuild_loc();
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn pset(pts: &[(i64, i64, i64, i64)]) -> PunctureSet {
        PunctureSet::new(
            pts.iter()
                .map(|&(a, b, c, d)| V2::new(q(a, b), q(c, d)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn one_point() {
        let t = Triangulation::build(&PunctureSet::origin()).unwrap();
        assert_eq!(t.num_edges(), 3);
        assert_eq!(t.num_triangles(), 2);
        t.validate().unwrap();
        assert!(t.is_geometric());
        assert!((0..3).all(|e| t.is_locally_delaunay(e)));
    }

    #[test]
    fn two_points() {
        let t = Triangulation::build(&pset(&[(0, 1, 0, 1), (1, 2, 1, 2)])).unwrap();
        assert_eq!(t.num_edges(), 6);
        assert_eq!(t.num_triangles(), 4);
        t.validate().unwrap();
        assert!(t.is_geometric());
    }

    #[test]
    fn construction_is_order_independent_and_deterministic() {
        let a = pset(&[(0, 1, 0, 1), (1, 3, 1, 3), (2, 3, 2, 3)]);
        let t1 = Triangulation::build(&a).unwrap();
        let t2 = Triangulation::build(&a).unwrap();
        assert!(t1.same_as(&t2));
        t1.validate().unwrap();
        assert!(t1.is_geometric());
        assert!((0..t1.num_edges()).all(|e| t1.is_locally_delaunay(e)));
        // collinear triple on the diagonal: pinned hash
        assert_eq!(t1.num_edges(), 9);
        assert_eq!(t1.hash(), t2.hash());
    }

    #[test]
    fn many_points_validate() {
        let p = pset(&[
            (0, 1, 0, 1),
            (1, 5, 2, 5),
            (2, 5, 4, 5),
            (3, 5, 1, 5),
            (4, 5, 3, 5),
            (1, 2, 1, 7),
        ]);
        let t = Triangulation::build(&p).unwrap();
        t.validate().unwrap();
        assert!(t.is_geometric());
        assert_eq!(t.num_edges(), 18);
    }

    #[test]
    fn flip_twice_is_identity() {
        let t = Triangulation::build(&pset(&[(0, 1, 0, 1), (1, 2, 1, 3)])).unwrap();
        for e in 0..t.num_edges() {
            if t.is_flippable(e) {
                let mut u = t.clone();
                u.flip(e);
                u.validate().unwrap();
                assert!(u.is_geometric());
                u.flip(e);
                assert!(u.canonical().same_as(&t));
            }
        }
    }
}
