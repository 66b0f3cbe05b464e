//! Mapping classes of the punctured torus as flip words.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::farey::ToralMatrix;
use crate::rational::{frac_q, Q};
use crate::tricurves::{NormalCurve, PunctureSet, Triangulation, V2};

/// A mapping class `f` rel the punctures, recorded as: take the source
/// triangulation `T`, regard it as `f(T)` with the same labels, perform
/// `flips` in order, and read the result as `T` through `relabel`.
#[derive(Clone, Debug, Serialize)]
pub struct MappingClassRelP {
    #[serde(skip)]
    source: Triangulation,
    pub triangulation: String,
    pub flips: Vec<usize>,
    /// `relabel[e]`: label in `T` of edge `e` after the flips.
    pub relabel: Vec<usize>,
    /// `puncture_perm[i]`: index of `f(p_i)`.
    pub puncture_perm: Vec<usize>,
    pub matrix: Option<ToralMatrix>,
}

fn apply_matrix(a: &ToralMatrix, x: &V2) -> V2 {
    let e = |v: &num_bigint::BigInt| Q::from_integer(v.clone());
    V2::new(
        e(&a.a) * &x.x + e(&a.b) * &x.y,
        e(&a.c) * &x.x + e(&a.d) * &x.y,
    )
}

/// `perm[i]` = index of `A p_i mod Z^2`, or an error when `A P != P`.
pub fn puncture_permutation(a: &ToralMatrix, p: &PunctureSet) -> Result<Vec<usize>> {
    p.points()
        .iter()
        .map(|x| {
            let y = apply_matrix(a, x);
            let y = V2::new(frac_q(&y.x), frac_q(&y.y));
            p.index_of(&y).ok_or(Error::NotInvariant)
        })
        .collect()
}

/// `true` iff `A P = P` mod `Z^2`.
pub fn is_invariant(a: &ToralMatrix, p: &PunctureSet) -> bool {
    puncture_permutation(a, p).is_ok()
}

/// New weight of a flipped edge from the weights around it.
fn flipped_weight(t: &Triangulation, w: &[u64], e: usize) -> u64 {
    let qd = t.quad(e);
    let (a, b, c, d) = (w[qd.a.edge], w[qd.b.edge], w[qd.c.edge], w[qd.d.edge]);
    (a + c).max(b + d) - w[e]
}

impl MappingClassRelP {
    pub fn identity(t: &Triangulation) -> MappingClassRelP {
        MappingClassRelP {
            source: t.clone(),
            triangulation: t.hash(),
            flips: Vec::new(),
            relabel: (0..t.num_edges()).collect(),
            puncture_perm: (0..t.num_vertices()).collect(),
            matrix: Some(ToralMatrix::identity()),
        }
    }

    /// Class of the linear map `A` on the torus punctured at `P`, relative to
    /// the canonical triangulation of `P`.
    pub fn from_matrix(a: &ToralMatrix, p: &PunctureSet) -> Result<MappingClassRelP> {
        let perm = puncture_permutation(a, p)?;
        let t = Triangulation::build(p)?;
        MappingClassRelP::from_matrix_on(a, &t, perm)
    }

    fn from_matrix_on(
        a: &ToralMatrix,
        t: &Triangulation,
        perm: Vec<usize>,
    ) -> Result<MappingClassRelP> {
        let mut img = t.transformed(a, &perm);
        let flips = img.make_delaunay(10_000_000)?;
        let relabel = (0..img.num_edges())
            .map(|e| {
                let k = img.edge_key(e);
                (0..t.num_edges())
                    .find(|&f| t.edge_key(f) == k)
                    .ok_or(Error::TriangulationMismatch)
            })
            .collect::<Result<Vec<usize>>>()?;
        let m = MappingClassRelP {
            source: t.clone(),
            triangulation: t.hash(),
            flips,
            relabel,
            puncture_perm: perm,
            matrix: Some(a.clone()),
        };
        m.validate()?;
        Ok(m)
    }

    pub fn source(&self) -> &Triangulation {
        &self.source
    }

    /// Replays the word combinatorially and checks that the relabeling is a
    /// simplicial isomorphism onto the source.
    pub fn validate(&self) -> Result<()> {
        let t = &self.source;
        let n = t.num_edges();
        let mut seen = vec![false; n];
        for &r in &self.relabel {
            if r >= n || std::mem::replace(&mut seen[r], true) {
                return Err(Error::Flip("relabel is not a permutation".into()));
            }
        }
        let mut cur = t.clone();
        for &e in &self.flips {
            if e >= n {
                return Err(Error::Flip(format!("edge {e} out of range")));
            }
            cur.flip(e);
        }
        let norm = |tri: &[crate::tricurves::Side; 3]| -> Vec<usize> {
            let mut v: Vec<usize> = tri.iter().map(|s| s.edge).collect();
            let k = (0..3).min_by_key(|&i| v[i]).unwrap();
            v.rotate_left(k);
            v
        };
        let mut a: Vec<Vec<usize>> = cur
            .triangles()
            .iter()
            .map(|tri| norm(&tri.map(|s| crate::tricurves::Side::new(self.relabel[s.edge], s.fwd))))
            .collect();
        let mut b: Vec<Vec<usize>> = t.triangles().iter().map(norm).collect();
        a.sort();
        b.sort();
        if a != b {
            return Err(Error::Flip(
                "relabel does not return to the source triangulation".into(),
            ));
        }
        Ok(())
    }

    /// Weights of the image curve.
    pub fn act_weights(&self, w: &[u64]) -> Vec<u64> {
        let mut cur = self.source.clone();
        let mut w = w.to_vec();
        for &e in &self.flips {
            w[e] = flipped_weight(&cur, &w, e);
            cur.flip(e);
        }
        let mut out = vec![0; w.len()];
        for (e, x) in w.into_iter().enumerate() {
            out[self.relabel[e]] = x;
        }
        out
    }

    pub fn act(&self, a: &NormalCurve) -> Result<NormalCurve> {
        if a.triangulation_hash() != self.triangulation {
            return Err(Error::TriangulationMismatch);
        }
        NormalCurve::from_weights(&self.source, self.act_weights(a.weights()))
    }

    pub fn inverse(&self) -> MappingClassRelP {
        let mut inv_relabel = vec![0; self.relabel.len()];
        for (e, &r) in self.relabel.iter().enumerate() {
            inv_relabel[r] = e;
        }
        let mut inv_perm = vec![0; self.puncture_perm.len()];
        for (i, &r) in self.puncture_perm.iter().enumerate() {
            inv_perm[r] = i;
        }
        MappingClassRelP {
            source: self.source.clone(),
            triangulation: self.triangulation.clone(),
            flips: self.flips.iter().rev().map(|&e| self.relabel[e]).collect(),
            relabel: inv_relabel,
            puncture_perm: inv_perm,
            matrix: self.matrix.as_ref().map(|m| m.inverse()),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &MappingClassRelP) -> Result<MappingClassRelP> {
        if self.triangulation != other.triangulation {
            return Err(Error::TriangulationMismatch);
        }
        let mut inv_g = vec![0; other.relabel.len()];
        for (e, &r) in other.relabel.iter().enumerate() {
            inv_g[r] = e;
        }
        let mut flips = other.flips.clone();
        flips.extend(self.flips.iter().map(|&e| inv_g[e]));
        Ok(MappingClassRelP {
            source: self.source.clone(),
            triangulation: self.triangulation.clone(),
            flips,
            relabel: other.relabel.iter().map(|&r| self.relabel[r]).collect(),
            puncture_perm: other
                .puncture_perm
                .iter()
                .map(|&r| self.puncture_perm[r])
                .collect(),
            matrix: match (&self.matrix, &other.matrix) {
                (Some(a), Some(b)) => Some(a.mul(b)),
                _ => None,
            },
        })
    }

    pub fn power(&self, k: i64) -> MappingClassRelP {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = MappingClassRelP::identity(&self.source);
        acc.matrix = self.matrix.as_ref().map(|_| ToralMatrix::identity());
        for _ in 0..k.unsigned_abs() {
            acc = base.compose(&acc).expect("same triangulation");
        }
        acc
    }

    /// Text form: header binding the word to the triangulation hash, then
    /// flips, relabeling and puncture permutation as integer sequences.
    pub fn to_text(&self) -> String {
        let join = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut s = format!("flipword v1 triangulation {}\n", self.triangulation);
        if let Some(m) = &self.matrix {
            s.push_str(&format!("matrix {m}\n"));
        }
        s.push_str(&format!("flips {}\n", join(&self.flips)));
        s.push_str(&format!("relabel {}\n", join(&self.relabel)));
        s.push_str(&format!("punctures {}\n", join(&self.puncture_perm)));
        s
    }

    pub fn parse(text: &str, t: &Triangulation) -> Result<MappingClassRelP> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty flip word".into()))?;
        let hash = header
            .strip_prefix("flipword v1 triangulation ")
            .ok_or_else(|| Error::Parse(format!("bad header {header:?}")))?
            .trim();
        if hash != t.hash() {
            return Err(Error::TriangulationMismatch);
        }
        let ints = |rest: &str| -> Result<Vec<usize>> {
            rest.split_whitespace()
                .map(|x| {
                    x.parse()
                        .map_err(|_| Error::Parse(format!("bad integer {x:?}")))
                })
                .collect()
        };
        let mut m = MappingClassRelP::identity(t);
        m.matrix = None;
        for line in lines {
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            match key {
                "matrix" => m.matrix = Some(rest.trim().parse()?),
                "flips" => m.flips = ints(rest)?,
                "relabel" => m.relabel = ints(rest)?,
                "punctures" => m.puncture_perm = ints(rest)?,
                _ => return Err(Error::Parse(format!("unknown line {line:?}"))),
            }
        }
        m.validate()?;
        Ok(m)
    }

    pub fn word_length(&self) -> usize {
        self.flips.len()
    }
}

/// Matrix applied to a homology class.
pub fn act_homology(a: &ToralMatrix, h: (i64, i64)) -> (i64, i64) {
    let (x, y) = a.apply_vec(&h.0.into(), &h.1.into());
    (x.to_i64().unwrap(), y.to_i64().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::Slope;
    use crate::rational::q;
    use crate::tricurves::straight_curves;

    fn fib() -> ToralMatrix {
        "2,1,1,1".parse().unwrap()
    }

    fn canon(h: (i64, i64)) -> (i64, i64) {
        if h.1 < 0 || (h.1 == 0 && h.0 < 0) {
            (-h.0, -h.1)
        } else {
            h
        }
    }

    #[test]
    fn identity_is_empty() {
        let p = PunctureSet::new(vec![V2::int(0, 0), V2::new(q(1, 2), q(1, 3))]).unwrap();
        let m = MappingClassRelP::from_matrix(&ToralMatrix::identity(), &p).unwrap();
        assert!(m.flips.is_empty());
        assert_eq!(m.puncture_perm, vec![0, 1]);
    }

    #[test]
    fn fibonacci_one_puncture() {
        let p = PunctureSet::origin();
        let m = MappingClassRelP::from_matrix(&fib(), &p).unwrap();
        assert!(!m.flips.is_empty());
        let t = m.source().clone();
        for s in [(1, 0), (0, 1), (3, -2)] {
            let c = &straight_curves(&t, &Slope::new(s.0, s.1).unwrap()).unwrap()[0];
            let img = m.act(c).unwrap();
            assert_eq!(img.homology(), canon(act_homology(&fib(), c.homology())));
            assert_eq!(m.inverse().act(&img).unwrap(), *c);
        }
    }

    #[test]
    fn non_invariant_points_rejected() {
        let p = PunctureSet::new(vec![V2::int(0, 0), V2::new(q(1, 3), q(1, 7))]).unwrap();
        assert_eq!(
            MappingClassRelP::from_matrix(&fib(), &p).unwrap_err(),
            Error::NotInvariant
        );
    }

    #[test]
    fn invariant_set_words() {
        // fixed points of A^2 for the Fibonacci map
        let pts = [(0, 0), (1, 2), (2, 4), (3, 1), (4, 3)]
            .iter()
            .map(|&(a, b)| V2::new(q(a, 5), q(b, 5)))
            .collect::<Vec<_>>();
        let p = PunctureSet::new(pts).unwrap();
        let a = fib();
        assert!(is_invariant(&a, &p));
        let m = MappingClassRelP::from_matrix(&a, &p).unwrap();
        let t = m.source().clone();
        let m2 = MappingClassRelP::from_matrix(&a.mul(&a), &p).unwrap();
        for c in straight_curves(&t, &Slope::new(1, 0).unwrap()).unwrap() {
            let twice = m.act(&m.act(&c).unwrap()).unwrap();
            assert_eq!(twice, m2.act(&c).unwrap());
            assert_eq!(twice, m.power(2).act(&c).unwrap());
            assert_eq!(m.compose(&m.inverse()).unwrap().act(&c).unwrap(), c);
            // straight curves go to straight curves
            let img = m.act(&c).unwrap();
            let h = img.homology();
            let s = Slope::new(h.0, h.1).unwrap();
            assert!(straight_curves(&t, &s).unwrap().contains(&img));
        }
        let text = m.to_text();
        let back = MappingClassRelP::parse(&text, &t).unwrap();
        assert_eq!(back.flips, m.flips);
    }
}
