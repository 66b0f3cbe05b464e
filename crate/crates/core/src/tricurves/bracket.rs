//! Adjacency and bracketed distances in the curve graph of the punctured
//! torus.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use super::intersection::geometric_intersection;
use super::normal::NormalCurve;
use super::straight::straight_curves;
use super::triangulation::Triangulation;
use crate::error::{Error, Result};
use crate::farey::{farey_distance, farey_ladder, intersection_number, Slope};

/// `true` iff the curve does not separate the punctured torus.
pub fn is_nonseparating(a: &NormalCurve) -> bool {
    a.is_nonseparating()
}

/// Edge relation of the graph: distinct classes meeting at most once.
pub fn adjacent(t: &Triangulation, a: &NormalCurve, b: &NormalCurve) -> Result<bool> {
    if !a.is_nonseparating() || !b.is_nonseparating() {
        return Err(Error::Separating);
    }
    Ok(a != b && geometric_intersection(t, a, b)? <= 1)
}

/// Search limits for [`distance_bracket`].
#[derive(Clone, Debug, Serialize)]
pub struct BracketBudget {
    /// Farey ladder vertices taken between the two homology slopes.
    pub ladder_limit: usize,
    /// All slopes of at most this height join the pool.
    pub extra_height: u64,
    /// Maximum number of curves searched.
    pub max_pool: usize,
    /// Orbit curves heavier than this are not computed.
    pub max_weight: u64,
}

impl Default for BracketBudget {
    fn default() -> Self {
        BracketBudget {
            ladder_limit: 64,
            extra_height: 2,
            max_pool: 600,
            max_weight: 2_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LowerCertificate {
    Identity,
    Distinct,
    Intersection {
        count: u64,
    },
    /// Distance of the homology slopes in the Farey graph; filling in the
    /// punctures never increases distance.
    Forgetful {
        from: String,
        to: String,
        distance: u64,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct DistanceBracket {
    pub lo: u64,
    /// `None` when no path was found within the budget.
    pub hi: Option<u64>,
    pub lower: LowerCertificate,
    /// Consecutive curves are adjacent; empty when `hi` is `None`.
    #[serde(serialize_with = "ser_path")]
    pub path: Vec<NormalCurve>,
    pub pool: usize,
    pub budget_exhausted: bool,
}

fn ser_path<S: serde::Serializer>(p: &[NormalCurve], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(|c| c.to_text()))
}

impl DistanceBracket {
    pub fn is_exact(&self) -> bool {
        self.hi == Some(self.lo)
    }

    pub fn describe(&self) -> String {
        match self.hi {
            Some(h) => format!("[{}, {}]", self.lo, h),
            None => format!("[{}, inf]", self.lo),
        }
    }
}

fn slopes_of_height(h: u64) -> Vec<Slope> {
    let h = h as i64;
    let mut out = Vec::new();
    for q in 0..=h {
        for p in -h..=h {
            if let Ok(s) = Slope::new(p, q) {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
    }
    out
}

fn lower_bound(
    t: &Triangulation,
    a: &NormalCurve,
    b: &NormalCurve,
) -> Result<(u64, LowerCertificate)> {
    if a == b {
        return Ok((0, LowerCertificate::Identity));
    }
    let mut best = (1, LowerCertificate::Distinct);
    let i = geometric_intersection(t, a, b)?;
    if i >= 2 {
        best = (2, LowerCertificate::Intersection { count: i });
    }
    let (sa, sb) = (a.slope().unwrap(), b.slope().unwrap());
    let d = farey_distance(&sa, &sb);
    if d > best.0 {
        best = (
            d,
            LowerCertificate::Forgetful {
                from: sa.to_string(),
                to: sb.to_string(),
                distance: d,
            },
        );
    }
    Ok(best)
}

/// Sound bracket `lo <= d(a, b) <= hi`. The upper bound is a path found by
/// breadth-first search over a pool of straight curves on slopes near the
/// Farey geodesics between the homology slopes.
pub fn distance_bracket(
    t: &Triangulation,
    a: &NormalCurve,
    b: &NormalCurve,
    budget: &BracketBudget,
) -> Result<DistanceBracket> {
    if !a.is_nonseparating() || !b.is_nonseparating() {
        return Err(Error::Separating);
    }
    let (lo, lower) = lower_bound(t, a, b)?;
    if lo == 0 {
        return Ok(DistanceBracket {
            lo,
            hi: Some(0),
            lower,
            path: vec![a.clone()],
            pool: 1,
            budget_exhausted: false,
        });
    }
    let (sa, sb) = (a.slope().unwrap(), b.slope().unwrap());
    let mut slopes: BTreeSet<(u64, Slope)> = BTreeSet::new();
    let key = |s: &Slope| (s.height().to_u64().unwrap_or(u64::MAX), s.clone());
    for s in farey_ladder(&sa, &sb, budget.ladder_limit) {
        slopes.insert(key(&s));
    }
    for s in slopes_of_height(budget.extra_height) {
        slopes.insert(key(&s));
    }
    let mut pool: Vec<NormalCurve> = vec![a.clone(), b.clone()];
    let mut exhausted = false;
    for (_, s) in &slopes {
        for c in straight_curves(t, s)? {
            if pool.len() >= budget.max_pool {
                exhausted = true;
                break;
            }
            if !pool.contains(&c) {
                pool.push(c);
            }
        }
    }
    let slope_of: Vec<Slope> = pool.iter().map(|c| c.slope().unwrap()).collect();
    let adj: Vec<Vec<usize>> = (0..pool.len())
        .into_par_iter()
        .map(|i| {
            (0..pool.len())
                .filter(|&j| {
                    j != i
                        && intersection_number(&slope_of[i], &slope_of[j]) <= One::one()
                        && geometric_intersection(t, &pool[i], &pool[j]).is_ok_and(|x| x <= 1)
                })
                .collect()
        })
        .collect();
    let mut prev = vec![usize::MAX; pool.len()];
    let mut dist = vec![u64::MAX; pool.len()];
    dist[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        if u == 1 {
            break;
        }
        for &v in &adj[u] {
            if dist[v] == u64::MAX {
                dist[v] = dist[u] + 1;
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    let (hi, path) = if dist[1] == u64::MAX {
        (None, Vec::new())
    } else {
        let mut path = vec![1usize];
        while *path.last().unwrap() != 0 {
            path.push(prev[*path.last().unwrap()]);
        }
        path.reverse();
        (
            Some(dist[1]),
            path.into_iter().map(|i| pool[i].clone()).collect(),
        )
    };
    if let Some(h) = hi {
        debug_assert!(h >= lo, "unsound bracket {lo} > {h}");
    }
    Ok(DistanceBracket {
        lo,
        hi,
        lower,
        path,
        pool: pool.len(),
        budget_exhausted: exhausted || hi.is_none(),
    })
}

/// Checks a claimed path: consecutive curves adjacent.
pub fn verify_path(t: &Triangulation, path: &[NormalCurve]) -> Result<bool> {
    for w in path.windows(2) {
        if !adjacent(t, &w[0], &w[1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::tricurves::{straight_curve, PunctureSet, V2};

    fn sl(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn one_puncture_matches_farey() {
        let t = Triangulation::build(&PunctureSet::origin()).unwrap();
        let a = straight_curve(&t, &sl(1, 0)).unwrap();
        let b = straight_curve(&t, &sl(2, 5)).unwrap();
        let br = distance_bracket(&t, &a, &b, &BracketBudget::default()).unwrap();
        assert_eq!((br.lo, br.hi), (3, Some(3)));
        assert!(verify_path(&t, &br.path).unwrap());
        let same = distance_bracket(&t, &a, &a, &BracketBudget::default()).unwrap();
        assert_eq!((same.lo, same.hi), (0, Some(0)));
    }

    #[test]
    fn two_punctures_intersecting_twice() {
        let p = PunctureSet::new(vec![V2::int(0, 0), V2::new(q(1, 2), q(1, 2))]).unwrap();
        let t = Triangulation::build(&p).unwrap();
        let a = straight_curve(&t, &sl(1, 0)).unwrap();
        let b = straight_curve(&t, &sl(1, 2)).unwrap();
        assert_eq!(geometric_intersection(&t, &a, &b).unwrap(), 2);
        assert!(!adjacent(&t, &a, &b).unwrap());
        let br = distance_bracket(&t, &a, &b, &BracketBudget::default()).unwrap();
        assert_eq!((br.lo, br.hi), (2, Some(2)));
        assert!(verify_path(&t, &br.path).unwrap());
    }
}
