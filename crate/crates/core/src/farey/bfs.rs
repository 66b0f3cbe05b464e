//! Brute-force oracle: breadth-first search in the Farey graph truncated to
//! slopes with `|p|, |q| <= cap`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::slope::Slope;
use crate::error::Error;

const UNREACHED: u32 = u32::MAX;

/// The Farey graph restricted to canonical slopes with `|p|, |q| <= cap`.
pub struct FareyBall {
    cap: i64,
    vertices: Vec<(i64, i64)>,
    index: HashMap<(i64, i64), u32>,
    adj: Vec<Vec<u32>>,
}

fn canon(p: i64, q: i64) -> (i64, i64) {
    if q < 0 || (q == 0 && p < 0) {
        (-p, -q)
    } else {
        (p, q)
    }
}

/// Range of `k` with `|x0 + k c| <= cap`.
fn k_range(x0: i64, c: i64, cap: i64) -> (i64, i64) {
    if c == 0 {
        return if x0.abs() <= cap {
            (i64::MIN / 4, i64::MAX / 4)
        } else {
            (1, 0)
        };
    }
    let (lo, hi) = ((-cap - x0), (cap - x0));
    if c > 0 {
        (Integer::div_ceil(&lo, &c), Integer::div_floor(&hi, &c))
    } else {
        (Integer::div_ceil(&hi, &c), Integer::div_floor(&lo, &c))
    }
}

impl FareyBall {
    pub fn new(cap: u32) -> FareyBall {
        let cap = cap as i64;
        let mut vertices = vec![(1, 0)];
        for q in 1..=cap {
            for p in -cap..=cap {
                if p.gcd(&q) == 1 {
                    vertices.push((p, q));
                }
            }
        }
        vertices.sort();
        let index: HashMap<(i64, i64), u32> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, i as u32))
            .collect();
        let adj = vertices
            .par_iter()
            .map(|&(p, q)| {
                let g = p.extended_gcd(&q);
                // x p + y q = g = ±1; want p s - q r = 1
                let (s0, r0) = if g.gcd == 1 { (g.x, -g.y) } else { (-g.x, g.y) };
                let (a1, b1) = k_range(r0, p, cap);
                let (a2, b2) = k_range(s0, q, cap);
                let (lo, hi) = (a1.max(a2), b1.min(b2));
                let mut out: Vec<u32> = (lo..=hi)
                    .map(|k| index[&canon(r0 + k * p, s0 + k * q)])
                    .collect();
                out.sort_unstable();
                out
            })
            .collect();
        FareyBall {
            cap,
            vertices,
            index,
            adj,
        }
    }

    pub fn cap(&self) -> u32 {
        self.cap as u32
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn slopes(&self) -> impl Iterator<Item = Slope> + '_ {
        self.vertices
            .iter()
            .map(|&(p, q)| Slope::from_primitive(p.into(), q.into()))
    }

    pub fn index_of(&self, s: &Slope) -> Option<u32> {
        let p = s.p().to_i64()?;
        let q = s.q().to_i64()?;
        self.index.get(&(p, q)).copied()
    }

    pub fn slope_at(&self, i: u32) -> Slope {
        let (p, q) = self.vertices[i as usize];
        Slope::from_primitive(BigInt::from(p), BigInt::from(q))
    }

    pub fn neighbors(&self, i: u32) -> &[u32] {
        &self.adj[i as usize]
    }

    /// Distances from `src` to every vertex of the truncated graph
    /// (`u32::MAX` when unreachable inside the cap).
    pub fn bfs(&self, src: u32) -> Vec<u32> {
        let mut dist = vec![UNREACHED; self.vertices.len()];
        let mut queue = VecDeque::new();
        dist[src as usize] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &v in &self.adj[u as usize] {
                if dist[v as usize] == UNREACHED {
                    dist[v as usize] = du + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance(&self, s: &Slope, t: &Slope) -> Option<u32> {
        let (i, j) = (self.index_of(s)?, self.index_of(t)?);
        let d = self.bfs(i)[j as usize];
        (d != UNREACHED).then_some(d)
    }

    /// Every geodesic from `s` to `t` inside the truncated graph, sorted.
    pub fn all_geodesics(&self, s: &Slope, t: &Slope) -> Vec<Vec<Slope>> {
        let (Some(i), Some(j)) = (self.index_of(s), self.index_of(t)) else {
            return Vec::new();
        };
        let from_t = self.bfs(j);
        if from_t[i as usize] == UNREACHED {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut path = vec![i];
        self.extend_geodesics(&from_t, &mut path, &mut out);
        let mut out: Vec<Vec<Slope>> = out
            .into_iter()
            .map(|p: Vec<u32>| p.into_iter().map(|v| self.slope_at(v)).collect())
            .collect();
        out.sort();
        out
    }

    fn extend_geodesics(&self, from_t: &[u32], path: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let cur = *path.last().unwrap();
        let d = from_t[cur as usize];
        if d == 0 {
            out.push(path.clone());
            return;
        }
        for &v in &self.adj[cur as usize] {
            if from_t[v as usize] + 1 == d {
                path.push(v);
                self.extend_geodesics(from_t, path, out);
                path.pop();
            }
        }
    }
}

/// Result of [`farey_ball_bfs`].
#[derive(Clone, Debug, Serialize)]
pub struct BallResult {
    pub center: Slope,
    pub radius: u32,
    /// Slopes within the requested cap at distance `<= radius`.
    pub distances: BTreeMap<Slope, u32>,
    /// Caps tried, in order.
    pub caps: Vec<u32>,
    /// Whether the last two caps agreed on every requested distance.
    pub stabilized: bool,
}

/// Budget failure of [`farey_ball_bfs`], carrying the last computed ball.
#[derive(Clone, Debug)]
pub struct PartialBall {
    pub error: Error,
    pub partial: BallResult,
}

fn ball_at(
    center: &Slope,
    radius: u32,
    requested_cap: u32,
    cap: u32,
) -> Option<BTreeMap<Slope, u32>> {
    let g = FareyBall::new(cap);
    let src = g.index_of(center)?;
    let dist = g.bfs(src);
    let mut out = BTreeMap::new();
    for (i, &(p, q)) in g.vertices.iter().enumerate() {
        if p.unsigned_abs() <= requested_cap as u64
            && q.unsigned_abs() <= requested_cap as u64
            && dist[i] <= radius
        {
            out.insert(g.slope_at(i as u32), dist[i]);
        }
    }
    Some(out)
}

/// All slopes with `|p|, |q| <= cap` at distance `<= radius` from `center`.
///
/// The cap is doubled until two successive caps agree on every requested
/// distance, up to `max_cap`; exceeding it returns the partial ball.
pub fn farey_ball_bfs(
    center: &Slope,
    radius: u32,
    cap: u32,
    max_cap: u32,
) -> Result<BallResult, PartialBall> {
    let mut res = BallResult {
        center: center.clone(),
        radius,
        distances: BTreeMap::new(),
        caps: Vec::new(),
        stabilized: false,
    };
    if radius == 0 {
        res.distances.insert(center.clone(), 0);
        res.caps.push(cap);
        res.stabilized = true;
        return Ok(res);
    }
    let fail = |res: BallResult, msg: String| PartialBall {
        error: Error::Budget(msg),
        partial: res,
    };
    let mut cur_cap = cap.max(1);
    let first = match ball_at(center, radius, cap, cur_cap) {
        Some(b) => b,
        None => return Err(fail(res, format!("center {center} outside cap {cap}"))),
    };
    res.caps.push(cur_cap);
    res.distances = first;
    loop {
        let next_cap = cur_cap.saturating_mul(2);
        if next_cap > max_cap {
            return Err(fail(res, format!("no stabilization up to cap {max_cap}")));
        }
        let next = ball_at(center, radius, cap, next_cap).expect("center fits in larger cap");
        res.caps.push(next_cap);
        if next == res.distances {
            res.stabilized = true;
            return Ok(res);
        }
        res.distances = next;
        cur_cap = next_cap;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn unit_ball_of_infinity() {
        let b = farey_ball_bfs(&s(1, 0), 1, 10, 80).unwrap();
        let mut expected: BTreeMap<Slope, u32> = (-10..=10).map(|n| (s(n, 1), 1)).collect();
        expected.insert(s(1, 0), 0);
        assert_eq!(b.distances, expected);
        assert!(b.stabilized);
    }

    #[test]
    fn radius_zero() {
        let b = farey_ball_bfs(&s(3, 7), 0, 5, 5).unwrap();
        assert_eq!(b.distances.len(), 1);
        assert_eq!(b.distances[&s(3, 7)], 0);
    }

    #[test]
    fn common_neighbour() {
        let b = farey_ball_bfs(&s(0, 1), 2, 50, 200).unwrap();
        assert_eq!(b.distances[&s(2, 5)], 2);
        assert_eq!(b.distances[&s(1, 2)], 1);
    }

    #[test]
    fn budget_error_keeps_partial() {
        let e = farey_ball_bfs(&s(0, 1), 2, 8, 8).unwrap_err();
        assert!(matches!(e.error, Error::Budget(_)));
        assert!(!e.partial.distances.is_empty());
    }

    #[test]
    fn neighbours_are_symmetric() {
        let g = FareyBall::new(12);
        for i in 0..g.len() as u32 {
            for &j in g.neighbors(i) {
                assert!(g.neighbors(j).contains(&i));
            }
        }
    }
}
