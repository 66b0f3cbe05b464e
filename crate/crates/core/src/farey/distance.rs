//! Exact distances and geodesics in the Farey graph.
//!
//! Move the source to `1/0` with an SL(2,Z) normalizer. For a target
//! `x = p/q` with `q >= 2`, every path from `1/0` to `x` passes through one
//! of the two ends of each Farey edge separating them, and the third vertex
//! `w` of a Farey triangle `(u, v, w)` with `{u, v}` separating `w` from `1/0`
//! satisfies `d(w) = 1 + min(d(u), d(v))`. Walking the Stern-Brocot descent
//! towards `x` one continued-fraction run at a time gives the distance in
//! time linear in the number of partial quotients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{matrix_act, send_to_infinity};
use super::slope::Slope;

/// Distance from `1/0` to the canonical slope `x`.
pub fn dist_from_infinity(x: &Slope) -> u64 {
    let (p, q) = (x.p(), x.q());
    if q.is_zero() {
        return 0;
    }
    if q.is_one() {
        return 1;
    }
    let a0 = p.div_floor(q);
    let (mut lp, mut lq) = (a0.clone(), BigInt::one());
    let (mut rp, mut rq) = (a0 + 1u32, BigInt::one());
    let (mut dl, mut dr) = (1u64, 1u64);
    loop {
        // a = q r_p - p r_q > 0 (x < R), b = p l_q - q l_p > 0 (x > L)
        let a = q * &rp - p * &rq;
        let b = p * &lq - q * &lp;
        debug_assert!(a.is_positive() && b.is_positive());
        if a == b {
            return 1 + dl.min(dr);
        }
        if b < a {
            let j = (&a - 1u32) / &b;
            rp += &j * &lp;
            rq += &j * &lq;
            dr = run_distance(dr, dl, &j);
        } else {
            let j = (&b - 1u32) / &a;
            lp += &j * &rp;
            lq += &j * &rq;
            dl = run_distance(dl, dr, &j);
        }
    }
}

/// Distance of the last vertex after `j` fan steps around a pivot.
fn run_distance(prev: u64, pivot: u64, j: &BigInt) -> u64 {
    let cap = pivot + 1;
    match j.to_u64() {
        Some(j) => prev.saturating_add(j).min(cap),
        None => cap,
    }
}

/// Graph distance in the Farey graph.
pub fn farey_distance(s: &Slope, t: &Slope) -> u64 {
    if s == t {
        return 0;
    }
    let b = send_to_infinity(s);
    dist_from_infinity(&matrix_act(&b, t))
}

/// The two neighbours of `s` that every geodesic from `s` to `t` must use
/// first (or just `t` when adjacent). Empty when `s == t`.
fn first_step_candidates(s: &Slope, t: &Slope) -> Vec<Slope> {
    if s == t {
        return Vec::new();
    }
    let b = send_to_infinity(s);
    let x = matrix_act(&b, t);
    if x.q().is_one() {
        return vec![t.clone()];
    }
    let binv = b.inverse();
    let a0 = x.p().div_floor(x.q());
    vec![
        matrix_act(&binv, &Slope::from_primitive(a0.clone(), BigInt::one())),
        matrix_act(&binv, &Slope::from_primitive(a0 + 1u32, BigInt::one())),
    ]
}

/// A geodesic from `s` to `t`; at each step the lexicographically smallest
/// admissible next vertex is taken.
pub fn farey_geodesic(s: &Slope, t: &Slope) -> Vec<Slope> {
    let mut path = vec![s.clone()];
    let mut cur = s.clone();
    let mut remaining = farey_distance(s, t);
    while remaining > 0 {
        let next = first_step_candidates(&cur, t)
            .into_iter()
            .filter(|c| farey_distance(c, t) + 1 == remaining)
            .min()
            .expect("a geodesic step always exists");
        path.push(next.clone());
        cur = next;
        remaining -= 1;
    }
    path
}

/// All geodesics from `s` to `t` (exponential in general; intended for small
/// distances and tests).
pub fn all_geodesics(s: &Slope, t: &Slope, limit: usize) -> Vec<Vec<Slope>> {
    fn rec(
        cur: &Slope,
        t: &Slope,
        rem: u64,
        path: &mut Vec<Slope>,
        out: &mut Vec<Vec<Slope>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if rem == 0 {
            out.push(path.clone());
            return;
        }
        for c in first_step_candidates(cur, t) {
            if farey_distance(&c, t) + 1 == rem {
                path.push(c.clone());
                rec(&c, t, rem - 1, path, out, limit);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut path = vec![s.clone()];
    rec(s, t, farey_distance(s, t), &mut path, &mut out, limit);
    out.sort();
    out
}

/// Vertices of the Farey triangles crossed on the way from `s` to `t` (the
/// "ladder"), including both endpoints. Every geodesic from `s` to `t` lies
/// on the ladder. At most `limit` vertices are produced.
pub fn farey_ladder(s: &Slope, t: &Slope, limit: usize) -> Vec<Slope> {
    let mut out = vec![s.clone()];
    if s == t {
        return out;
    }
    let b = send_to_infinity(s);
    let binv = b.inverse();
    let x = matrix_act(&b, t);
    let (p, q) = (x.p().clone(), x.q().clone());
    let back = |a: BigInt, c: BigInt| matrix_act(&binv, &Slope::from_primitive(a, c));
    if q.is_one() {
        out.push(t.clone());
        return out;
    }
    let a0 = p.div_floor(&q);
    let (mut lp, mut lq) = (a0.clone(), BigInt::one());
    let (mut rp, mut rq) = (a0 + 1u32, BigInt::one());
    out.push(back(lp.clone(), lq.clone()));
    out.push(back(rp.clone(), rq.clone()));
    while out.len() < limit {
        let mp = &lp + &rp;
        let mq = &lq + &rq;
        out.push(back(mp.clone(), mq.clone()));
        if mp == p && mq == q {
            break;
        }
        if &p * &mq < &q * &mp {
            rp = mp;
            rq = mq;
        } else {
            lp = mp;
            lq = mq;
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::bfs::FareyBall;
    use crate::farey::slope::intersection_number;

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(farey_distance(&s(1, 0), &s(0, 1)), 1);
        assert_eq!(farey_distance(&s(1, 0), &s(2, 5)), 3);
        assert_eq!(farey_distance(&s(0, 1), &s(2, 5)), 2);
        assert_eq!(farey_distance(&s(7, 3), &s(7, 3)), 0);
    }

    #[test]
    fn geodesic_examples() {
        assert_eq!(farey_geodesic(&s(1, 0), &s(0, 1)), vec![s(1, 0), s(0, 1)]);
        assert_eq!(farey_geodesic(&s(3, 4), &s(3, 4)), vec![s(3, 4)]);
        // Oracle: every geodesic 1/0 -> 2/5 from the BFS ball; the lex rule
        // picks the smallest second vertex, then the smallest third.
        let ball = FareyBall::new(20);
        let all = ball.all_geodesics(&s(1, 0), &s(2, 5));
        assert!(all.len() > 1);
        let mut expected = all[0].clone();
        for g in &all {
            if (g[1].clone(), g[2].clone()) < (expected[1].clone(), expected[2].clone()) {
                expected = g.clone();
            }
        }
        let got = farey_geodesic(&s(1, 0), &s(2, 5));
        assert_eq!(got, expected);
        // golden
        assert_eq!(got, vec![s(1, 0), s(0, 1), s(1, 2), s(2, 5)]);
        let mut fast_all = all_geodesics(&s(1, 0), &s(2, 5), 100);
        fast_all.sort();
        let mut bfs_all = all.clone();
        bfs_all.sort();
        assert_eq!(fast_all, bfs_all);
    }

    #[test]
    fn geodesics_are_paths() {
        for (a, b) in [((1, 0), (13, 8)), ((-5, 7), (22, 9)), ((3, 1), (-1, 40))] {
            let g = farey_geodesic(&s(a.0, a.1), &s(b.0, b.1));
            assert_eq!(
                g.len() as u64,
                farey_distance(&s(a.0, a.1), &s(b.0, b.1)) + 1
            );
            for w in g.windows(2) {
                assert_eq!(intersection_number(&w[0], &w[1]), BigInt::one());
            }
        }
    }

    #[test]
    fn ladder_contains_geodesic() {
        let (a, b) = (s(1, 0), s(13, 8));
        let ladder = farey_ladder(&a, &b, 1000);
        for v in farey_geodesic(&a, &b) {
            assert!(ladder.contains(&v));
        }
    }

    #[test]
    fn long_continued_fraction_is_cheap() {
        // 1/10^30 has a partial quotient of 10^30.
        let big = BigInt::from(10).pow(30);
        let x = Slope::new(BigInt::one(), big).unwrap();
        assert_eq!(farey_distance(&Slope::infinity(), &x), 2);
        assert_eq!(farey_distance(&Slope::zero(), &x), 1);
    }
}
