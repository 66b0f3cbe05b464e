//! Sampled thinness of geodesic triangles; a sanity check for the configured
//! hyperbolicity constant, never used to certify bounds.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::bfs::FareyBall;
use super::distance::{farey_distance, farey_geodesic};
use super::slope::Slope;

fn dist_to_path(x: &Slope, path: &[Slope]) -> u64 {
    path.iter()
        .map(|y| farey_distance(x, y))
        .min()
        .unwrap_or(u64::MAX)
}

/// Smallest `t` such that each side of the lex-geodesic triangle `abc` lies in
/// the `t`-neighbourhood of the other two.
pub fn triangle_thinness(a: &Slope, b: &Slope, c: &Slope) -> u64 {
    let sides = [
        farey_geodesic(a, b),
        farey_geodesic(b, c),
        farey_geodesic(c, a),
    ];
    let mut worst = 0;
    for i in 0..3 {
        let others: Vec<Slope> = sides
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .flat_map(|(_, s)| s.iter().cloned())
            .collect();
        for x in &sides[i] {
            worst = worst.max(dist_to_path(x, &others));
        }
    }
    worst
}

/// Max thinness over `count` triangles with vertices drawn uniformly from the
/// ball of the given radius around `1/0` (slopes with `|p|, |q| <= 12`).
pub fn thinness_audit(count: usize, radius: u32, seed: u64) -> u64 {
    let ball = FareyBall::new(12);
    let src = ball.index_of(&Slope::infinity()).unwrap();
    let dist = ball.bfs(src);
    let pool: Vec<Slope> = (0..ball.len() as u32)
        .filter(|&i| dist[i as usize] <= radius)
        .map(|i| ball.slope_at(i))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0;
    for _ in 0..count {
        let a = pool.choose(&mut rng).unwrap();
        let b = pool.choose(&mut rng).unwrap();
        let c = pool.choose(&mut rng).unwrap();
        worst = worst.max(triangle_thinness(a, b, c));
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_triangles_are_thin() {
        assert!(thinness_audit(50, 1, 3) <= 1);
    }

    #[test]
    fn degenerate_triangle() {
        let (a, b, c) = (Slope::infinity(), Slope::zero(), Slope::new(1, 2).unwrap());
        assert_eq!(triangle_thinness(&a, &b, &c), 0);
    }

    #[test]
    fn seeded_audit_is_deterministic() {
        let v = thinness_audit(100, 6, 42);
        assert_eq!(v, thinness_audit(100, 6, 42));
        assert!(v <= 2, "Farey graph triangles are thin, got {v}");
    }
}
