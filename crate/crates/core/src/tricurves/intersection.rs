//! Minimal intersection numbers of normal curves.
//!
//! The punctured torus retracts onto the dual graph of the triangulation, a
//! trivalent ribbon graph. Two closed curves meet once for every pair of
//! lifts whose axes in the universal tree are linked; linking is read off the
//! ribbon order at the two ends of each maximal common segment.

use std::collections::HashMap;

use super::normal::{from_tri, into_tri, reversed, NormalCurve, Token};
use super::triangulation::Triangulation;
use crate::error::Result;

fn linked_segments(t: &Triangulation, a: &[Token], b: &[Token]) -> u64 {
    let (la, lb) = (a.len(), b.len());
    let cap = la + lb;
    let mut pos: HashMap<Token, Vec<usize>> = HashMap::new();
    for (j, x) in b.iter().enumerate() {
        pos.entry(*x).or_default().push(j);
    }
    let ccw = |s: usize| (s + 1) % 3;
    let mut count = 0;
    for i in 0..la {
        let Some(js) = pos.get(&a[i]) else { continue };
        let ap = a[(i + la - 1) % la];
        for &j in js {
            let bp = b[(j + lb - 1) % lb];
            if ap == bp {
                continue;
            }
            let mut len = 1;
            while len < cap && a[(i + len) % la] == b[(j + len) % lb] {
                len += 1;
            }
            if len >= cap {
                continue;
            }
            let rho = from_tri(t, a[i]).1;
            let start = into_tri(t, ap).1 == ccw(rho);
            let last = a[(i + len - 1) % la];
            let rho_end = into_tri(t, last).1;
            let end = from_tri(t, a[(i + len) % la]).1 == ccw(rho_end);
            if start == end {
                count += 1;
            }
        }
    }
    count
}

/// Intersection count of two cyclically reduced closed crossing sequences
/// realised as simple curves.
pub fn sequence_intersection(t: &Triangulation, a: &[Token], b: &[Token]) -> u64 {
    linked_segments(t, a, b) + linked_segments(t, a, &reversed(b))
}

/// Minimal number of intersection points of the two classes.
pub fn geometric_intersection(t: &Triangulation, a: &NormalCurve, b: &NormalCurve) -> Result<u64> {
    a.check_on(t)?;
    b.check_on(t)?;
    if a == b {
        return Ok(0);
    }
    Ok(sequence_intersection(t, a.sequence(), b.sequence()))
}
