//! Closed flat geodesics avoiding the punctures.

use num_traits::ToPrimitive;

use super::normal::NormalCurve;
use super::triangulation::Triangulation;
use super::V2;
use crate::error::{Error, Result};
use crate::farey::Slope;
use crate::rational::{floor_q, frac_q, Q};

fn phi(p: &Q, q: &Q, x: &V2) -> Q {
    p * &x.y - q * &x.x
}

/// Levels of the linear form constant along direction `(p, q)` that separate
/// the punctures, one per isotopy class of straight curves of that slope.
pub fn offset_levels(t: &Triangulation, slope: &Slope) -> Vec<Q> {
    let (p, q) = (
        Q::from_integer(slope.p().clone()),
        Q::from_integer(slope.q().clone()),
    );
    let mut vals: Vec<Q> = t
        .punctures()
        .points()
        .iter()
        .map(|x| frac_q(&phi(&p, &q, x)))
        .collect();
    vals.sort();
    vals.dedup();
    let two = Q::from_integer(2.into());
    (0..vals.len())
        .map(|k| {
            let next = if k + 1 < vals.len() {
                vals[k + 1].clone()
            } else {
                &vals[0] + Q::from_integer(1.into())
            };
            (&vals[k] + next) / &two
        })
        .collect()
}

/// Normal coordinates of the straight curve of slope `slope` at level `level`.
pub fn straight_weights(t: &Triangulation, slope: &Slope, level: &Q) -> Vec<u64> {
    let (p, q) = (
        Q::from_integer(slope.p().clone()),
        Q::from_integer(slope.q().clone()),
    );
    let pts = t.punctures().points();
    t.edges()
        .iter()
        .map(|e| {
            let a = phi(&p, &q, &pts[e.tail]) - level;
            let b = &a + phi(&p, &q, &e.vec);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            (floor_q(&hi) - floor_q(&lo)).to_u64().unwrap()
        })
        .collect()
}

/// All straight curves of the slope, one per offset class.
pub fn straight_curves(t: &Triangulation, slope: &Slope) -> Result<Vec<NormalCurve>> {
    let mut out: Vec<NormalCurve> = Vec::new();
    for lv in offset_levels(t, slope) {
        let c = NormalCurve::from_weights(t, straight_weights(t, slope, &lv))?;
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

/// The straight curve of the slope in the offset class just above
/// puncture `0`.
pub fn straight_curve(t: &Triangulation, slope: &Slope) -> Result<NormalCurve> {
    straight_curves(t, slope)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Degenerate("no straight curve".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::farey_distance;
    use crate::rational::q;
    use crate::tricurves::{geometric_intersection, PunctureSet};

    fn sl(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn one_puncture_horizontal() {
        let t = Triangulation::build(&PunctureSet::origin()).unwrap();
        let c = straight_curve(&t, &sl(1, 0)).unwrap();
        assert_eq!(c.homology(), (1, 0));
        assert_eq!(c.weight_norm(), 2);
        assert!(c.is_nonseparating());
    }

    #[test]
    fn intersections_match_farey_small() {
        let t = Triangulation::build(&PunctureSet::origin()).unwrap();
        let slopes = [
            sl(1, 0),
            sl(0, 1),
            sl(1, 1),
            sl(-1, 1),
            sl(2, 1),
            sl(5, 3),
            sl(2, 5),
            sl(-3, 7),
        ];
        for a in &slopes {
            let ca = straight_curve(&t, a).unwrap();
            assert_eq!(ca.slope().unwrap(), *a);
            for b in &slopes {
                let cb = straight_curve(&t, b).unwrap();
                let i = geometric_intersection(&t, &ca, &cb).unwrap();
                assert_eq!(
                    i,
                    crate::farey::intersection_number(a, b).to_u64().unwrap(),
                    "{a} {b}"
                );
            }
        }
        let _ = farey_distance(&sl(1, 0), &sl(2, 5));
    }

    #[test]
    fn two_punctures_have_two_classes() {
        let p = PunctureSet::new(vec![V2::int(0, 0), V2::new(q(1, 2), q(1, 2))]).unwrap();
        let t = Triangulation::build(&p).unwrap();
        let cs = straight_curves(&t, &sl(1, 0)).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(geometric_intersection(&t, &cs[0], &cs[1]).unwrap(), 0);
        let d = straight_curves(&t, &sl(1, 2)).unwrap();
        for a in &cs {
            for b in &d {
                assert_eq!(geometric_intersection(&t, a, b).unwrap(), 2);
            }
        }
    }
}
