//! Filling in punctures.

use super::normal::NormalCurve;
use super::punctures::PunctureSet;
use super::triangulation::Triangulation;
use crate::error::{Error, Result};
use crate::farey::Slope;

/// Image of a curve after filling in the punctures outside a subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Forgotten {
    /// One puncture left: the class is its slope.
    Slope(Slope),
    Curve(NormalCurve),
}

/// Image of `a` in the torus punctured at `target`'s vertices, which must be
/// a subset of the punctures of `t`.
pub fn forget_to(
    t: &Triangulation,
    a: &NormalCurve,
    target: &Triangulation,
) -> Result<NormalCurve> {
    a.check_on(t)?;
    if !target.punctures().is_subset_of(t.punctures()) {
        return Err(Error::NotSubset);
    }
    if target.punctures() == t.punctures() {
        return Ok(a.clone());
    }
    let poly = a.to_polyline(t)?;
    match NormalCurve::from_polyline(target, &poly) {
        Err(Error::Inessential) => Err(Error::DiesUnderForgetting),
        other => other,
    }
}

/// Image of `a` under the map induced by filling in `P \ sub`.
pub fn forget_punctures(
    t: &Triangulation,
    a: &NormalCurve,
    sub: &PunctureSet,
) -> Result<Forgotten> {
    if !sub.is_subset_of(t.punctures()) {
        return Err(Error::NotSubset);
    }
    if sub.len() == 1 {
        return a
            .slope()
            .map(Forgotten::Slope)
            .ok_or(Error::DiesUnderForgetting);
    }
    let target = Triangulation::build(sub)?;
    forget_to(t, a, &target).map(Forgotten::Curve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::tricurves::{straight_curve, trace::Polyline, V2};

    fn three() -> PunctureSet {
        PunctureSet::new(vec![
            V2::int(0, 0),
            V2::new(q(1, 3), q(1, 2)),
            V2::new(q(2, 3), q(1, 2)),
        ])
        .unwrap()
    }

    fn enclosing_pair(t: &Triangulation) -> NormalCurve {
        let r = Polyline::new(
            vec![
                V2::new(q(1, 4), q(2, 5)),
                V2::new(q(3, 4), q(2, 5)),
                V2::new(q(3, 4), q(3, 5)),
                V2::new(q(1, 4), q(3, 5)),
            ],
            (0, 0),
        );
        NormalCurve::from_polyline(t, &r).unwrap()
    }

    #[test]
    fn to_single_point_gives_slope() {
        let t = Triangulation::build(&three()).unwrap();
        let a = straight_curve(&t, &Slope::new(1, 0).unwrap()).unwrap();
        let r = forget_punctures(&t, &a, &PunctureSet::origin()).unwrap();
        assert_eq!(r, Forgotten::Slope(Slope::new(1, 0).unwrap()));
    }

    #[test]
    fn identity_and_homology() {
        let t = Triangulation::build(&three()).unwrap();
        let a = straight_curve(&t, &Slope::new(2, 3).unwrap()).unwrap();
        assert_eq!(
            forget_punctures(&t, &a, &three()).unwrap(),
            Forgotten::Curve(a.clone())
        );
        let sub = PunctureSet::new(vec![V2::int(0, 0), V2::new(q(1, 3), q(1, 2))]).unwrap();
        match forget_punctures(&t, &a, &sub).unwrap() {
            Forgotten::Curve(c) => assert_eq!(c.homology(), a.homology()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn separating_pair_curve() {
        let t = Triangulation::build(&three()).unwrap();
        let c = enclosing_pair(&t);
        assert_eq!(c.homology(), (0, 0));
        assert!(!c.is_nonseparating());
        let keep_pair =
            PunctureSet::new(vec![V2::new(q(1, 3), q(1, 2)), V2::new(q(2, 3), q(1, 2))]).unwrap();
        assert!(matches!(
            forget_punctures(&t, &c, &keep_pair).unwrap(),
            Forgotten::Curve(_)
        ));
        let drop_one = PunctureSet::new(vec![V2::int(0, 0), V2::new(q(1, 3), q(1, 2))]).unwrap();
        assert_eq!(
            forget_punctures(&t, &c, &drop_one).unwrap_err(),
            Error::DiesUnderForgetting
        );
        assert_eq!(
            forget_punctures(&t, &c, &PunctureSet::origin()).unwrap_err(),
            Error::DiesUnderForgetting
        );
    }
}
