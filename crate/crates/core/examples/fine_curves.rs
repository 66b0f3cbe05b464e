//! Loops drawn on the torus: bigons and fine distance.

use curvelab::finecurves::{empty_bigons, fine_distance, PolyCurve};
use curvelab::rational::q;
use curvelab::tricurves::{BracketBudget, PunctureSet, V2};

fn main() -> curvelab::Result<()> {
    let flat = PolyCurve::straight(V2::new(q(0, 1), q(1, 2)), 1, 0)?;
    let bump = PolyCurve::parse("displacement 1 0\n0 1/4\n1/4 1/4\n3/8 3/4\n5/8 3/4\n3/4 1/4\n")?;
    for pts in [vec![V2::new(q(0, 1), q(3, 8))], vec![V2::new(q(0, 1), q(3, 8)), V2::new(q(1, 2), q(5, 8))]] {
        let p = PunctureSet::new(pts)?;
        println!("P = {p}: {} empty bigons", empty_bigons(&flat, &bump, &p)?.len());
    }
    let slanted = PolyCurve::straight(V2::new(q(1, 7), q(1, 11)), 2, 5)?;
    for pts in [vec![V2::int(0, 0)], vec![V2::int(0, 0), V2::new(q(1, 3), q(2, 3))]] {
        let p = PunctureSet::new(pts)?;
        let d = fine_distance(&flat, &slanted, &p, &BracketBudget::default())?;
        println!("P = {p}: d {}", d.describe());
    }
    Ok(())
}
