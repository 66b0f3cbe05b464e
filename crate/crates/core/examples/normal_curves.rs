//! Curves on a punctured torus in normal coordinates.

use curvelab::farey::Slope;
use curvelab::rational::q;
use curvelab::tricurves::{adjacent, geometric_intersection, straight_curves, PunctureSet, Triangulation, V2};

fn main() -> curvelab::Result<()> {
    let p = PunctureSet::new(vec![V2::int(0, 0), V2::new(q(1, 2), q(1, 2))])?;
    let t = Triangulation::build(&p)?;
    let a = straight_curves(&t, &Slope::infinity())?;
    let b = straight_curves(&t, &"1/2".parse()?)?;
    for c in a.iter().chain(&b) {
        println!("{}  homology {:?}  slope {:?}", c.to_text(), c.homology(), c.slope().map(|s| s.to_string()));
    }
    for x in &a {
        for y in &b {
            println!("i = {}, adjacent {}", geometric_intersection(&t, x, y)?, adjacent(&t, x, y)?);
        }
    }
    Ok(())
}
