//! Distance brackets in the curve graph of a punctured torus.

use curvelab::farey::Slope;
use curvelab::rational::q;
use curvelab::tricurves::{distance_bracket, straight_curve, BracketBudget, PunctureSet, Triangulation, V2};

fn main() -> curvelab::Result<()> {
    let budget = BracketBudget::default();
    for pts in [vec![V2::int(0, 0)], vec![V2::int(0, 0), V2::new(q(1, 2), q(1, 2))]] {
        let t = Triangulation::build(&PunctureSet::new(pts)?)?;
        for s in ["0/1", "1/2", "2/5", "5/13"] {
            let a = straight_curve(&t, &Slope::infinity())?;
            let b = straight_curve(&t, &s.parse()?)?;
            let br = distance_bracket(&t, &a, &b, &budget)?;
            println!("|P| = {}: d(1/0, {s}) {}", t.punctures().len(), br.describe());
        }
    }
    Ok(())
}
