//! Filling in punctures.

use curvelab::farey::Slope;
use curvelab::rational::q;
use curvelab::tricurves::{forget_punctures, straight_curve, Forgotten, PunctureSet, Triangulation, V2};

fn main() -> curvelab::Result<()> {
    let pts = vec![V2::int(0, 0), V2::new(q(1, 3), q(1, 2)), V2::new(q(2, 3), q(1, 4))];
    let t = Triangulation::build(&PunctureSet::new(pts.clone())?)?;
    let c = straight_curve(&t, &"2/3".parse::<Slope>()?)?;
    println!("on |P| = 3: {}", c.to_text());
    for sub in [vec![pts[0].clone(), pts[1].clone()], vec![pts[0].clone()]] {
        match forget_punctures(&t, &c, &PunctureSet::new(sub)?)? {
            Forgotten::Slope(s) => println!("on |P| = 1: slope {s}"),
            Forgotten::Curve(x) => println!("on |P| = 2: {}", x.to_text()),
        }
    }
    Ok(())
}
