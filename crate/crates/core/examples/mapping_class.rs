//! A linear map as a flip word on an invariant puncture set.

use curvelab::dynamics::{invariant_set, AnosovMap};
use curvelab::farey::Slope;
use curvelab::mapclass::MappingClassRelP;
use curvelab::tricurves::straight_curve;

fn main() -> curvelab::Result<()> {
    let f = AnosovMap::new("2,1,1,1".parse()?)?;
    let p = invariant_set(&f, &[2])?;
    let m = MappingClassRelP::from_matrix(f.matrix(), &p)?;
    println!("P = {p}");
    print!("{}", m.to_text());
    let c = straight_curve(m.source(), &Slope::infinity())?;
    let mut x = c.clone();
    for k in 1..=4 {
        x = m.act(&x)?;
        println!("f^{k}: norm {}  slope {:?}", x.weight_norm(), x.slope().map(|s| s.to_string()));
    }
    let back = m.inverse().power(4).act(&x)?;
    println!("back to start: {}", back == c);
    Ok(())
}
