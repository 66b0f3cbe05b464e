//! Translation-length brackets and axis search rel a finite puncture set.

use curvelab::dynamics::{invariant_set, AnosovMap};
use curvelab::farey::{farey_default_params, Slope};
use curvelab::mapclass::{axis_search, tl_bracket, MappingClassRelP};
use curvelab::tricurves::{straight_curve, BracketBudget};

fn main() -> curvelab::Result<()> {
    let f = AnosovMap::new("2,1,1,1".parse()?)?;
    let budget = BracketBudget::default();
    for periods in [vec![1], vec![2]] {
        let p = invariant_set(&f, &periods)?;
        let m = MappingClassRelP::from_matrix(f.matrix(), &p)?;
        let c = straight_curve(m.source(), &"-1/1".parse::<Slope>()?)?;
        let b = tl_bracket(&m, &c, 6, &farey_default_params(), &budget)?;
        println!("|P| = {}: tl {}", p.len(), b.describe());
        let s = axis_search(&m, 2, 3, &budget)?;
        match s.certificate {
            Some(cert) => println!("  axis: m = {}, D = {}", cert.period, cert.displacement),
            None => println!("  no axis: {:?}", s.reasons),
        }
    }
    Ok(())
}
