//! Certified stable translation lengths of SL(2,Z) matrices on the Farey graph.

use curvelab::farey::{farey_tl, ToralMatrix};
use curvelab::rational::fmt_q;

fn main() -> curvelab::Result<()> {
    for s in ["2,1,1,1", "3,1,2,1", "5,2,2,1", "-3,1,-1,0", "1,1,0,1", "0,-1,1,0"] {
        let a: ToralMatrix = s.parse()?;
        let r = farey_tl(&a, 12, 6);
        match &r.certificate {
            Some(c) => println!("{a}: tl = {} (m = {}, D = {}, base {})", fmt_q(&c.tl), c.period, c.displacement, c.base),
            None => println!("{a}: {} ({})", r.bracket.describe(), r.class),
        }
    }
    Ok(())
}
