//! Upper and lower bounds on a translation length from a finite orbit sample.

use curvelab::farey::{farey_default_params, farey_distance, matrix_act, Slope, ToralMatrix};
use curvelab::hypcore::{best_quasigeodesic_lower, fekete_upper, OrbitSample, TLBracket};
use curvelab::rational::fmt_q;

fn main() -> curvelab::Result<()> {
    let a: ToralMatrix = "3,2,1,1".parse()?;
    let c = Slope::infinity();
    let mut sample = OrbitSample::new(c.to_string());
    let mut img = c.clone();
    // the lower bound only bites once d_k exceeds twice the Morse constant
    for k in 1..=4000 {
        img = matrix_act(&a, &img);
        if k <= 20 || k % 500 == 0 {
            sample.insert(k, farey_distance(&c, &img));
        }
    }
    let params = farey_default_params();
    println!("Morse constant {}", fmt_q(&params.m));
    let mut b = TLBracket::unbounded();
    b.offer_upper(fekete_upper(&sample)?, "fekete", "orbit of 1/0");
    b.offer_lower(best_quasigeodesic_lower(&sample, &params), "quasigeodesic", "orbit of 1/0", Some(params));
    b.collapse_if_tight();
    println!("tl in {}", b.describe());
    Ok(())
}
