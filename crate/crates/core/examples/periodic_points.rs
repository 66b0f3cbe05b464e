//! Periodic points of linear Anosov maps.

use curvelab::dynamics::{brute_force_fixed_count, fixed_point_count, periodic_points, AnosovMap};

fn main() -> curvelab::Result<()> {
    let f = AnosovMap::new("3,1,2,1".parse()?)?;
    for n in 1..=5 {
        println!("n = {n}: |det(A^n - I)| = {}  brute force {}", fixed_point_count(f.matrix(), n), brute_force_fixed_count(f.matrix(), n));
    }
    let pts: Vec<String> = periodic_points(&f, 2).iter().map(|x| x.to_string()).collect();
    println!("Fix(A^2) = {}", pts.join(" "));
    Ok(())
}
