//! Translation lengths of an Anosov map rel growing periodic sets.

use curvelab::dynamics::{approximation_sweep, AnosovMap, SweepOptions};

fn main() -> curvelab::Result<()> {
    let f = AnosovMap::new("2,1,1,1".parse()?)?;
    let r = approximation_sweep(&f, &[vec![1], vec![2], vec![1, 3]], &SweepOptions::default())?;
    print!("{}", r.to_csv());
    println!("chain ok: {}", r.chain_ok);
    Ok(())
}
