//! Delaunay triangulations of the torus with vertices at the punctures.

use curvelab::rational::q;
use curvelab::tricurves::{PunctureSet, Triangulation, V2};

fn main() -> curvelab::Result<()> {
    let p = PunctureSet::new(vec![V2::int(0, 0), V2::new(q(1, 2), q(1, 3)), V2::new(q(1, 5), q(4, 5))])?;
    let t = Triangulation::build(&p)?;
    println!("{} punctures, {} edges, {} triangles, hash {}", p.len(), t.num_edges(), t.num_triangles(), t.hash());
    print!("{}", t.to_text());
    Ok(())
}
