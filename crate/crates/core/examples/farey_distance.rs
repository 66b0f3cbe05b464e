//! Distances and geodesics in the Farey graph.

use curvelab::farey::{farey_distance, farey_geodesic, farey_ladder, intersection_number, Slope};

fn main() -> curvelab::Result<()> {
    let pairs = [("1/0", "2/5"), ("0/1", "13/8"), ("-5/7", "22/9"), ("1/0", "1/1000000000000")];
    for (s, t) in pairs {
        let (s, t): (Slope, Slope) = (s.parse()?, t.parse()?);
        let g: Vec<String> = farey_geodesic(&s, &t).iter().map(|x| x.to_string()).collect();
        println!("d({s}, {t}) = {}  i = {}  geodesic {}", farey_distance(&s, &t), intersection_number(&s, &t), g.join(" "));
    }
    let ladder = farey_ladder(&Slope::infinity(), &"13/8".parse()?, 100);
    println!("ladder 1/0 -> 13/8 has {} vertices", ladder.len());
    Ok(())
}
