//! Running verification suites from code.

use curvelab::lab::verify;

fn main() {
    let rs = vec![
        verify::periodic_law(&[verify::fibonacci(), verify::cat_map()], 4),
        verify::axis_suite(5, 7, 6, 12, 4),
        verify::fine_independence(7, 3),
    ];
    for r in &rs {
        println!("{}", r.line());
    }
    println!("{}", verify::soundness(&rs).line());
}
