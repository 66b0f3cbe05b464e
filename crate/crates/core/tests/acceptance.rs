//! One line per acceptance criterion; exits nonzero if any fails.

use std::time::{Duration, Instant};

use curvelab::lab::verify::{self, SuiteResult};

const SEED: u64 = 2024;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> SuiteResult,
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, name: "farey oracle equivalence, |p|,|q| <= 50", limit: Duration::from_secs(120), run: || verify::farey_oracle(50) },
        Criterion { id: 2, name: "axis certificates, 10 seeded matrices, m <= 12, k <= 5", limit: Duration::from_secs(300), run: || verify::axis_suite(10, SEED, 10, 12, 5) },
        Criterion { id: 3, name: "power and conjugacy laws, 5 pairs", limit: Duration::from_secs(300), run: || verify::power_conjugacy(5, SEED) },
        Criterion { id: 4, name: "one-puncture backend against farey, norm <= 40", limit: Duration::from_secs(900), run: || verify::faithfulness(40, 4) },
        Criterion { id: 5, name: "sandwich for 2,1,1,1 rel Fix(A), Fix(A^2)", limit: Duration::from_secs(900), run: || verify::sandwich(&verify::fibonacci(), 8) },
        Criterion { id: 6, name: "fine distance independent of P", limit: Duration::from_secs(300), run: || verify::fine_independence(SEED, 5) },
        Criterion { id: 7, name: "periodic point law, n <= 6", limit: Duration::from_secs(60), run: || verify::periodic_law(&[verify::fibonacci(), verify::cat_map()], 6) },
    ]
}

fn main() {
    let mut results = Vec::new();
    let mut ok = true;
    for c in criteria() {
        let t0 = Instant::now();
        let r = (c.run)();
        let dt = t0.elapsed();
        let pass = r.passed && !r.inconclusive && dt <= c.limit;
        ok &= pass;
        let why = if pass {
            String::new()
        } else if dt > c.limit {
            format!(" [over time limit {}s]", c.limit.as_secs())
        } else {
            format!(" [{}]", r.line())
        };
        println!("{} criterion {}: {} ({} checks, {:.1}s){why}", if pass { "PASS" } else { "FAIL" }, c.id, c.name, r.checked, dt.as_secs_f64());
        results.push(r);
    }
    let s = verify::soundness(&results);
    let pass = s.passed && s.checked > 0;
    ok &= pass;
    println!("{} criterion 8: no lower bound above an upper bound ({} brackets){}", if pass { "PASS" } else { "FAIL" }, s.checked, s.failures.first().map(|f| format!(" [{f}]")).unwrap_or_default());
    if !ok {
        std::process::exit(1);
    }
}
