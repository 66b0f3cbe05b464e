//! Invariant suites shared by the `verify` command and the test harness.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{approximation_sweep, brute_force_fixed_count, fixed_point_count, invariant_set, periodic_points, AnosovMap, SweepOptions};
use crate::farey::{classify_matrix, farey_distance, farey_tl, intersection_number, FareyBall, MatrixClass, Slope, ToralMatrix};
use crate::finecurves::{fine_distance_on, minimal_position_rel, PolyCurve};
use crate::rational::{fmt_q, q, Q};
use crate::tricurves::{adjacent, distance_bracket, geometric_intersection, straight_curve, BracketBudget, NormalCurve, PunctureSet, Triangulation, V2};

/// A bracket emitted by a suite, kept for the global soundness check.
#[derive(Clone, Debug, Serialize)]
pub struct BracketRecord {
    pub quantity: String,
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub lower: Q,
    #[serde(serialize_with = "crate::rational::ser_opt_q")]
    pub upper: Option<Q>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub passed: bool,
    pub inconclusive: bool,
    pub checked: u64,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub seconds: f64,
    #[serde(skip)]
    pub brackets: Vec<BracketRecord>,
}

impl SuiteResult {
    fn new(suite: &str) -> SuiteResult {
        SuiteResult {
            suite: suite.into(),
            passed: true,
            inconclusive: false,
            checked: 0,
            failures: Vec::new(),
            notes: Vec::new(),
            seconds: 0.0,
            brackets: Vec::new(),
        }
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.passed = false;
        if self.failures.len() < 20 {
            self.failures.push(msg.into());
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(msg());
        }
    }

    fn finish(mut self, t0: Instant) -> SuiteResult {
        self.seconds = t0.elapsed().as_secs_f64();
        self
    }

    /// One-line summary.
    pub fn line(&self) -> String {
        let status = if !self.passed {
            "FAIL"
        } else if self.inconclusive {
            "INCONCLUSIVE"
        } else {
            "PASS"
        };
        let mut s = format!("{status} {} ({} checks, {:.1}s)", self.suite, self.checked, self.seconds);
        if let Some(f) = self.failures.first() {
            s.push_str(&format!(": {f}"));
        }
        s
    }
}

fn record_distance(out: &mut SuiteResult, what: String, lo: u64, hi: Option<u64>) {
    out.brackets.push(BracketRecord { quantity: what, lower: q(lo as i64, 1), upper: hi.map(|h| q(h as i64, 1)) });
}

/// Fast Farey distance against breadth-first search on slopes with
/// `|p|, |q| <= bound`, the search cap doubled until the distances stabilize.
pub fn farey_oracle(bound: u32) -> SuiteResult {
    let t0 = Instant::now();
    let mut out = SuiteResult::new("farey-oracle");
    let small = FareyBall::new(bound);
    let mut cap = bound * 2;
    let mut stable = false;
    let mut reference: Vec<Vec<u32>> = (0..small.len() as u32).into_par_iter().map(|i| small.bfs(i)).collect();
    while !stable && cap <= bound * 8 {
        let big = FareyBall::new(cap);
        let idx: Vec<u32> = small.slopes().map(|s| big.index_of(&s).unwrap()).collect();
        let next: Vec<Vec<u32>> = idx
            .par_iter()
            .map(|&i| {
                let d = big.bfs(i);
                idx.iter().map(|&j| d[j as usize]).collect()
            })
            .collect();
        stable = next == reference;
        out.notes.push(format!("cap {cap}: {}", if stable { "stable" } else { "changed" }));
        reference = next;
        cap *= 2;
    }
    if !stable {
        out.inconclusive = true;
    }
    let slopes: Vec<Slope> = small.slopes().collect();
    let bad: Vec<String> = (0..slopes.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let slopes = &slopes;
            let reference = &reference;
            (i..slopes.len()).filter_map(move |j| {
                let fast = farey_distance(&slopes[i], &slopes[j]);
                let slow = reference[i][j] as u64;
                (fast != slow).then(|| format!("{} -> {}: fast {fast}, bfs {slow}", slopes[i], slopes[j]))
            })
        })
        .collect();
    let n = slopes.len() as u64;
    out.checked = n * (n + 1) / 2;
    for b in bad {
        out.fail(b);
    }
    out.notes.push(format!("{n} slopes"));
    out.finish(t0)
}

/// Uniform random matrix of `SL(2, Z)` with entries in `[-bound, bound]` and
/// the requested class.
pub fn random_matrix(rng: &mut ChaCha8Rng, bound: i64, hyperbolic: bool) -> ToralMatrix {
    loop {
        let e: Vec<i64> = (0..4).map(|_| rng.gen_range(-bound..=bound)).collect();
        if e[0] * e[3] - e[1] * e[2] != 1 {
            continue;
        }
        let m = ToralMatrix::new(e[0], e[1], e[2], e[3]).unwrap();
        if !hyperbolic || classify_matrix(&m) == MatrixClass::Hyperbolic {
            return m;
        }
    }
}

/// Axis certificates for seeded hyperbolic matrices.
pub fn axis_suite(count: usize, seed: u64, bound: i64, m_max: u64, k_max: u64) -> SuiteResult {
    let t0 = Instant::now();
    let mut out = SuiteResult::new("axis");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let a = random_matrix(&mut rng, bound, true);
        let r = farey_tl(&a, m_max, k_max);
        out.brackets.push(BracketRecord { quantity: format!("tl({a})"), lower: r.bracket.lower.clone(), upper: r.bracket.upper.clone() });
        match &r.certificate {
            None => out.fail(format!("{a}: no axis with m <= {m_max}")),
            Some(c) => {
                out.check(c.period <= m_max, || format!("{a}: period {}", c.period));
                out.check(c.verified_multiples >= k_max && c.verify(&a), || format!("{a}: certificate does not verify"));
                out.check(c.tl == q(c.displacement as i64, c.period as i64), || format!("{a}: tl != D/m"));
                out.check(c.tl.denom() <= &BigInt::from(c.period), || format!("{a}: denominator of {} exceeds m", fmt_q(&c.tl)));
                out.notes.push(format!("{a}: m = {}, D = {}, tl = {}", c.period, c.displacement, fmt_q(&c.tl)));
            }
        }
    }
    out.finish(t0)
}

/// `tl(A^2) = 2 tl(A)` and `tl(B A B^-1) = tl(A)` on certified pairs.
pub fn power_conjugacy(count: usize, seed: u64) -> SuiteResult {
    let t0 = Instant::now();
    let mut out = SuiteResult::new("power-conjugacy");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    let mut tries = 0;
    while done < count && tries < 20 * count {
        tries += 1;
        let a = random_matrix(&mut rng, 6, true);
        let b = random_matrix(&mut rng, 4, false);
        let ta = farey_tl(&a, 12, 5);
        let t2 = farey_tl(&a.mul(&a), 12, 5);
        let tc = farey_tl(&b.mul(&a).mul(&b.inverse()), 12, 5);
        for (m, r) in [(&a, &ta), (&a, &t2), (&a, &tc)] {
            out.brackets.push(BracketRecord { quantity: format!("tl of a conjugate/power of {m}"), lower: r.bracket.lower.clone(), upper: r.bracket.upper.clone() });
        }
        let (Some(x), Some(y), Some(z)) = (&ta.bracket.exact, &t2.bracket.exact, &tc.bracket.exact) else {
            continue;
        };
        done += 1;
        out.check(*y == x * Q::from_integer(2.into()), || format!("tl({a}^2) = {} but tl({a}) = {}", fmt_q(y), fmt_q(x)));
        out.check(z == x, || format!("tl(B A B^-1) = {} but tl(A) = {} for A = {a}, B = {b}", fmt_q(z), fmt_q(x)));
        out.notes.push(format!("A = {a}, B = {b}: tl = {}", fmt_q(x)));
    }
    if done < count {
        out.inconclusive = true;
        out.notes.push(format!("only {done} certified pairs"));
    }
    out.finish(t0)
}

/// All curve classes on the once-punctured torus with weight norm at most
/// `max_norm`.
pub fn one_puncture_classes(t: &Triangulation, max_norm: u64) -> Vec<NormalCurve> {
    let mut out = Vec::new();
    for a in 0..=max_norm {
        for b in 0..=max_norm - a {
            for c in 0..=max_norm - a - b {
                if let Ok(x) = NormalCurve::from_weights(t, vec![a, b, c]) {
                    out.push(x);
                }
            }
        }
    }
    out.sort();
    out
}

type Row = (u64, Vec<String>, Vec<(u64, Option<u64>, String)>);

/// The once-punctured backend against the Farey graph.
pub fn faithfulness(max_norm: u64, max_dist: u64) -> SuiteResult {
    let t0 = Instant::now();
    let mut out = SuiteResult::new("one-puncture-faithfulness");
    let t = Triangulation::build(&PunctureSet::origin()).unwrap();
    let classes = one_puncture_classes(&t, max_norm);
    let slopes: Vec<Slope> = classes.iter().map(|c| c.slope().expect("nonseparating")).collect();
    let mut by_slope = BTreeMap::new();
    for (c, s) in classes.iter().zip(&slopes) {
        if by_slope.insert(s.clone(), c.clone()).is_some() {
            out.fail(format!("two classes with slope {s}"));
        }
        let st = straight_curve(&t, s).unwrap();
        out.check(st == *c, || format!("class {c} is not the straight curve of {s}"));
    }
    out.notes.push(format!("{} classes", classes.len()));
    let budget = BracketBudget::default();
    let n = classes.len();
    let rows: Vec<Row> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut checked = 0;
            let mut fails = Vec::new();
            let mut recs = Vec::new();
            for j in i..n {
                let (a, b) = (&classes[i], &classes[j]);
                let (sa, sb) = (&slopes[i], &slopes[j]);
                let want = intersection_number(sa, sb).to_u64().unwrap();
                let got = geometric_intersection(&t, a, b).unwrap();
                checked += 1;
                if got != want {
                    fails.push(format!("i({sa}, {sb}) = {got}, farey {want}"));
                }
                checked += 1;
                if adjacent(&t, a, b).unwrap() != (want == 1) {
                    fails.push(format!("adjacency of {sa}, {sb} disagrees"));
                }
                let fd = farey_distance(sa, sb);
                if fd <= max_dist {
                    let br = distance_bracket(&t, a, b, &budget).unwrap();
                    checked += 1;
                    recs.push((br.lo, br.hi, format!("d({sa}, {sb})")));
                    if br.lo != fd || br.hi != Some(fd) {
                        fails.push(format!("d({sa}, {sb}) bracket {}, farey {fd}", br.describe()));
                    }
                }
            }
            (checked, fails, recs)
        })
        .collect();
    for (c, fails, recs) in rows {
        out.checked += c;
        for f in fails {
            out.fail(f);
        }
        for (lo, hi, w) in recs {
            record_distance(&mut out, w, lo, hi);
        }
    }
    out.finish(t0)
}

/// Sweep of `A` over `Fix(A)` and `Fix(A^2)` against the Farey value.
pub fn sandwich(a: &ToralMatrix, k_max: u64) -> SuiteResult {
    let t0 = Instant::now();
    let mut out = SuiteResult::new("sandwich");
    let f = match AnosovMap::new(a.clone()) {
        Ok(f) => f,
        Err(e) => {
            out.fail(format!("{a}: {e}"));
            return out.finish(t0);
        }
    };
    let opts = SweepOptions { k_max, ..SweepOptions::default() };
    let r = match approximation_sweep(&f, &[vec![1], vec![2]], &opts) {
        Ok(r) => r,
        Err(e) => {
            out.fail(format!("sweep failed: {e}"));
            return out.finish(t0);
        }
    };
    for e in &r.entries {
        out.brackets.push(BracketRecord { quantity: format!("tl([{a}] rel |P| = {})", e.size), lower: e.bracket.lower.clone(), upper: e.bracket.upper.clone() });
        out.notes.push(format!("|P| = {}: {} {}", e.size, e.bracket.describe(), e.verdict));
    }
    let Some(reference) = r.reference.exact.clone() else {
        out.inconclusive = true;
        out.notes.push("farey value not certified".into());
        return out.finish(t0);
    };
    let fix1 = &r.entries[0];
    if fix1.size == 1 {
        out.check(fix1.bracket.exact.as_ref() == Some(&reference), || format!("rel Fix(A): {} != {}", fix1.bracket.describe(), fmt_q(&reference)));
    } else {
        out.check(fix1.bracket.contains(&reference), || format!("rel Fix(A): {} misses {}", fix1.bracket.describe(), fmt_q(&reference)));
    }
    let fix2 = &r.entries[1];
    out.check(fix2.bracket.contains(&reference), || format!("rel Fix(A^2): {} misses {}", fix2.bracket.describe(), fmt_q(&reference)));
    let w = fix2.bracket.width();
    out.check(w.as_ref().is_some_and(|w| *w <= q(1, 4)), || format!("rel Fix(A^2): width {:?} above 1/4", w.map(|x| fmt_q(&x))));
    let chain = fix2.bracket.upper.as_ref().is_none_or(|u| fix1.bracket.lower <= *u);
    out.check(r.chain_ok && chain, || "monotonicity chain violated".into());
    out.finish(t0)
}

fn random_point(rng: &mut ChaCha8Rng) -> V2 {
    let d1 = rng.gen_range(2..=13);
    let d2 = rng.gen_range(2..=13);
    V2::new(q(rng.gen_range(0..d1), d1), q(rng.gen_range(0..d2), d2))
}

/// Straight loop pairs used by the independence suite.
pub fn fine_pairs() -> Vec<(PolyCurve, PolyCurve)> {
    let s = |x: (i64, i64, i64, i64), p: i64, qq: i64| PolyCurve::straight(V2::new(q(x.0, x.1), q(x.2, x.3)), p, qq).unwrap();
    vec![
        (s((0, 1, 1, 3), 1, 0), s((1, 3, 0, 1), 0, 1)),
        (s((0, 1, 1, 3), 1, 0), s((1, 7, 1, 11), 2, 5)),
        (s((1, 5, 0, 1), 1, 1), s((2, 9, 1, 17), -1, 3)),
    ]
}

/// Fine distances of straight loop pairs agree across seeded puncture sets.
pub fn fine_independence(seed: u64, samples: usize) -> SuiteResult {
    let t0 = Instant::now();
    let mut out = SuiteResult::new("fine-independence");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = BracketBudget::default();
    for (a, b) in fine_pairs() {
        let fd = farey_distance(
            &Slope::new(a.displacement().0, a.displacement().1).unwrap(),
            &Slope::new(b.displacement().0, b.displacement().1).unwrap(),
        );
        let mut values = Vec::new();
        let mut drawn = 0;
        while drawn < samples {
            let size = 1 + drawn % 3;
            let pts: Vec<V2> = (0..size).map(|_| random_point(&mut rng)).collect();
            let Ok(p) = PunctureSet::new(pts) else { continue };
            if p.len() != size || minimal_position_rel(&a, &b, &p).is_err() {
                continue;
            }
            drawn += 1;
            let t = Triangulation::build(&p).unwrap();
            match fine_distance_on(&a, &b, &t, &budget) {
                Err(e) => out.fail(format!("P = {p}: {e}")),
                Ok(br) => {
                    record_distance(&mut out, format!("fine distance rel {p}"), br.lo, br.hi);
                    out.check(br.is_exact(), || format!("P = {p}: bracket {}", br.describe()));
                    if size == 1 {
                        out.check(br.lo == fd, || format!("P = {p}: {} but farey {fd}", br.lo));
                    }
                    values.push(br.lo);
                }
            }
        }
        values.dedup();
        out.check(values.len() == 1, || format!("values differ across P: {values:?}"));
        out.notes.push(format!("slopes {:?} / {:?}: d = {values:?}", a.displacement(), b.displacement()));
    }
    out.finish(t0)
}

/// `|Fix(A^n)| = |det(A^n - I)|` by three independent counts.
pub fn periodic_law(matrices: &[ToralMatrix], n_max: u64) -> SuiteResult {
    let t0 = Instant::now();
    let mut out = SuiteResult::new("periodic-points");
    for a in matrices {
        let f = match AnosovMap::new(a.clone()) {
            Ok(f) => f,
            Err(e) => {
                out.fail(format!("{a}: {e}"));
                continue;
            }
        };
        for n in 1..=n_max {
            let det = fixed_point_count(a, n).to_usize().unwrap();
            let pts = periodic_points(&f, n);
            let brute = brute_force_fixed_count(a, n);
            out.check(pts.len() == det && brute == det, || format!("{a}, n = {n}: snf {}, brute {brute}, det {det}", pts.len()));
            let fixed = pts.iter().all(|x| {
                let mut y = x.clone();
                for _ in 0..n {
                    y = f.apply(&y);
                }
                y == *x
            });
            out.check(fixed, || format!("{a}, n = {n}: a listed point is not fixed"));
        }
        let p = invariant_set(&f, &[1, 2]);
        out.check(p.is_ok(), || format!("{a}: Fix(A) u Fix(A^2) not invariant"));
    }
    out.finish(t0)
}

/// No emitted lower bound exceeds the matching upper bound.
pub fn soundness(results: &[SuiteResult]) -> SuiteResult {
    let t0 = Instant::now();
    let mut out = SuiteResult::new("soundness");
    for r in results {
        for b in &r.brackets {
            let ok = b.upper.as_ref().is_none_or(|u| b.lower <= *u) && b.lower >= Q::zero();
            out.check(ok, || format!("{}: {}: lower {} > upper {}", r.suite, b.quantity, fmt_q(&b.lower), b.upper.as_ref().map(fmt_q).unwrap_or_default()));
        }
    }
    out.finish(t0)
}

pub fn fibonacci() -> ToralMatrix {
    ToralMatrix::new(2, 1, 1, 1).unwrap()
}

pub fn cat_map() -> ToralMatrix {
    ToralMatrix::new(3, 1, 2, 1).unwrap()
}

