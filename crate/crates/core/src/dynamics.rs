//! Linear Anosov maps: periodic points, invariant puncture sets and sweeps
//! of translation lengths over finite approximations.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::farey::{classify_matrix, farey_tl, FareyTl, MatrixClass, Slope, ToralMatrix};
use crate::hypcore::{HypParams, TLBracket};
use crate::mapclass::{axis_search, tl_bracket, MappingClassRelP, PuncturedAxisCertificate};
use crate::rational::{fmt_q, frac_q, q, Q};
use crate::tricurves::{straight_curves, BracketBudget, PunctureSet, V2};

/// Hyperbolic toral automorphism. Its periodic points are exactly the
/// rational points of the torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnosovMap {
    matrix: ToralMatrix,
}

impl AnosovMap {
    pub fn new(matrix: ToralMatrix) -> Result<AnosovMap> {
        if classify_matrix(&matrix) != MatrixClass::Hyperbolic {
            return Err(Error::NotAnosov);
        }
        Ok(AnosovMap { matrix })
    }

    pub fn matrix(&self) -> &ToralMatrix {
        &self.matrix
    }

    /// `x` with `A x = x` mod `Z^2`, as exact points of `[0, 1)^2`.
    pub fn apply(&self, x: &V2) -> V2 {
        let m = &self.matrix;
        let e = |v: &BigInt| Q::from_integer(v.clone());
        let y = V2::new(e(&m.a) * &x.x + e(&m.b) * &x.y, e(&m.c) * &x.x + e(&m.d) * &x.y);
        V2::new(frac_q(&y.x), frac_q(&y.y))
    }
}

type M2 = [[BigInt; 2]; 2];

fn ident() -> M2 {
    [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]]
}

/// Smith normal form of a nonsingular 2x2 integer matrix: `(u, d, v)` with
/// `u m v = diag(d[0], d[1])`, `u`, `v` unimodular, `d[0] | d[1]`, `d > 0`.
pub fn smith_2x2(m: &M2) -> (M2, [BigInt; 2], M2) {
    let mut a = m.clone();
    let mut u = ident();
    let mut v = ident();
    // row/column operations; keep u, v in step
    loop {
        // bring the smallest nonzero entry to (0,0)
        let mut best: Option<(usize, usize)> = None;
        for i in 0..2 {
            for j in 0..2 {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let (bi, bj) = best.expect("nonsingular");
        if bi == 1 {
            a.swap(0, 1);
            u.swap(0, 1);
        }
        if bj == 1 {
            for r in a.iter_mut().chain(v.iter_mut()) {
                r.swap(0, 1);
            }
        }
        let p = a[0][0].clone();
        // clear column 0 below and row 0 to the right
        let f = a[1][0].div_floor(&p);
        for j in 0..2 {
            let t = &f * &a[0][j];
            a[1][j] -= t;
            let t = &f * &u[0][j];
            u[1][j] -= t;
        }
        let g = a[0][1].div_floor(&p);
        for i in 0..2 {
            let t = &g * &a[i][0];
            a[i][1] -= t;
            let t = &g * &v[i][0];
            v[i][1] -= t;
        }
        if !a[1][0].is_zero() || !a[0][1].is_zero() {
            continue;
        }
        if !(&a[1][1] % &a[0][0]).is_zero() {
            // add row 1 to row 0 and repeat
            for j in 0..2 {
                let t = a[1][j].clone();
                a[0][j] += t;
                let t = u[1][j].clone();
                u[0][j] += t;
            }
            continue;
        }
        for i in 0..2 {
            if a[i][i].is_negative() {
                for j in 0..2 {
                    a[i][j] = -a[i][j].clone();
                    u[i][j] = -u[i][j].clone();
                }
            }
        }
        return (u, [a[0][0].clone(), a[1][1].clone()], v);
    }
}

fn power_minus_identity(a: &ToralMatrix, n: u64) -> M2 {
    let p = a.pow(n);
    [[&p.a - 1, p.b.clone()], [p.c.clone(), &p.d - 1]]
}

/// `|det(A^n - I)|`.
pub fn fixed_point_count(a: &ToralMatrix, n: u64) -> BigInt {
    let m = power_minus_identity(a, n);
    (&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]).abs()
}

/// `|Fix(A^n)|` by testing every point of the lattice `(1/N) Z^2 / Z^2`,
/// `N = |det(A^n - I)|`, which contains all fixed points.
pub fn brute_force_fixed_count(a: &ToralMatrix, n: u64) -> usize {
    let p = a.pow(n);
    let big = fixed_point_count(a, n).to_i64().unwrap();
    let (pa, pb, pc, pd) = (p.a.to_i64().unwrap(), p.b.to_i64().unwrap(), p.c.to_i64().unwrap(), p.d.to_i64().unwrap());
    let mut count = 0;
    for i in 0..big {
        for j in 0..big {
            let x = ((pa - 1) as i128 * i as i128 + pb as i128 * j as i128).rem_euclid(big as i128);
            let y = (pc as i128 * i as i128 + (pd - 1) as i128 * j as i128).rem_euclid(big as i128);
            if x == 0 && y == 0 {
                count += 1;
            }
        }
    }
    count
}

/// All fixed points of `A^n` on the torus, sorted.
pub fn periodic_points(f: &AnosovMap, n: u64) -> Vec<V2> {
    assert!(n >= 1, "period must be positive");
    let m = power_minus_identity(&f.matrix, n);
    let (_, d, v) = smith_2x2(&m);
    let d0 = d[0].to_i64().expect("small invariant factor");
    let d1 = d[1].to_i64().expect("invariant factor fits in i64");
    let mut out = Vec::with_capacity((d0 * d1) as usize);
    let vq = |i: usize, j: usize| Q::from_integer(v[i][j].clone());
    for w0 in 0..d0 {
        for w1 in 0..d1 {
            let y0 = q(w0, d0);
            let y1 = q(w1, d1);
            let x = &vq(0, 0) * &y0 + &vq(0, 1) * &y1;
            let y = &vq(1, 0) * &y0 + &vq(1, 1) * &y1;
            out.push(V2::new(frac_q(&x), frac_q(&y)));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Union of `Fix(A^n)` over the listed periods; invariance is checked.
pub fn invariant_set(f: &AnosovMap, periods: &[u64]) -> Result<PunctureSet> {
    let mut pts: Vec<V2> = periods.iter().flat_map(|&n| periodic_points(f, n)).collect();
    pts.sort();
    pts.dedup();
    let p = PunctureSet::new(pts)?;
    if p.points().iter().any(|x| !p.contains(&f.apply(x))) {
        return Err(Error::NotInvariant);
    }
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepOptions {
    pub k_max: u64,
    pub budget: BracketBudgetConfig,
    /// Largest bracket width that still passes.
    #[serde(serialize_with = "crate::rational::ser_q", deserialize_with = "crate::rational::de_q")]
    pub width_tolerance: Q,
    /// Also search for an axis with periods up to this bound (0 disables).
    pub axis_m_max: u64,
}

/// Serializable mirror of [`BracketBudget`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketBudgetConfig {
    pub ladder_limit: usize,
    pub extra_height: u64,
    pub max_pool: usize,
    pub max_weight: u64,
}

impl From<&BracketBudgetConfig> for BracketBudget {
    fn from(c: &BracketBudgetConfig) -> Self {
        BracketBudget { ladder_limit: c.ladder_limit, extra_height: c.extra_height, max_pool: c.max_pool, max_weight: c.max_weight }
    }
}

impl Default for BracketBudgetConfig {
    fn default() -> Self {
        let b = BracketBudget::default();
        BracketBudgetConfig { ladder_limit: b.ladder_limit, extra_height: b.extra_height, max_pool: b.max_pool, max_weight: b.max_weight }
    }
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { k_max: 8, budget: BracketBudgetConfig::default(), width_tolerance: q(1, 4), axis_m_max: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepEntry {
    pub periods: Vec<u64>,
    pub size: usize,
    pub points: Vec<String>,
    pub triangulation: String,
    pub word_length: usize,
    pub base: String,
    pub bracket: TLBracket,
    pub axis: Option<PuncturedAxisCertificate>,
    pub axis_reasons: Vec<String>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub matrix: String,
    pub reference: TLBracket,
    pub reference_certificate: Option<String>,
    pub params: HypParams,
    pub options: SweepOptions,
    pub entries: Vec<SweepEntry>,
    pub chain_ok: bool,
}

pub const SWEEP_SCHEMA_VERSION: u32 = 1;

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.verdict == Verdict::Pass)
    }

    pub fn any_fail(&self) -> bool {
        self.entries.iter().any(|e| e.verdict == Verdict::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per puncture set.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("matrix,P_size,lower,upper,exact,period_m,verdict\n");
        for e in &self.entries {
            let upper = e.bracket.upper.as_ref().map(fmt_q).unwrap_or_else(|| "inf".into());
            let exact = e.bracket.exact.is_some();
            let period = e.axis.as_ref().map(|c| c.period.to_string()).unwrap_or_default();
            let _ = writeln!(
                s,
                "\"{}\",{},{},{},{},{},{}",
                self.matrix,
                e.size,
                fmt_q(&e.bracket.lower),
                upper,
                exact,
                period,
                e.verdict
            );
        }
        s
    }
}

fn base_slope(reference: &FareyTl) -> Slope {
    reference.certificate.as_ref().map(|c| c.base.clone()).unwrap_or_else(Slope::infinity)
}

/// Translation-length brackets of `[f]_P` for the invariant sets built from
/// each period list, checked against the Farey value of `A`.
pub fn approximation_sweep(f: &AnosovMap, period_lists: &[Vec<u64>], opts: &SweepOptions) -> Result<SweepReport> {
    let sets: Vec<PunctureSet> = period_lists.iter().map(|l| invariant_set(f, l)).collect::<Result<_>>()?;
    sweep_sets(f, period_lists, &sets, opts)
}

/// Same as [`approximation_sweep`] on explicit puncture sets; `period_lists`
/// only labels the entries.
pub fn sweep_sets(f: &AnosovMap, period_lists: &[Vec<u64>], sets: &[PunctureSet], opts: &SweepOptions) -> Result<SweepReport> {
    assert_eq!(period_lists.len(), sets.len());
    let reference = farey_tl(&f.matrix, 12, 6);
    let ref_value = reference.bracket.exact.clone();
    let budget: BracketBudget = (&opts.budget).into();
    let params = reference.params.clone();
    let slope = base_slope(&reference);
    let mut entries: Vec<SweepEntry> = period_lists
        .par_iter()
        .zip(sets.par_iter())
        .map(|(periods, p)| -> Result<SweepEntry> {
            let m = MappingClassRelP::from_matrix(&f.matrix, p)?;
            let t = m.source();
            let base = straight_curves(t, &slope)?.into_iter().min().expect("straight curve");
            let bracket = tl_bracket(&m, &base, opts.k_max, &params, &budget)?;
            let (axis, axis_reasons) = if opts.axis_m_max > 0 {
                let s = axis_search(&m, opts.axis_m_max, opts.k_max.min(4), &budget)?;
                (s.certificate, s.reasons)
            } else {
                (None, Vec::new())
            };
            let mut notes = Vec::new();
            let verdict = match &ref_value {
                None => {
                    notes.push("no exact reference value".into());
                    Verdict::Inconclusive
                }
                Some(r) => {
                    if bracket.lower > *r || bracket.upper.as_ref().is_some_and(|u| u < r) {
                        notes.push(format!("bracket {} excludes reference {}", bracket.describe(), fmt_q(r)));
                        Verdict::Fail
                    } else if let Some(w) = bracket.width() {
                        if w <= opts.width_tolerance {
                            Verdict::Pass
                        } else {
                            notes.push(format!("width {} above tolerance", fmt_q(&w)));
                            Verdict::Inconclusive
                        }
                    } else {
                        notes.push("no upper bound within budget".into());
                        Verdict::Inconclusive
                    }
                }
            };
            Ok(SweepEntry {
                periods: periods.clone(),
                size: p.len(),
                points: p.points().iter().map(|x| x.to_string()).collect(),
                triangulation: t.hash(),
                word_length: m.word_length(),
                base: base.to_text(),
                bracket,
                axis,
                axis_reasons,
                verdict,
                notes,
            })
        })
        .collect::<Result<_>>()?;
    let mut chain_ok = true;
    for i in 0..entries.len() {
        for j in 0..entries.len() {
            if i != j && sets[j].is_subset_of(&sets[i]) {
                if let Some(u) = entries[i].bracket.upper.clone() {
                    let lo = entries[j].bracket.lower.clone();
                    if lo > u {
                        chain_ok = false;
                        entries[i].verdict = Verdict::Fail;
                        entries[i].notes.push(format!("monotonicity: lower {} of a subset exceeds upper {}", fmt_q(&lo), fmt_q(&u)));
                    }
                }
            }
        }
    }
    Ok(SweepReport {
        schema_version: SWEEP_SCHEMA_VERSION,
        matrix: f.matrix.to_string(),
        reference_certificate: reference
            .certificate
            .as_ref()
            .map(|c| format!("base {}, m = {}, D = {}, tl = {}", c.base, c.period, c.displacement, fmt_q(&c.tl))),
        reference: reference.bracket,
        params,
        options: opts.clone(),
        entries,
        chain_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib() -> AnosovMap {
        AnosovMap::new("2,1,1,1".parse().unwrap()).unwrap()
    }

    fn mat_mul(a: &M2, b: &M2) -> M2 {
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    }

    #[test]
    fn smith_form() {
        let m: M2 = [[BigInt::from(4), BigInt::from(3)], [BigInt::from(3), BigInt::from(1)]];
        let (u, d, v) = smith_2x2(&m);
        let prod = mat_mul(&mat_mul(&u, &m), &v);
        assert_eq!(prod, [[d[0].clone(), BigInt::zero()], [BigInt::zero(), d[1].clone()]]);
        assert_eq!(&d[0] * &d[1], BigInt::from(5));
        let m: M2 = [[BigInt::from(6), BigInt::from(0)], [BigInt::from(0), BigInt::from(4)]];
        let (_, d, _) = smith_2x2(&m);
        assert_eq!(d, [BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn fixed_points() {
        let f = fib();
        assert_eq!(periodic_points(&f, 1), vec![V2::int(0, 0)]);
        let two = periodic_points(&f, 2);
        assert_eq!(two.len(), 5);
        assert!(two.iter().all(|x| (x * &Q::from_integer(5.into())).is_integral()));
        for n in 1..=6 {
            let pts = periodic_points(&f, n);
            assert_eq!(BigInt::from(pts.len()), fixed_point_count(f.matrix(), n));
            assert_eq!(pts.len(), brute_force_fixed_count(f.matrix(), n));
        }
    }

    #[test]
    fn invariant_sets() {
        let f = fib();
        assert_eq!(invariant_set(&f, &[1]).unwrap().len(), 1);
        assert_eq!(invariant_set(&f, &[2]).unwrap().len(), 5);
        assert_eq!(invariant_set(&f, &[1, 2]).unwrap().len(), 5);
    }

    #[test]
    fn parabolic_rejected() {
        assert_eq!(AnosovMap::new("1,1,0,1".parse().unwrap()).unwrap_err(), Error::NotAnosov);
    }

    #[test]
    fn sweep_fibonacci() {
        let r = approximation_sweep(&fib(), &[vec![1], vec![2]], &SweepOptions::default()).unwrap();
        assert!(r.all_pass(), "{}", r.to_json());
        assert_eq!(r.entries[0].bracket.exact, Some(q(1, 1)));
        assert!(r.chain_ok);
        assert!(r.to_csv().lines().count() == 3);
    }
}
