//! Translation lengths and axes of mapping classes on the punctured curve
//! graph.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::word::{act_homology, MappingClassRelP};
use crate::error::{Error, Result};
use crate::farey::{farey_tl, find_axis, MatrixClass, Slope};
use crate::hypcore::{
    best_quasigeodesic_lower, local_quasigeodesic_audit, HypParams, OrbitSample, TLBracket,
};
use crate::rational::{fmt_q, q, Q};
use crate::tricurves::{
    distance_bracket, straight_curves, BracketBudget, DistanceBracket, NormalCurve,
};

/// `c, f(c), ..., f^n(c)`, cut short before the first curve of weight
/// above `max_weight`.
pub fn orbit(
    m: &MappingClassRelP,
    c: &NormalCurve,
    n: u64,
    max_weight: u64,
) -> Result<Vec<NormalCurve>> {
    let mut out = vec![c.clone()];
    for _ in 0..n {
        let w = m.act_weights(out.last().unwrap().weights());
        if w.iter().sum::<u64>() > max_weight {
            break;
        }
        out.push(NormalCurve::from_weights(m.source(), w)?);
    }
    Ok(out)
}

/// Distance brackets `d(c, f^k c)` for `k = 1..=n`; fewer when the orbit
/// outgrows the weight budget.
pub fn orbit_brackets(
    m: &MappingClassRelP,
    c: &NormalCurve,
    n: u64,
    budget: &BracketBudget,
) -> Result<Vec<DistanceBracket>> {
    let orb = orbit(m, c, n, budget.max_weight)?;
    let t = m.source();
    orb[1..]
        .par_iter()
        .map(|x| distance_bracket(t, c, x, budget))
        .collect()
}

fn canon(h: (i64, i64)) -> (i64, i64) {
    if h.1 < 0 || (h.1 == 0 && h.0 < 0) {
        (-h.0, -h.1)
    } else {
        h
    }
}

/// Bracket for the stable translation length of `m`, sampled along the orbit
/// of `base` for `k <= k_max`.
pub fn tl_bracket(
    m: &MappingClassRelP,
    base: &NormalCurve,
    k_max: u64,
    params: &HypParams,
    budget: &BracketBudget,
) -> Result<TLBracket> {
    if !base.is_nonseparating() {
        return Err(Error::Separating);
    }
    let mut br = TLBracket::unbounded();
    let brackets = orbit_brackets(m, base, k_max, budget)?;
    for (i, b) in brackets.iter().enumerate() {
        let k = i as u64 + 1;
        if let Some(h) = b.hi {
            br.offer_upper(
                q(h as i64, k as i64),
                "punctured-orbit",
                format!("d(c, f^{k} c) <= {h}"),
            );
        }
    }
    if let Some(a) = &m.matrix {
        let img = m.act(base)?;
        if img.homology() == canon(act_homology(a, base.homology())) {
            let ft = farey_tl(a, 8, 6);
            br.offer_lower(
                ft.bracket.lower.clone(),
                "forgetful-farey",
                format!(
                    "filling in all punctures; farey tl {}",
                    ft.bracket.describe()
                ),
                None,
            );
        } else {
            log::warn!("matrix provenance does not match the action on homology; skipping farey lower bound");
        }
    }
    if brackets.len() as u64 == k_max
        && brackets.iter().all(|b| b.is_exact())
        && !brackets.is_empty()
    {
        let mut sample = OrbitSample::new(base.to_text());
        let mut path = BTreeMap::new();
        for (i, b) in brackets.iter().enumerate() {
            sample.insert(i as u64 + 1, b.lo);
        }
        let n = brackets.len() as i64;
        for i in 0..=n {
            for j in i + 1..=n {
                path.insert((i, j), brackets[(j - i - 1) as usize].lo);
            }
        }
        let window = (params.n).min(n as u64 + 1);
        if local_quasigeodesic_audit(&path, window, &params.k_prime).unwrap_or(false) {
            let v = best_quasigeodesic_lower(&sample, params);
            br.offer_lower(
                v,
                "quasigeodesic",
                format!("orbit passed the K' = {} audit", fmt_q(&params.k_prime)),
                Some(params.clone()),
            );
        }
    }
    br.collapse_if_tight();
    Ok(br)
}

/// `d(c, f^{km} c) = kD` for `k <= verified_multiples`, every distance from
/// a collapsed bracket.
#[derive(Clone, Debug, Serialize)]
pub struct PuncturedAxisCertificate {
    #[serde(serialize_with = "ser_curve")]
    pub base: NormalCurve,
    pub period: u64,
    pub displacement: u64,
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub tl: Q,
    pub verified_multiples: u64,
    #[serde(serialize_with = "ser_curves")]
    pub geodesic: Vec<NormalCurve>,
}

fn ser_curve<S: serde::Serializer>(c: &NormalCurve, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_text())
}

fn ser_curves<S: serde::Serializer>(
    c: &[NormalCurve],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(c.iter().map(|x| x.to_text()))
}

impl PuncturedAxisCertificate {
    pub fn verify(&self, m: &MappingClassRelP, budget: &BracketBudget) -> Result<bool> {
        let fm = m.power(self.period as i64);
        let bs = orbit_brackets(&fm, &self.base, self.verified_multiples, budget)?;
        Ok(bs.len() as u64 == self.verified_multiples
            && bs
                .iter()
                .enumerate()
                .all(|(i, b)| b.is_exact() && b.lo == (i as u64 + 1) * self.displacement))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxisSearch {
    pub certificate: Option<PuncturedAxisCertificate>,
    pub reasons: Vec<String>,
}

/// Straight base curves to try, smallest weight first; the base slope of a
/// Farey axis comes first when the matrix is known.
pub fn axis_candidates(m: &MappingClassRelP) -> Result<Vec<NormalCurve>> {
    let t = m.source();
    let mut slopes: Vec<Slope> = Vec::new();
    if let Some(a) = &m.matrix {
        if let Some(c) = find_axis(a, 4, 4) {
            slopes.push(c.base);
        }
    }
    for (p, qq) in [(1, 0), (0, 1), (1, 1), (-1, 1)] {
        let s = Slope::new(p, qq).unwrap();
        if !slopes.contains(&s) {
            slopes.push(s);
        }
    }
    let mut out = Vec::new();
    for s in &slopes {
        let mut cs = straight_curves(t, s)?;
        cs.sort();
        for c in cs {
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// Searches periods `m <= m_max` and small base curves for an axis whose
/// multiples verify up to `k_max`.
pub fn axis_search(
    m: &MappingClassRelP,
    m_max: u64,
    k_max: u64,
    budget: &BracketBudget,
) -> Result<AxisSearch> {
    let mut reasons = Vec::new();
    let mut saw_positive = false;
    let mut growth_failures = 0usize;
    let mut open_failures = 0usize;
    let cands = axis_candidates(m)?;
    for period in 1..=m_max {
        let fm = m.power(period as i64);
        for c in &cands {
            let bs = orbit_brackets(&fm, c, k_max.max(1), budget)?;
            if (bs.len() as u64) < k_max.max(1) {
                open_failures += 1;
                continue;
            }
            let first = &bs[0];
            if !first.is_exact() {
                open_failures += 1;
                continue;
            }
            let d = first.lo;
            if d == 0 {
                continue;
            }
            saw_positive = true;
            let mut ok = true;
            for (i, b) in bs.iter().enumerate() {
                let k = i as u64 + 1;
                if !b.is_exact() {
                    open_failures += 1;
                    ok = false;
                    break;
                }
                if b.lo != k * d {
                    growth_failures += 1;
                    reasons.push(format!(
                        "period {period}, base {c}: d(c, f^{} c) = {} < {}",
                        k * period,
                        b.lo,
                        k * d
                    ));
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(AxisSearch {
                    certificate: Some(PuncturedAxisCertificate {
                        base: c.clone(),
                        period,
                        displacement: d,
                        tl: q(d as i64, period as i64),
                        verified_multiples: k_max.max(1),
                        geodesic: first.path.clone(),
                    }),
                    reasons,
                });
            }
        }
    }
    let summary = if !saw_positive {
        "elliptic".to_string()
    } else if open_failures == 0 && growth_failures > 0 {
        "no positive displacement growth".to_string()
    } else {
        format!("inconclusive: {open_failures} brackets did not collapse")
    };
    if let Some(a) = &m.matrix {
        if crate::farey::classify_matrix(a) == MatrixClass::Parabolic && saw_positive {
            reasons.push("matrix provenance is parabolic".into());
        }
    }
    reasons.insert(0, summary);
    for r in &reasons {
        log::info!("axis search: {r}");
    }
    Ok(AxisSearch {
        certificate: None,
        reasons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::{farey_default_params, ToralMatrix};
    use crate::tricurves::{straight_curve, PunctureSet, V2};

    fn fib() -> ToralMatrix {
        "2,1,1,1".parse().unwrap()
    }

    #[test]
    fn identity_is_exact_zero_and_elliptic() {
        let m = MappingClassRelP::from_matrix(&ToralMatrix::identity(), &PunctureSet::origin())
            .unwrap();
        let c = straight_curve(m.source(), &Slope::new(1, 0).unwrap()).unwrap();
        let br = tl_bracket(
            &m,
            &c,
            4,
            &farey_default_params(),
            &BracketBudget::default(),
        )
        .unwrap();
        assert_eq!(br.exact, Some(q(0, 1)));
        let ax = axis_search(&m, 2, 3, &BracketBudget::default()).unwrap();
        assert!(ax.certificate.is_none());
        assert_eq!(ax.reasons[0], "elliptic");
    }

    #[test]
    fn fibonacci_one_puncture_matches_farey() {
        let m = MappingClassRelP::from_matrix(&fib(), &PunctureSet::origin()).unwrap();
        let c = straight_curve(m.source(), &Slope::new(1, 0).unwrap()).unwrap();
        let br = tl_bracket(
            &m,
            &c,
            6,
            &farey_default_params(),
            &BracketBudget::default(),
        )
        .unwrap();
        assert_eq!(br.exact, Some(q(1, 1)));
        let ax = axis_search(&m, 2, 4, &BracketBudget::default()).unwrap();
        let cert = ax.certificate.unwrap();
        let fc = find_axis(&fib(), 4, 4).unwrap();
        assert_eq!(cert.base.slope().unwrap(), fc.base);
        assert_eq!(
            (cert.period, cert.displacement),
            (fc.period, fc.displacement)
        );
        assert!(cert.verify(&m, &BracketBudget::default()).unwrap());
    }

    #[test]
    fn parabolic_has_no_axis() {
        let a: ToralMatrix = "1,1,0,1".parse().unwrap();
        let m = MappingClassRelP::from_matrix(&a, &PunctureSet::origin()).unwrap();
        let ax = axis_search(&m, 2, 4, &BracketBudget::default()).unwrap();
        assert!(ax.certificate.is_none());
        assert_eq!(ax.reasons[0], "no positive displacement growth");
    }

    #[test]
    fn fibonacci_rel_period_two_points() {
        let pts = [(0, 0), (1, 2), (2, 4), (3, 1), (4, 3)]
            .iter()
            .map(|&(a, b)| V2::new(q(a, 5), q(b, 5)))
            .collect::<Vec<_>>();
        let m = MappingClassRelP::from_matrix(&fib(), &PunctureSet::new(pts).unwrap()).unwrap();
        let c = straight_curve(m.source(), &Slope::new(-1, 1).unwrap()).unwrap();
        let br = tl_bracket(
            &m,
            &c,
            8,
            &farey_default_params(),
            &BracketBudget::default(),
        )
        .unwrap();
        assert!(br.contains(&q(1, 1)));
        assert!(br.width().unwrap() <= q(1, 4));
    }
}
