//! Certified stable translation lengths of SL(2,Z) on the Farey graph.
//!
//! A hyperbolic matrix has some power preserving a geodesic; we search small
//! periods `m` and base vertices `c` near the axis for `d(c, A^{km} c) = kD`
//! and report `D/m` only together with that witness.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::distance::{farey_distance, farey_geodesic, farey_ladder};
use super::matrix::{classify_matrix, matrix_act, MatrixClass, ToralMatrix};
use super::slope::Slope;
use crate::hypcore::{
    derive_constants, fekete_upper, local_quasigeodesic_audit, quasigeodesic_lower, HypParams,
    OrbitSample, TLBracket,
};
use crate::rational::{self, qi, Q};

/// An invariant-geodesic witness for `A^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxisCertificate {
    pub base: Slope,
    pub period: u64,
    pub displacement: u64,
    #[serde(serialize_with = "rational::ser_q")]
    pub tl: Q,
    /// Geodesic from `base` to `A^m base`.
    pub geodesic: Vec<Slope>,
    pub verified_multiples: u64,
}

impl AxisCertificate {
    /// Re-checks every stated invariant against the fast distance.
    pub fn verify(&self, a: &ToralMatrix) -> bool {
        let am = a.pow(self.period);
        let image = matrix_act(&am, &self.base);
        let g = &self.geodesic;
        if g.len() as u64 != self.displacement + 1
            || g.first() != Some(&self.base)
            || g.last() != Some(&image)
        {
            return false;
        }
        if g.windows(2).any(|w| farey_distance(&w[0], &w[1]) != 1) {
            return false;
        }
        if self.tl != Q::new(BigInt::from(self.displacement), BigInt::from(self.period)) {
            return false;
        }
        (1..=self.verified_multiples).all(|k| {
            farey_distance(&self.base, &matrix_act(&a.pow(k * self.period), &self.base))
                == k * self.displacement
        })
    }
}

/// Output of [`farey_tl`].
#[derive(Clone, Debug, Serialize)]
pub struct FareyTl {
    pub matrix: ToralMatrix,
    pub class: MatrixClass,
    pub bracket: TLBracket,
    pub certificate: Option<AxisCertificate>,
    /// Set when a hyperbolic matrix found no axis up to `m_max`.
    pub inconclusive: bool,
    pub params: HypParams,
}

/// Default constants for the Farey graph: `δ = 1`, `K = 2`.
pub fn farey_default_params() -> HypParams {
    derive_constants(&qi(1), &qi(2), None).expect("valid defaults")
}

fn axis_candidates(a: &ToralMatrix) -> Vec<Slope> {
    let seeds = [
        Slope::infinity(),
        Slope::zero(),
        Slope::integer(1),
        Slope::integer(-1),
    ];
    let back = a.powi(-3);
    let fwd = a.pow(3);
    let mut cands: Vec<Slope> = Vec::new();
    for c0 in &seeds {
        for j in -3i64..=3 {
            cands.push(matrix_act(&a.powi(j), c0));
        }
        cands.extend(farey_ladder(
            &matrix_act(&back, c0),
            &matrix_act(&fwd, c0),
            400,
        ));
    }
    cands.sort_by(|x, y| x.height().cmp(&y.height()).then_with(|| x.cmp(y)));
    cands.dedup();
    cands
}

/// Searches periods `m <= m_max` for an axis certificate of `a`, verified
/// for `k <= k_max` multiples.
pub fn find_axis(a: &ToralMatrix, m_max: u64, k_max: u64) -> Option<AxisCertificate> {
    let cands = axis_candidates(a);
    for m in 1..=m_max {
        let powers: Vec<ToralMatrix> = (1..=k_max).map(|k| a.pow(k * m)).collect();
        for c in &cands {
            let d = farey_distance(c, &matrix_act(&powers[0], c));
            if d == 0 {
                continue;
            }
            let ok = powers
                .iter()
                .enumerate()
                .skip(1)
                .all(|(i, p)| farey_distance(c, &matrix_act(p, c)) == (i as u64 + 1) * d);
            if ok {
                let image = matrix_act(&powers[0], c);
                return Some(AxisCertificate {
                    base: c.clone(),
                    period: m,
                    displacement: d,
                    tl: Q::new(BigInt::from(d), BigInt::from(m)),
                    geodesic: farey_geodesic(c, &image),
                    verified_multiples: k_max,
                });
            }
        }
    }
    None
}

/// Orbit distances `d(c, A^k c)` for `k = 1..=n`.
pub fn orbit_sample(a: &ToralMatrix, base: &Slope, n: u64) -> OrbitSample {
    let mut s = OrbitSample::new(base.to_string());
    s.insert(0, 0);
    let mut cur = base.clone();
    for k in 1..=n {
        cur = matrix_act(a, &cur);
        s.insert(k, farey_distance(base, &cur));
    }
    s
}

/// Fekete and Morse-constant bounds from the orbit of `base`.
pub fn orbit_bracket(a: &ToralMatrix, base: &Slope, n: u64, params: &HypParams) -> TLBracket {
    let sample = orbit_sample(a, base, n);
    let mut b = TLBracket::unbounded();
    if let Ok(u) = fekete_upper(&sample) {
        let k = sample
            .distances
            .iter()
            .filter(|(&k, _)| k > 0)
            .find(|(&k, &d)| Q::new(BigInt::from(d), BigInt::from(k)) == u)
            .map(|(k, _)| *k)
            .unwrap_or(1);
        b.offer_upper(u, "fekete", format!("base {base}, k = {k}"));
    }
    // d(A^i c, A^j c) = d(c, A^{j-i} c)
    let mut pairs = BTreeMap::new();
    for i in 0..=n as i64 {
        for j in i..=n as i64 {
            pairs.insert((i, j), sample.distances[&((j - i) as u64)]);
        }
    }
    if let Ok(true) = local_quasigeodesic_audit(&pairs, params.n.min(n), &params.k) {
        if let Ok(l) = quasigeodesic_lower(&sample, n, params) {
            b.offer_lower(
                l,
                "quasigeodesic",
                format!("base {base}, k = {n}, window {}", params.n.min(n)),
                Some(params.clone()),
            );
        }
    }
    b
}

/// Stable translation length of `a` on the Farey graph.
///
/// Non-hyperbolic matrices get exact 0 by trace classification. Hyperbolic
/// matrices get an exact value only with an [`AxisCertificate`]; otherwise a
/// bracket flagged inconclusive.
pub fn farey_tl(a: &ToralMatrix, m_max: u64, k_max: u64) -> FareyTl {
    farey_tl_with(a, m_max, k_max, &farey_default_params())
}

pub fn farey_tl_with(a: &ToralMatrix, m_max: u64, k_max: u64, params: &HypParams) -> FareyTl {
    let class = classify_matrix(a);
    if class != MatrixClass::Hyperbolic {
        return FareyTl {
            matrix: a.clone(),
            class,
            bracket: TLBracket::exact(
                Q::zero(),
                "classification",
                format!("{class}: |trace| = {}", a.trace()),
            ),
            certificate: None,
            inconclusive: false,
            params: params.clone(),
        };
    }
    let n = (m_max * k_max).max(2);
    let mut bracket = orbit_bracket(a, &Slope::infinity(), n, params);
    let certificate = find_axis(a, m_max, k_max);
    if let Some(cert) = &certificate {
        bracket.lower = cert.tl.clone();
        bracket.upper = Some(cert.tl.clone());
        bracket.exact = Some(cert.tl.clone());
        bracket.provenance.push(crate::hypcore::BoundRecord {
            side: "exact".into(),
            source: "farey-axis".into(),
            value: cert.tl.clone(),
            detail: format!(
                "base {}, m = {}, D = {}, verified k <= {}",
                cert.base, cert.period, cert.displacement, cert.verified_multiples
            ),
            params: None,
        });
    } else {
        bracket.provenance.push(crate::hypcore::BoundRecord {
            side: "lower".into(),
            source: "farey-axis".into(),
            value: bracket.lower.clone(),
            detail: format!("no axis found <= m_max = {m_max}"),
            params: None,
        });
    }
    FareyTl {
        matrix: a.clone(),
        class,
        bracket,
        inconclusive: certificate.is_none(),
        certificate,
        params: params.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> ToralMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn parabolic_is_exact_zero() {
        let r = farey_tl(&m("1,1,0,1"), 8, 6);
        assert_eq!(r.bracket.exact, Some(Q::zero()));
        assert_eq!(r.class, MatrixClass::Parabolic);
        assert!(r.certificate.is_none());
        assert!(!r.inconclusive);
    }

    #[test]
    fn fibonacci_certifies() {
        let a = m("2,1,1,1");
        let r = farey_tl(&a, 4, 6);
        let cert = r.certificate.clone().expect("axis");
        assert!(cert.period <= 4);
        assert!(cert.verify(&a));
        assert!(r.bracket.is_consistent());
    }
}
