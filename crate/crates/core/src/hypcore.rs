//! Backend-agnostic tools for isometries of Gromov hyperbolic graphs:
//! Fekete upper bounds, Morse-constant lower bounds and local quasigeodesic
//! audits for stable translation lengths.
//!
//! Everything here is exact rational arithmetic. The hyperbolicity constants
//! come from documented closed forms (see [`derive_constants`]) that the
//! caller may override field by field; every bound records the constants that
//! produced it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, fmt_q, qi, Q};

/// Constants for a δ-hyperbolic graph and a quasigeodesic quality `K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypParams {
    #[serde(
        serialize_with = "rational::ser_q",
        deserialize_with = "rational::de_q"
    )]
    pub delta: Q,
    #[serde(
        serialize_with = "rational::ser_q",
        deserialize_with = "rational::de_q"
    )]
    pub k: Q,
    /// Translation-length threshold above which good quasi-axes exist.
    #[serde(
        serialize_with = "rational::ser_q",
        deserialize_with = "rational::de_q"
    )]
    pub l: Q,
    /// Locality window for the local-to-global principle.
    pub n: u64,
    #[serde(
        serialize_with = "rational::ser_q",
        deserialize_with = "rational::de_q"
    )]
    pub k_prime: Q,
    /// Morse constant for `k_prime`-quasigeodesics.
    #[serde(
        serialize_with = "rational::ser_q",
        deserialize_with = "rational::de_q"
    )]
    pub m: Q,
    /// Names of the fields that were overridden by the caller.
    #[serde(default)]
    pub overridden: Vec<String>,
}

/// Per-field replacements for [`derive_constants`].
#[derive(Clone, Debug, Default)]
pub struct HypOverrides {
    pub l: Option<Q>,
    pub n: Option<u64>,
    pub k_prime: Option<Q>,
    pub m: Option<Q>,
}

impl HypParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::InvalidConstants(s.to_string()));
        if self.delta.is_negative() {
            return bad("delta must be nonnegative");
        }
        if !self.k.is_positive() || !self.l.is_positive() || !self.k_prime.is_positive() {
            return bad("K, L and K' must be positive");
        }
        if self.n == 0 {
            return bad("N must be positive");
        }
        if self.m.is_negative() {
            return bad("M must be nonnegative");
        }
        if self.k_prime < self.k {
            return bad("K' must be at least K");
        }
        Ok(())
    }
}

/// Default closed forms, all monotone in `delta` and `K`:
///
/// * `K' = K (1 + 2δ)`
/// * `M  = K'^2 (6δ + 1) - 1`
/// * `N  = ceil(K (8δ + 2))`
/// * `L  = 16δ + 1`
///
/// For a tree (`δ = 0`) and `K = 1` this gives `M = 0`: geodesic orbits need
/// no Morse correction. Over-estimating `M` only weakens lower bounds.
pub fn derive_constants(delta: &Q, k: &Q, overrides: Option<&HypOverrides>) -> Result<HypParams> {
    if delta.is_negative() {
        return Err(Error::InvalidConstants("delta must be nonnegative".into()));
    }
    if *k < qi(1) {
        return Err(Error::InvalidConstants("K must be at least 1".into()));
    }
    let two = qi(2);
    let k_prime = k * (qi(1) + &two * delta);
    let m = &k_prime * &k_prime * (qi(6) * delta + qi(1)) - qi(1);
    let n_raw = k * (qi(8) * delta + &two);
    let n = n_raw
        .ceil()
        .to_integer()
        .to_u64()
        .unwrap_or(u64::MAX)
        .max(1);
    let l = qi(16) * delta + qi(1);
    let mut p = HypParams {
        delta: delta.clone(),
        k: k.clone(),
        l,
        n,
        k_prime,
        m,
        overridden: Vec::new(),
    };
    if let Some(o) = overrides {
        if let Some(v) = &o.l {
            p.l = v.clone();
            p.overridden.push("L".into());
        }
        if let Some(v) = o.n {
            p.n = v;
            p.overridden.push("N".into());
        }
        if let Some(v) = &o.k_prime {
            p.k_prime = v.clone();
            p.overridden.push("K'".into());
        }
        if let Some(v) = &o.m {
            p.m = v.clone();
            p.overridden.push("M".into());
        }
    }
    p.validate()?;
    Ok(p)
}

/// Sampled orbit distances `k -> d(x, f^k x)` from a base vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSample {
    pub base: String,
    pub distances: BTreeMap<u64, u64>,
}

impl OrbitSample {
    pub fn new(base: impl Into<String>) -> Self {
        OrbitSample {
            base: base.into(),
            distances: BTreeMap::new(),
        }
    }

    pub fn with(mut self, k: u64, d: u64) -> Self {
        self.distances.insert(k, d);
        self
    }

    pub fn insert(&mut self, k: u64, d: u64) {
        self.distances.insert(k, d);
    }

    /// Checks `d_0 = 0` and `d_{k+l} <= d_k + d_l` on all sampled triples.
    pub fn is_consistent(&self) -> bool {
        if let Some(&d0) = self.distances.get(&0) {
            if d0 != 0 {
                return false;
            }
        }
        for (&k, &dk) in &self.distances {
            for (&l, &dl) in &self.distances {
                if let Some(&dkl) = self.distances.get(&(k + l)) {
                    if dkl > dk + dl {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// `min_k d_k / k` over the positive sampled `k`; a sound upper bound by
/// subadditivity.
pub fn fekete_upper(sample: &OrbitSample) -> Result<Q> {
    sample
        .distances
        .iter()
        .filter(|(&k, _)| k > 0)
        .map(|(&k, &d)| Q::new(BigInt::from(d), BigInt::from(k)))
        .min()
        .ok_or(Error::NoData)
}

/// `max(0, d_k/k - 2M/k)`. Sound only when the orbit is a `K'`-quasigeodesic.
pub fn quasigeodesic_lower(sample: &OrbitSample, k: u64, params: &HypParams) -> Result<Q> {
    if k == 0 {
        return Err(Error::MissingDistance(0));
    }
    let d = sample.distances.get(&k).ok_or(Error::MissingDistance(k))?;
    let kq = qi(k as i64);
    let v = (qi(*d as i64) - qi(2) * &params.m) / kq;
    Ok(if v.is_negative() { Q::zero() } else { v })
}

/// Checks `|i-j|/K - K <= d(i,j) <= K|i-j| + K` for every pair of path
/// indices with `|i-j| < window`. The index range is the span of indices
/// occurring in `path_distances`; pairs may be stored in either order.
pub fn local_quasigeodesic_audit(
    path_distances: &BTreeMap<(i64, i64), u64>,
    window: u64,
    k: &Q,
) -> Result<bool> {
    if path_distances.is_empty() {
        return Err(Error::NoData);
    }
    let lo = path_distances.keys().map(|&(i, j)| i.min(j)).min().unwrap();
    let hi = path_distances.keys().map(|&(i, j)| i.max(j)).max().unwrap();
    let w = window as i64;
    let mut ok = true;
    for i in lo..=hi {
        for j in i + 1..=hi.min(i + w - 1) {
            let d = path_distances
                .get(&(i, j))
                .or_else(|| path_distances.get(&(j, i)))
                .ok_or(Error::IncompleteAudit(i, j))?;
            let gap = qi(j - i);
            let d = qi(*d as i64);
            if d < &gap / k - k || d > k * &gap + k {
                ok = false;
            }
        }
    }
    Ok(ok)
}

/// Where a bound in a [`TLBracket`] came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRecord {
    /// `"upper"`, `"lower"` or `"exact"`.
    pub side: String,
    pub source: String,
    #[serde(
        serialize_with = "rational::ser_q",
        deserialize_with = "rational::de_q"
    )]
    pub value: Q,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<HypParams>,
}

/// Certified interval for a stable translation length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TLBracket {
    #[serde(
        serialize_with = "rational::ser_q",
        deserialize_with = "rational::de_q"
    )]
    pub lower: Q,
    /// `None` is `+infinity`.
    #[serde(
        serialize_with = "rational::ser_opt_q",
        deserialize_with = "rational::de_opt_q"
    )]
    pub upper: Option<Q>,
    #[serde(
        serialize_with = "rational::ser_opt_q",
        deserialize_with = "rational::de_opt_q"
    )]
    pub exact: Option<Q>,
    pub provenance: Vec<BoundRecord>,
}

impl TLBracket {
    pub fn unbounded() -> Self {
        TLBracket {
            lower: Q::zero(),
            upper: None,
            exact: None,
            provenance: Vec::new(),
        }
    }

    pub fn exact(value: Q, source: &str, detail: impl Into<String>) -> Self {
        let mut b = TLBracket {
            lower: value.clone(),
            upper: Some(value.clone()),
            exact: Some(value.clone()),
            provenance: Vec::new(),
        };
        b.provenance.push(BoundRecord {
            side: "exact".into(),
            source: source.into(),
            value,
            detail: detail.into(),
            params: None,
        });
        b
    }

    /// Raises the lower bound if `value` improves it.
    pub fn offer_lower(
        &mut self,
        value: Q,
        source: &str,
        detail: impl Into<String>,
        params: Option<HypParams>,
    ) {
        if value > self.lower {
            self.lower = value.clone();
        }
        self.provenance.push(BoundRecord {
            side: "lower".into(),
            source: source.into(),
            value,
            detail: detail.into(),
            params,
        });
    }

    /// Lowers the upper bound if `value` improves it.
    pub fn offer_upper(&mut self, value: Q, source: &str, detail: impl Into<String>) {
        if self.upper.as_ref().is_none_or(|u| value < *u) {
            self.upper = Some(value.clone());
        }
        self.provenance.push(BoundRecord {
            side: "upper".into(),
            source: source.into(),
            value,
            detail: detail.into(),
            params: None,
        });
    }

    pub fn is_consistent(&self) -> bool {
        let up_ok = |x: &Q| self.upper.as_ref().is_none_or(|u| x <= u);
        up_ok(&self.lower)
            && self
                .exact
                .as_ref()
                .is_none_or(|e| &self.lower <= e && up_ok(e))
    }

    pub fn width(&self) -> Option<Q> {
        self.upper.as_ref().map(|u| u - &self.lower)
    }

    pub fn contains(&self, x: &Q) -> bool {
        &self.lower <= x && self.upper.as_ref().is_none_or(|u| x <= u)
    }

    /// Promotes to exact when the interval has collapsed.
    pub fn collapse_if_tight(&mut self) {
        if self.exact.is_none() && self.upper.as_ref() == Some(&self.lower) {
            self.exact = Some(self.lower.clone());
        }
    }

    pub fn describe(&self) -> String {
        match (&self.exact, &self.upper) {
            (Some(e), _) => format!("exact {}", fmt_q(e)),
            (None, Some(u)) => format!("[{}, {}]", fmt_q(&self.lower), fmt_q(u)),
            (None, None) => format!("[{}, inf)", fmt_q(&self.lower)),
        }
    }
}

/// Lower bound from the Fekete sample at every `k`, keeping the best; used by
/// backends once the orbit has passed a window audit.
pub fn best_quasigeodesic_lower(sample: &OrbitSample, params: &HypParams) -> Q {
    sample
        .distances
        .keys()
        .filter(|&&k| k > 0)
        .filter_map(|&k| quasigeodesic_lower(sample, k, params).ok())
        .max()
        .unwrap_or_else(Q::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    #[test]
    fn fekete_examples() {
        assert_eq!(
            fekete_upper(&OrbitSample::new("x").with(1, 0)).unwrap(),
            qi(0)
        );
        let s = OrbitSample::new("x").with(1, 1).with(2, 2).with(3, 3);
        assert_eq!(fekete_upper(&s).unwrap(), qi(1));
        let s = OrbitSample::new("x").with(1, 3).with(4, 8);
        assert_eq!(fekete_upper(&s).unwrap(), qi(2));
        assert_eq!(fekete_upper(&OrbitSample::new("x")), Err(Error::NoData));
        assert_eq!(
            fekete_upper(&OrbitSample::new("x").with(0, 0)),
            Err(Error::NoData)
        );
    }

    #[test]
    fn quasigeodesic_lower_examples() {
        let p = derive_constants(
            &qi(1),
            &qi(1),
            Some(&HypOverrides {
                m: Some(qi(1)),
                ..Default::default()
            }),
        )
        .unwrap();
        let s = OrbitSample::new("x").with(5, 10);
        assert_eq!(quasigeodesic_lower(&s, 5, &p).unwrap(), q(8, 5));
        let p0 = derive_constants(&qi(0), &qi(1), None).unwrap();
        assert_eq!(
            quasigeodesic_lower(&OrbitSample::new("x").with(1, 0), 1, &p0).unwrap(),
            qi(0)
        );
        assert_eq!(
            quasigeodesic_lower(&s, 3, &p),
            Err(Error::MissingDistance(3))
        );
        // clamped at zero
        assert_eq!(
            quasigeodesic_lower(&OrbitSample::new("x").with(1, 1), 1, &p).unwrap(),
            qi(0)
        );
    }

    #[test]
    fn audit_examples() {
        let mut geo = BTreeMap::new();
        let mut flat = BTreeMap::new();
        for i in 0..6i64 {
            for j in 0..6i64 {
                geo.insert((i, j), (i - j).unsigned_abs());
                flat.insert((i, j), 0);
            }
        }
        assert!(local_quasigeodesic_audit(&geo, 4, &qi(1)).unwrap());
        assert!(local_quasigeodesic_audit(&geo, 100, &qi(1)).unwrap());
        assert!(!local_quasigeodesic_audit(&flat, 3, &qi(1)).unwrap());
        let mut sparse = BTreeMap::new();
        sparse.insert((0, 2), 2);
        assert_eq!(
            local_quasigeodesic_audit(&sparse, 3, &qi(1)),
            Err(Error::IncompleteAudit(0, 1))
        );
    }

    #[test]
    fn constants_examples() {
        let p = derive_constants(&qi(0), &qi(1), None).unwrap();
        assert_eq!(p.m, qi(0));
        let o = HypOverrides {
            m: Some(qi(2)),
            ..Default::default()
        };
        let p = derive_constants(&qi(1), &qi(1), Some(&o)).unwrap();
        assert_eq!(p.m, qi(2));
        assert_eq!(p.overridden, vec!["M".to_string()]);
        // golden: delta = 1, K = 2
        let p = derive_constants(&qi(1), &qi(2), None).unwrap();
        assert_eq!(p.k_prime, qi(6));
        assert_eq!(p.m, qi(251));
        assert_eq!(p.n, 20);
        assert_eq!(p.l, qi(17));
        assert!(derive_constants(&qi(1), &q(1, 2), None).is_err());
        assert!(derive_constants(&qi(-1), &qi(1), None).is_err());
    }

    #[test]
    fn bracket_bookkeeping() {
        let mut b = TLBracket::unbounded();
        b.offer_upper(qi(3), "fekete", "k=1");
        b.offer_upper(qi(5), "fekete", "k=2");
        b.offer_lower(qi(1), "qg", "k=4", None);
        assert_eq!(b.upper, Some(qi(3)));
        assert_eq!(b.lower, qi(1));
        assert!(b.is_consistent());
        assert_eq!(b.describe(), "[1, 3]");
        b.offer_upper(qi(1), "fekete", "k=3");
        b.collapse_if_tight();
        assert_eq!(b.exact, Some(qi(1)));
    }

    proptest! {
        #[test]
        fn adding_samples_never_raises_fekete(ds in proptest::collection::vec(0u64..50, 1..8), extra in 0u64..50, ek in 1u64..20) {
            let mut s = OrbitSample::new("x");
            for (i, d) in ds.iter().enumerate() {
                s.insert(i as u64 + 1, *d);
            }
            let before = fekete_upper(&s).unwrap();
            s.insert(ek + 100, extra);
            prop_assert!(fekete_upper(&s).unwrap() <= before);
        }

        #[test]
        fn larger_morse_constant_weakens_lower(d in 0u64..100, k in 1u64..20, m1 in 0i64..50, dm in 0i64..50) {
            let s = OrbitSample::new("x").with(k, d);
            let mk = |m: i64| derive_constants(&qi(1), &qi(1), Some(&HypOverrides { m: Some(qi(m)), ..Default::default() })).unwrap();
            let a = quasigeodesic_lower(&s, k, &mk(m1)).unwrap();
            let b = quasigeodesic_lower(&s, k, &mk(m1 + dm)).unwrap();
            prop_assert!(b <= a);
        }

        #[test]
        fn default_morse_constant_monotone(d1 in 0i64..8, d2 in 0i64..8, k1 in 1i64..6, k2 in 1i64..6) {
            let (dl, dh) = (d1.min(d2), d1.max(d2));
            let (kl, kh) = (k1.min(k2), k1.max(k2));
            let lo = derive_constants(&qi(dl), &qi(kl), None).unwrap();
            let hi = derive_constants(&qi(dh), &qi(kh), None).unwrap();
            prop_assert!(lo.m <= hi.m);
            prop_assert!(lo.k_prime <= hi.k_prime);
        }
    }
}
