use std::fmt;

use serde::{Deserialize, Serialize};

use super::geometry::V2;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q};

/// A finite set of distinct points of the torus `R^2 / Z^2`, stored reduced
/// to `[0, 1)^2` and sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PunctureSet {
    points: Vec<V2>,
}

impl PunctureSet {
    pub fn new(points: Vec<V2>) -> Result<PunctureSet> {
        if points.is_empty() {
            return Err(Error::EmptyPunctures);
        }
        let mut pts: Vec<V2> = points.iter().map(V2::reduce).collect();
        pts.sort();
        for w in pts.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicatePuncture(w[0].to_string()));
            }
        }
        Ok(PunctureSet { points: pts })
    }

    pub fn origin() -> PunctureSet {
        PunctureSet {
            points: vec![V2::int(0, 0)],
        }
    }

    pub fn points(&self) -> &[V2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &V2) -> Option<usize> {
        self.points.binary_search(&p.reduce()).ok()
    }

    pub fn contains(&self, p: &V2) -> bool {
        self.index_of(p).is_some()
    }

    pub fn is_subset_of(&self, other: &PunctureSet) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }

    /// Parses one `x_num/x_den,y_num/y_den` point per line; blank lines and
    /// `#` comments are skipped.
    pub fn parse(text: &str) -> Result<PunctureSet> {
        let mut pts = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (x, y) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("puncture line '{line}' is not 'x,y'")))?;
            pts.push(V2::new(parse_q(x)?, parse_q(y)?));
        }
        PunctureSet::new(pts)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for p in &self.points {
            s.push_str(&format!("{},{}\n", fmt_q(&p.x), fmt_q(&p.y)));
        }
        s
    }
}

impl fmt::Display for PunctureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn reduces_and_sorts() {
        let p = PunctureSet::new(vec![V2::new(q(3, 2), q(1, 2)), V2::int(0, 0)]).unwrap();
        assert_eq!(p.points()[1], V2::new(q(1, 2), q(1, 2)));
        assert!(p.contains(&V2::new(q(-1, 2), q(5, 2))));
    }

    #[test]
    fn rejects_duplicates_mod_lattice() {
        let e = PunctureSet::new(vec![V2::int(0, 0), V2::int(1, 1)]).unwrap_err();
        assert!(matches!(e, Error::DuplicatePuncture(_)));
        assert_eq!(PunctureSet::new(vec![]), Err(Error::EmptyPunctures));
    }

    #[test]
    fn text_round_trip() {
        let p = PunctureSet::parse("0/1,0/1\n# c\n1/2, 1/3\n").unwrap();
        assert_eq!(PunctureSet::parse(&p.to_text()).unwrap(), p);
        assert!(PunctureSet::parse("1/2 1/3").is_err());
    }
}
