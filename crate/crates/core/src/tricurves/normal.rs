//! Normal coordinates and crossing sequences.

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::triangulation::Triangulation;
use crate::error::{Error, Result};
use crate::farey::Slope;

/// Crossing of an edge: `up == true` means passing from the triangle left of
/// the edge (seen along its direction) to the triangle on its right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Token {
    pub edge: usize,
    pub up: bool,
}

impl Token {
    pub fn new(edge: usize, up: bool) -> Token {
        Token { edge, up }
    }

    pub fn inv(self) -> Token {
        Token {
            edge: self.edge,
            up: !self.up,
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.up { "+" } else { "-" }, self.edge)
    }
}

impl std::str::FromStr for Token {
    type Err = Error;
    fn from_str(s: &str) -> Result<Token> {
        let s = s.trim();
        let (up, rest) = match s.as_bytes().first() {
            Some(b'-') => (false, &s[1..]),
            Some(b'+') => (true, &s[1..]),
            _ => (true, s),
        };
        let edge = rest
            .parse()
            .map_err(|_| Error::Parse(format!("bad crossing token {s:?}")))?;
        Ok(Token { edge, up })
    }
}

pub fn parse_sequence(line: &str) -> Result<Vec<Token>> {
    line.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse())
        .collect()
}

pub fn format_sequence(seq: &[Token]) -> String {
    seq.iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// One crossing sequence per non-empty line; `#` starts a comment.
pub fn parse_curve_file(text: &str) -> Result<Vec<Vec<Token>>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(parse_sequence)
        .collect()
}

/// Reverses the orientation of a closed crossing sequence.
pub fn reversed(seq: &[Token]) -> Vec<Token> {
    seq.iter().rev().map(|t| t.inv()).collect()
}

/// Triangle (and slot) a token leaves.
pub(crate) fn from_tri(t: &Triangulation, x: Token) -> (usize, usize) {
    t.locate(super::Side::new(x.edge, x.up))
}

/// Triangle (and slot) a token enters.
pub(crate) fn into_tri(t: &Triangulation, x: Token) -> (usize, usize) {
    t.locate(super::Side::new(x.edge, !x.up))
}

/// Checks that consecutive crossings share a triangle (cyclically).
pub fn validate_chain(t: &Triangulation, seq: &[Token]) -> Result<()> {
    for x in seq {
        if x.edge >= t.num_edges() {
            return Err(Error::BadCrossings(format!("edge {} out of range", x.edge)));
        }
    }
    for i in 0..seq.len() {
        let x = seq[i];
        let y = seq[(i + 1) % seq.len()];
        if into_tri(t, x).0 != from_tri(t, y).0 {
            return Err(Error::BadCrossings(format!(
                "{x} then {y} do not share a triangle"
            )));
        }
    }
    Ok(())
}

/// Cancels backtracking `x x^-1`, including across the cyclic seam.
pub fn cyclic_reduce(seq: &[Token]) -> Vec<Token> {
    let mut st: Vec<Token> = Vec::with_capacity(seq.len());
    for &x in seq {
        if st.last() == Some(&x.inv()) {
            st.pop();
        } else {
            st.push(x);
        }
    }
    let (mut i, mut j) = (0, st.len());
    while j >= i + 2 && st[i] == st[j - 1].inv() {
        i += 1;
        j -= 1;
    }
    st[i..j].to_vec()
}

fn corner_counts(w: [u64; 3]) -> Option<[u64; 3]> {
    let mut c = [0u64; 3];
    for i in 0..3 {
        let s = w[i] as i128 + w[(i + 1) % 3] as i128 - w[(i + 2) % 3] as i128;
        if s < 0 || s % 2 != 0 {
            return None;
        }
        c[i] = (s / 2) as u64;
    }
    Some(c)
}

/// Checks the matching conditions in every triangle.
pub fn check_weights(t: &Triangulation, w: &[u64]) -> Result<()> {
    if w.len() != t.num_edges() {
        return Err(Error::BadWeights(format!(
            "expected {} weights, got {}",
            t.num_edges(),
            w.len()
        )));
    }
    for (i, tri) in t.triangles().iter().enumerate() {
        let ws = tri.map(|s| w[s.edge]);
        if corner_counts(ws).is_none() {
            return Err(Error::BadWeights(format!(
                "matching fails in triangle {i}: {ws:?}"
            )));
        }
    }
    Ok(())
}

/// Traces the normal multicurve with weights `w` into its components.
/// `max_len` bounds the total work.
pub fn trace_components(t: &Triangulation, w: &[u64], max_len: u64) -> Result<Vec<Vec<Token>>> {
    Ok(trace_indexed(t, w, max_len)?
        .into_iter()
        .map(|c| c.into_iter().map(|(x, _)| x).collect())
        .collect())
}

/// As [`trace_components`], with the position of each crossing along its
/// edge (counted from the tail).
pub fn trace_indexed(t: &Triangulation, w: &[u64], max_len: u64) -> Result<Vec<Vec<(Token, u64)>>> {
    check_weights(t, w)?;
    let total: u64 = w.iter().sum();
    if total > max_len {
        return Err(Error::Budget(format!(
            "curve weight {total} exceeds {max_len}"
        )));
    }
    let corners: Vec<[u64; 3]> = t
        .triangles()
        .iter()
        .map(|tri| corner_counts(tri.map(|s| w[s.edge])).unwrap())
        .collect();
    let mut seen: Vec<Vec<bool>> = w.iter().map(|&x| vec![false; x as usize]).collect();
    let mut comps = Vec::new();
    for e0 in 0..w.len() {
        for i0 in 0..w[e0] {
            if seen[e0][i0 as usize] {
                continue;
            }
            let mut seq = vec![(Token::new(e0, true), i0)];
            seen[e0][i0 as usize] = true;
            let (mut tri, mut slot) = t.locate(super::Side::new(e0, false));
            let mut k = w[e0] - 1 - i0;
            loop {
                let sides = t.triangle(tri);
                let wj = w[sides[slot].edge];
                let c = corners[tri];
                let (out, ko) = if k >= wj - c[slot] {
                    let o = (slot + 1) % 3;
                    (o, wj - 1 - k)
                } else {
                    let o = (slot + 2) % 3;
                    (o, w[sides[o].edge] - 1 - k)
                };
                let s = sides[out];
                let we = w[s.edge];
                let idx = if s.fwd { ko } else { we - 1 - ko };
                if s.edge == e0 && idx == i0 {
                    break;
                }
                if seen[s.edge][idx as usize] {
                    return Err(Error::BadWeights("trace revisited a crossing".into()));
                }
                seen[s.edge][idx as usize] = true;
                seq.push((Token::new(s.edge, s.fwd), idx));
                let (nt, ns) = t.locate(s.rev());
                tri = nt;
                slot = ns;
                k = if s.rev().fwd { idx } else { we - 1 - idx };
            }
            comps.push(seq);
        }
    }
    Ok(comps)
}

/// Homology class of the closed crossing sequence in `H_1(T^2)`.
pub fn sequence_homology(t: &Triangulation, seq: &[Token]) -> (i64, i64) {
    let (mut x, mut y) = (0i64, 0i64);
    let mut shifts: Vec<Option<(i64, i64)>> = vec![None; t.num_edges()];
    for tok in seq {
        let n = *shifts[tok.edge].get_or_insert_with(|| {
            let v = t.chart_shift(tok.edge);
            (
                v.x.to_integer().to_i64().unwrap(),
                v.y.to_integer().to_i64().unwrap(),
            )
        });
        if tok.up {
            x -= n.0;
            y -= n.1;
        } else {
            x += n.0;
            y += n.1;
        }
    }
    (x, y)
}

fn canonical_sign(h: (i64, i64)) -> (i64, i64) {
    if h.1 < 0 || (h.1 == 0 && h.0 < 0) {
        (-h.0, -h.1)
    } else {
        h
    }
}

/// Parity of crossings with a fixed spanning-tree path from puncture 0 to
/// each puncture.
fn winding_parities(t: &Triangulation, seq: &[Token]) -> Vec<u8> {
    let n = t.num_vertices();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for (i, e) in t.edges().iter().enumerate() {
            for (a, b) in [(e.tail, e.head), (e.head, e.tail)] {
                if a == u && !seen[b] {
                    seen[b] = true;
                    parent[b] = Some((u, i));
                    queue.push_back(b);
                }
            }
        }
    }
    let mut count = vec![0u64; t.num_edges()];
    for tok in seq {
        count[tok.edge] += 1;
    }
    (0..n)
        .map(|mut v| {
            let mut p = 0u64;
            while let Some((u, e)) = parent[v] {
                p += count[e];
                v = u;
            }
            (p % 2) as u8
        })
        .collect()
}

fn same_cyclic(a: &[Token], b: &[Token]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let n = a.len();
    let matches = |b: &[Token]| (0..n).any(|r| (0..n).all(|i| a[i] == b[(i + r) % n]));
    matches(b) || matches(&reversed(b))
}

/// Essential simple closed curve on the punctured torus, stored by its
/// normal coordinates on a fixed triangulation.
#[derive(Clone, Debug, Serialize)]
pub struct NormalCurve {
    weights: Vec<u64>,
    homology: (i64, i64),
    winding: Vec<u8>,
    triangulation: String,
    #[serde(skip)]
    sequence: Vec<Token>,
}

impl PartialEq for NormalCurve {
    fn eq(&self, o: &Self) -> bool {
        self.weights == o.weights && self.triangulation == o.triangulation
    }
}

impl Eq for NormalCurve {}

impl std::hash::Hash for NormalCurve {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.weights.hash(h);
    }
}

impl PartialOrd for NormalCurve {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for NormalCurve {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        let n = |c: &NormalCurve| c.weights.iter().sum::<u64>();
        n(self)
            .cmp(&n(o))
            .then_with(|| self.weights.cmp(&o.weights))
    }
}

pub const DEFAULT_MAX_WEIGHT: u64 = 5_000_000;

impl NormalCurve {
    /// Curve with the given normal coordinates; rejects multicurves,
    /// peripheral and empty curves.
    pub fn from_weights(t: &Triangulation, w: Vec<u64>) -> Result<NormalCurve> {
        NormalCurve::from_weights_bounded(t, w, DEFAULT_MAX_WEIGHT)
    }

    pub fn from_weights_bounded(
        t: &Triangulation,
        w: Vec<u64>,
        max_weight: u64,
    ) -> Result<NormalCurve> {
        let comps = trace_components(t, &w, max_weight)?;
        match comps.len() {
            0 => return Err(Error::Inessential),
            1 => {}
            n => return Err(Error::NotSimple(format!("weights describe {n} components"))),
        }
        if (0..t.num_vertices()).any(|v| t.link_weights(v) == w) {
            return Err(Error::Inessential);
        }
        let sequence = comps.into_iter().next().unwrap();
        Ok(NormalCurve {
            homology: canonical_sign(sequence_homology(t, &sequence)),
            winding: winding_parities(t, &sequence),
            triangulation: t.hash(),
            weights: w,
            sequence,
        })
    }

    /// Canonical class of a closed curve given by the edges it crosses.
    pub fn normalize(seq: &[Token], t: &Triangulation) -> Result<NormalCurve> {
        validate_chain(t, seq)?;
        let red = cyclic_reduce(seq);
        if red.is_empty() {
            return Err(Error::Inessential);
        }
        let mut w = vec![0u64; t.num_edges()];
        for x in &red {
            w[x.edge] += 1;
        }
        let comps = trace_components(t, &w, DEFAULT_MAX_WEIGHT)?;
        if comps.len() != 1 || !same_cyclic(&comps[0], &red) {
            return Err(Error::NotSimple(
                "crossing sequence is not a simple curve in normal position".into(),
            ));
        }
        NormalCurve::from_weights(t, w)
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight_norm(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// `(p, q)` up to sign, normalised with `q > 0` or `q = 0, p > 0`.
    pub fn homology(&self) -> (i64, i64) {
        self.homology
    }

    pub fn winding(&self) -> &[u8] {
        &self.winding
    }

    pub fn triangulation_hash(&self) -> &str {
        &self.triangulation
    }

    /// Crossing sequence of the normal representative.
    pub fn sequence(&self) -> &[Token] {
        &self.sequence
    }

    pub fn is_nonseparating(&self) -> bool {
        self.homology != (0, 0)
    }

    /// Image slope after filling in every puncture.
    pub fn slope(&self) -> Option<Slope> {
        if self.is_nonseparating() {
            Some(Slope::new(self.homology.0, self.homology.1).unwrap())
        } else {
            None
        }
    }

    pub(crate) fn check_on(&self, t: &Triangulation) -> Result<()> {
        if self.triangulation != t.hash() {
            return Err(Error::TriangulationMismatch);
        }
        Ok(())
    }

    /// `edge_id:weight` pairs.
    pub fn to_text(&self) -> String {
        self.weights
            .iter()
            .enumerate()
            .map(|(e, w)| format!("{e}:{w}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse(text: &str, t: &Triangulation) -> Result<NormalCurve> {
        let mut w = vec![0u64; t.num_edges()];
        for item in text.split_whitespace() {
            let (e, v) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected edge:weight, got {item:?}")))?;
            let e: usize = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad edge id {e:?}")))?;
            let v: u64 = v
                .parse()
                .map_err(|_| Error::Parse(format!("bad weight {v:?}")))?;
            if e >= w.len() {
                return Err(Error::Parse(format!("edge id {e} out of range")));
            }
            w[e] = v;
        }
        NormalCurve::from_weights(t, w)
    }
}

impl fmt::Display for NormalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
