//! Blob diagrams and their composition.
//!
//! Boundary points are numbered `1..=2n` around the frame: the top edge left to
//! right is `1..=n`, the bottom edge right to left is `n+1..=2n`. The western
//! edge is the gap between `2n` and `1`. With this numbering a pairing is planar
//! iff it is non-crossing in the linear order, and an arc can carry a blob iff
//! no other arc encloses it.
//!
//! Internally points are 0-based.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::RingElem;
use crate::union_find::DisjointSet;
use crate::word::Gen;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlobDiagram {
    n: usize,
    mate: Vec<u16>,
    /// Set on both endpoints of a blobbed arc.
    blob: Vec<bool>,
}

/// Counts of features removed while composing: the scalar is
/// `[2]^loops · γ^blob_loops · δe^excess_blobs`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct LoopTally {
    pub loops: u32,
    pub blob_loops: u32,
    pub excess_blobs: u32,
}

impl LoopTally {
    pub fn is_unit(&self) -> bool {
        *self == LoopTally::default()
    }

    pub fn combine(self, other: LoopTally) -> LoopTally {
        LoopTally {
            loops: self.loops + other.loops,
            blob_loops: self.blob_loops + other.blob_loops,
            excess_blobs: self.excess_blobs + other.excess_blobs,
        }
    }

    /// Total degree after clearing the `q⁻¹` denominators of `[2]`.
    pub fn degree(&self) -> u64 {
        2 * self.loops as u64 + self.blob_loops as u64 + self.excess_blobs as u64
    }

    pub fn to_ring(&self) -> RingElem {
        RingElem::loop_value().pow(self.loops)
            * RingElem::gamma().pow(self.blob_loops)
            * RingElem::delta_e().pow(self.excess_blobs)
    }
}

impl BlobDiagram {
    pub fn identity(n: usize) -> Self {
        let mate = (0..2 * n).map(|p| (2 * n - 1 - p) as u16).collect();
        Self {
            n,
            mate,
            blob: vec![false; 2 * n],
        }
    }

    /// The cap/cup diagram for `U_i`.
    pub fn gen_u(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { index: i as u32, n });
        }
        let mut d = Self::identity(n);
        let (a, b) = (i - 1, i);
        let (c, e) = (2 * n - 1 - a, 2 * n - 1 - b);
        d.mate[a] = b as u16;
        d.mate[b] = a as u16;
        d.mate[c] = e as u16;
        d.mate[e] = c as u16;
        Ok(d)
    }

    /// The identity with a blob on its leftmost line.
    pub fn gen_e(n: usize) -> Self {
        let mut d = Self::identity(n);
        if n > 0 {
            d.blob[0] = true;
            d.blob[2 * n - 1] = true;
        }
        d
    }

    pub fn generator(n: usize, g: Gen) -> Result<Self> {
        match g {
            Gen::E => Ok(Self::gen_e(n)),
            Gen::U(i) => Self::gen_u(n, i as usize),
        }
    }

    /// Builds a diagram from 1-based arcs and blobbed arcs, checking all invariants.
    pub fn from_pairs(
        n: usize,
        pairs: &[(usize, usize)],
        blobs: &[(usize, usize)],
    ) -> Result<Self> {
        let bad = |msg: String| Error::InvalidDiagram(msg);
        let mut mate = vec![u16::MAX; 2 * n];
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > 2 * n || b > 2 * n || a == b {
                return Err(bad(format!("arc ({a},{b}) out of range")));
            }
            for (x, y) in [(a, b), (b, a)] {
                if mate[x - 1] != u16::MAX {
                    return Err(bad(format!("point {x} used twice")));
                }
                mate[x - 1] = (y - 1) as u16;
            }
        }
        if mate.contains(&u16::MAX) {
            return Err(bad("pairing is not perfect".into()));
        }
        let mut blob = vec![false; 2 * n];
        for &(a, b) in blobs {
            if a == 0 || a > 2 * n || mate[a - 1] as usize != b - 1 {
                return Err(bad(format!("blob on non-arc ({a},{b})")));
            }
            blob[a - 1] = true;
            blob[b - 1] = true;
        }
        let d = Self { n, mate, blob };
        d.validate()?;
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based arcs sorted by smaller endpoint.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..2 * self.n)
            .filter(|&p| p < self.mate[p] as usize)
            .map(|p| (p + 1, self.mate[p] as usize + 1))
            .collect()
    }

    pub fn blobbed_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs()
            .into_iter()
            .filter(|&(a, _)| self.blob[a - 1])
            .collect()
    }

    pub fn has_blob(&self, arc: (usize, usize)) -> bool {
        self.blob[arc.0 - 1]
    }

    /// Whether the 1-based arc `(i, j)` is not enclosed by any other arc.
    pub fn west_exposed(&self, arc: (usize, usize)) -> bool {
        let (i, j) = (arc.0.min(arc.1), arc.0.max(arc.1));
        !self.pairs().iter().any(|&(k, l)| k < i && j < l)
    }

    pub fn through_count(&self) -> usize {
        (0..self.n)
            .filter(|&p| self.mate[p] as usize >= self.n)
            .count()
    }

    /// Top-bottom mirror image.
    pub fn flip(&self) -> Self {
        let m = 2 * self.n;
        let mut mate = vec![0u16; m];
        let mut blob = vec![false; m];
        for p in 0..m {
            mate[m - 1 - p] = (m - 1 - self.mate[p] as usize) as u16;
            blob[m - 1 - p] = self.blob[p];
        }
        Self {
            n: self.n,
            mate,
            blob,
        }
    }

    /// Checks planarity and that blobs sit only on exposed arcs.
    pub fn validate(&self) -> Result<()> {
        let mut stack: Vec<usize> = Vec::new();
        for p in 0..2 * self.n {
            let q = self.mate[p] as usize;
            if q > p {
                if self.blob[p] && !stack.is_empty() {
                    return Err(Error::InvalidDiagram(format!(
                        "blob on enclosed arc ({},{})",
                        p + 1,
                        q + 1
                    )));
                }
                stack.push(p);
            } else if stack.pop() != Some(q) {
                return Err(Error::InvalidDiagram("pairing crosses".into()));
            }
        }
        Ok(())
    }

    /// Stacks `self` on top of `below`, returning the reduced diagram and the removed features.
    pub fn compose_tally(&self, below: &BlobDiagram) -> Result<(BlobDiagram, LoopTally)> {
        let n = self.n;
        if n != below.n {
            return Err(Error::StrandMismatch {
                left: n,
                right: below.n,
            });
        }
        // nodes: 0..n top of self, n..2n the glued middle row, 2n..3n bottom of below
        let upper = |p: usize| if p < n { p } else { n + (2 * n - 1 - p) };
        let lower = |p: usize| {
            if p < n {
                n + p
            } else {
                2 * n + (2 * n - 1 - p)
            }
        };
        let mut ds = DisjointSet::new(3 * n);
        for p in 0..2 * n {
            let q = self.mate[p] as usize;
            if p < q {
                ds.union(upper(p), upper(q));
            }
            let q = below.mate[p] as usize;
            if p < q {
                ds.union(lower(p), lower(q));
            }
        }
        let mut blobs = vec![0u32; 3 * n];
        for p in 0..2 * n {
            if self.blob[p] && p < self.mate[p] as usize {
                blobs[ds.find(upper(p))] += 1;
            }
            if below.blob[p] && p < below.mate[p] as usize {
                blobs[ds.find(lower(p))] += 1;
            }
        }

        let mut tally = LoopTally::default();
        let mut ends: Vec<Option<usize>> = vec![None; 3 * n];
        let mut mate = vec![0u16; 2 * n];
        let mut blob = vec![false; 2 * n];
        let mut has_end = vec![false; 3 * n];
        let externals = (0..n)
            .map(|i| (i, i))
            .chain((0..n).map(|i| (2 * n + i, 2 * n - 1 - i)));
        for (node, point) in externals {
            let root = ds.find(node);
            has_end[root] = true;
            match ends[root] {
                None => ends[root] = Some(point),
                Some(other) => {
                    mate[point] = other as u16;
                    mate[other] = point as u16;
                    if blobs[root] > 0 {
                        blob[point] = true;
                        blob[other] = true;
                        tally.excess_blobs += blobs[root] - 1;
                    }
                }
            }
        }
        for node in n..2 * n {
            let root = ds.find(node);
            if has_end[root] {
                continue;
            }
            has_end[root] = true;
            if blobs[root] > 0 {
                tally.excess_blobs += blobs[root] - 1;
                tally.blob_loops += 1;
            } else {
                tally.loops += 1;
            }
        }
        let out = BlobDiagram { n, mate, blob };
        debug_assert!(out.validate().is_ok(), "composition left the diagram basis");
        Ok((out, tally))
    }

    pub fn compose(&self, below: &BlobDiagram) -> Result<ScaledDiagram> {
        let (diagram, tally) = self.compose_tally(below)?;
        Ok(ScaledDiagram {
            coeff: tally.to_ring(),
            diagram,
        })
    }
}

impl fmt::Display for BlobDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self
            .pairs()
            .into_iter()
            .map(|(a, b)| {
                if self.blob[a - 1] {
                    format!("({a},{b})*")
                } else {
                    format!("({a},{b})")
                }
            })
            .collect();
        write!(f, "[{}]", arcs.join(" "))
    }
}

fn matchings(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    if lo >= hi {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in (lo + 1..hi).step_by(2) {
        let inner = matchings(lo + 1, k);
        let outer = matchings(k + 1, hi);
        for a in &inner {
            for b in &outer {
                let mut m = vec![(lo, k)];
                m.extend_from_slice(a);
                m.extend_from_slice(b);
                out.push(m);
            }
        }
    }
    out
}

/// All blob diagrams on `n` strands in a fixed order; there are `C(2n, n)` of them.
pub fn enumerate_bn(n: usize) -> Vec<BlobDiagram> {
    let mut out = Vec::new();
    for arcs in matchings(0, 2 * n) {
        let mut mate = vec![0u16; 2 * n];
        for &(a, b) in &arcs {
            mate[a] = b as u16;
            mate[b] = a as u16;
        }
        let base = BlobDiagram {
            n,
            mate,
            blob: vec![false; 2 * n],
        };
        let exposed: Vec<(usize, usize)> = arcs
            .iter()
            .copied()
            .filter(|&(a, b)| base.west_exposed((a + 1, b + 1)))
            .collect();
        for mask in 0u32..(1 << exposed.len()) {
            let mut d = base.clone();
            for (bit, &(a, b)) in exposed.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    d.blob[a] = true;
                    d.blob[b] = true;
                }
            }
            out.push(d);
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledDiagram {
    pub coeff: RingElem,
    pub diagram: BlobDiagram,
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    n: usize,
    pairs: Vec<[usize; 2]>,
    blobs: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coeff: Option<String>,
}

impl ScaledDiagram {
    pub fn unit(diagram: BlobDiagram) -> Self {
        Self {
            coeff: RingElem::one(),
            diagram,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let d = &self.diagram;
        serde_json::to_value(DiagramJson {
            n: d.n,
            pairs: d.pairs().into_iter().map(|(a, b)| [a, b]).collect(),
            blobs: d.blobbed_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
            coeff: Some(self.coeff.to_string()),
        })
        .expect("diagram json")
    }

    /// Parses the JSON form; a missing `coeff` means 1.
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: DiagramJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let pairs: Vec<_> = raw.pairs.iter().map(|p| (p[0], p[1])).collect();
        let blobs: Vec<_> = raw
            .blobs
            .iter()
            .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
            .collect();
        let diagram = BlobDiagram::from_pairs(raw.n, &pairs, &blobs)?;
        let coeff = match raw.coeff {
            Some(c) => c.parse()?,
            None => RingElem::one(),
        };
        Ok(Self { coeff, diagram })
    }

    pub fn compose(&self, below: &ScaledDiagram) -> Result<ScaledDiagram> {
        let prod = self.diagram.compose(&below.diagram)?;
        Ok(ScaledDiagram {
            coeff: &(&self.coeff * &below.coeff) * &prod.coeff,
            diagram: prod.diagram,
        })
    }
}

impl fmt::Display for ScaledDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.coeff, self.diagram)
    }
}

/// A formal sum of diagrams; iteration is in diagram order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinComb {
    terms: BTreeMap<BlobDiagram, RingElem>,
}

impl LinComb {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, d: BlobDiagram, c: &RingElem) {
        let entry = self.terms.entry(d.clone()).or_default();
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BlobDiagram, &RingElem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, rhs: &LinComb) -> Result<LinComb> {
        let mut out = LinComb::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let p = a.compose(b)?;
                out.add_term(p.diagram, &(&(x * y) * &p.coeff));
            }
        }
        Ok(out)
    }
}

impl From<ScaledDiagram> for LinComb {
    fn from(s: ScaledDiagram) -> Self {
        let mut out = LinComb::zero();
        out.add_term(s.diagram, &s.coeff);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn generator_shapes() {
        assert_eq!(
            BlobDiagram::gen_u(2, 1).unwrap().pairs(),
            vec![(1, 2), (3, 4)]
        );
        let e = BlobDiagram::gen_e(1);
        assert_eq!(e.pairs(), vec![(1, 2)]);
        assert_eq!(e.blobbed_pairs(), vec![(1, 2)]);
        assert_eq!(
            BlobDiagram::identity(3).pairs(),
            vec![(1, 6), (2, 5), (3, 4)]
        );
        assert_eq!(
            BlobDiagram::gen_u(3, 2).unwrap().pairs(),
            vec![(1, 6), (2, 3), (4, 5)]
        );
        assert!(BlobDiagram::gen_u(3, 3).is_err());
    }

    #[test]
    fn exposure_and_through_lines() {
        let id = BlobDiagram::identity(2);
        assert!(id.west_exposed((1, 4)));
        assert!(!id.west_exposed((2, 3)));
        assert!(!BlobDiagram::gen_u(3, 2).unwrap().west_exposed((2, 3)));
        assert_eq!(BlobDiagram::identity(5).through_count(), 5);
        assert_eq!(BlobDiagram::gen_u(2, 1).unwrap().through_count(), 0);
    }

    #[test]
    fn loop_and_blob_scalars() {
        let n = 4;
        for i in 1..n {
            let u = BlobDiagram::gen_u(n, i).unwrap();
            let p = u.compose(&u).unwrap();
            assert_eq!(p.coeff, RingElem::loop_value());
            assert_eq!(p.diagram, u);
        }
        let e = BlobDiagram::gen_e(n);
        let p = e.compose(&e).unwrap();
        assert_eq!(
            p,
            ScaledDiagram {
                coeff: RingElem::delta_e(),
                diagram: e.clone()
            }
        );
        let u1 = BlobDiagram::gen_u(n, 1).unwrap();
        let p = u1
            .compose(&e)
            .unwrap()
            .compose(&ScaledDiagram::unit(u1.clone()))
            .unwrap();
        assert_eq!(
            p,
            ScaledDiagram {
                coeff: RingElem::gamma(),
                diagram: u1
            }
        );
    }

    #[test]
    fn basis_counts() {
        assert_eq!(enumerate_bn(0).len(), 1);
        assert_eq!(enumerate_bn(1).len(), 2);
        assert_eq!(enumerate_bn(2).len(), 6);
        for n in 1..=8u64 {
            let basis = enumerate_bn(n as usize);
            assert_eq!(basis.len() as u64, binom(2 * n, n));
            assert!(basis.iter().all(|d| d.validate().is_ok()));
        }
    }

    #[test]
    fn flip_is_an_involution_fixing_generators() {
        for d in enumerate_bn(3) {
            assert_eq!(d.flip().flip(), d);
            assert!(d.flip().validate().is_ok());
        }
        for i in 1..4 {
            let u = BlobDiagram::gen_u(4, i).unwrap();
            assert_eq!(u.flip(), u);
        }
    }

    #[test]
    fn closure_and_associativity() {
        for n in 1..=4 {
            let basis = enumerate_bn(n);
            for a in &basis {
                for b in &basis {
                    let (d, _) = a.compose_tally(b).unwrap();
                    assert!(d.validate().is_ok());
                    assert_eq!(
                        a.compose(b).unwrap().diagram.flip(),
                        b.flip().compose(&a.flip()).unwrap().diagram
                    );
                }
            }
        }
        let basis = enumerate_bn(3);
        for a in basis.iter().step_by(3) {
            for b in basis.iter().step_by(2) {
                for c in &basis {
                    let (ab, t1) = a.compose_tally(b).unwrap();
                    let (abc, t2) = ab.compose_tally(c).unwrap();
                    let (bc, s1) = b.compose_tally(c).unwrap();
                    let (abc2, s2) = a.compose_tally(&bc).unwrap();
                    assert_eq!(abc, abc2);
                    assert_eq!(t1.combine(t2), s1.combine(s2));
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let s = r#"{"n":3,"pairs":[[1,6],[2,5],[3,4]],"blobs":[[1,6]],"coeff":"g*q^0"}"#;
        let d = ScaledDiagram::from_json(s).unwrap();
        assert_eq!(d.diagram, BlobDiagram::gen_e(3));
        assert_eq!(d.coeff, RingElem::gamma());
        assert_eq!(
            d.to_json().to_string(),
            r#"{"blobs":[[1,6]],"coeff":"g","n":3,"pairs":[[1,6],[2,5],[3,4]]}"#
        );
        assert!(ScaledDiagram::from_json(r#"{"n":2,"pairs":[[1,3],[2,4]],"blobs":[]}"#).is_err());
        assert!(
            ScaledDiagram::from_json(r#"{"n":2,"pairs":[[1,4],[2,3]],"blobs":[[2,3]]}"#).is_err()
        );
    }

    #[test]
    fn lincomb_products() {
        let u = ScaledDiagram::unit(BlobDiagram::gen_u(2, 1).unwrap());
        let id = ScaledDiagram::unit(BlobDiagram::identity(2));
        let mut x = LinComb::from(u.clone());
        x.add_term(id.diagram.clone(), &RingElem::one());
        // (1 + U)^2 = 1 + (2 + [2]) U
        let sq = x.mul(&x).unwrap();
        assert_eq!(sq.len(), 2);
        let coeff_u = sq.iter().find(|(d, _)| **d == u.diagram).unwrap().1.clone();
        assert_eq!(coeff_u, RingElem::int(2) + RingElem::loop_value());
    }
}
