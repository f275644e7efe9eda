//! Sparse linear algebra over a prime field: vectors in diagram coordinates and
//! row-echelon subspaces with optional provenance tags.

use std::collections::BTreeMap;

use crate::ring::PrimeField;

/// Sparse vector; absent entries are zero, stored entries are nonzero.
pub type SparseVec = BTreeMap<usize, u64>;

pub(crate) fn axpy(f: &PrimeField, y: &mut SparseVec, a: u64, x: &SparseVec) {
    if a == 0 {
        return;
    }
    for (&k, &v) in x {
        let e = y.entry(k).or_insert(0);
        *e = f.add(*e, f.mul(a, v));
        if *e == 0 {
            y.remove(&k);
        }
    }
}

pub(crate) fn scale(f: &PrimeField, x: &SparseVec, a: u64) -> SparseVec {
    if a == 0 {
        return SparseVec::new();
    }
    x.iter().map(|(&k, &v)| (k, f.mul(v, a))).collect()
}

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    tag: SparseVec,
}

/// A subspace kept in echelon form: each row has leading entry 1 at its pivot
/// (smallest index) and no two rows share a pivot.
///
/// Rows may carry a tag recording which combination of inserted generators
/// they came from; [`Subspace::express`] uses it to write a vector in those generators.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: PrimeField,
    rows: BTreeMap<usize, Row>,
}

impl Subspace {
    pub fn new(field: PrimeField) -> Self {
        Self {
            field,
            rows: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    fn reduce_tagged(&self, mut v: SparseVec, mut tag: SparseVec) -> (SparseVec, SparseVec) {
        let f = &self.field;
        let mut from = 0;
        while let Some((&k, &c)) = v.range(from..).next() {
            match self.rows.get(&k) {
                Some(row) => {
                    let a = f.neg(c);
                    axpy(f, &mut v, a, &row.vec);
                    axpy(f, &mut tag, a, &row.tag);
                }
                None => from = k + 1,
            }
        }
        (v, tag)
    }

    /// Residue of `v` after eliminating every pivot of the subspace.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_tagged(v.clone(), SparseVec::new()).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v` with the given tag; returns whether the rank grew.
    pub fn insert_tagged(&mut self, v: &SparseVec, tag: SparseVec) -> bool {
        let (r, t) = self.reduce_tagged(v.clone(), tag);
        let Some((&pivot, &lead)) = r.iter().next() else {
            return false;
        };
        let inv = self.field.inv(lead);
        let row = Row {
            vec: scale(&self.field, &r, inv),
            tag: scale(&self.field, &t, inv),
        };
        self.rows.insert(pivot, row);
        true
    }

    pub fn insert(&mut self, v: &SparseVec) -> bool {
        self.insert_tagged(v, SparseVec::new())
    }

    pub fn extend<'a>(&mut self, vs: impl IntoIterator<Item = &'a SparseVec>) {
        for v in vs {
            self.insert(v);
        }
    }

    /// Writes `v` as a combination of the tagged generators, modulo the untagged rows.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        let (r, t) = self.reduce_tagged(v.clone(), SparseVec::new());
        if !r.is_empty() {
            return None;
        }
        // v - Σ c_r row_r = 0 and the tag accumulated -Σ c_r tag_r
        Some(scale(&self.field, &t, self.field.neg(1)))
    }

    pub fn contains_all(&self, other: &Subspace) -> bool {
        other.rows.values().all(|r| self.contains(&r.vec))
    }

    pub fn same_span(&self, other: &Subspace) -> bool {
        self.rank() == other.rank() && self.contains_all(other)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in other.rows.values() {
            s.insert(&r.vec);
        }
        s
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &SparseVec> + '_ {
        self.rows.values().map(|r| &r.vec)
    }

    /// Smallest subspace containing this one and closed under every map in `ops`.
    pub fn close_under<F>(&mut self, ops: &[F])
    where
        F: Fn(&SparseVec) -> SparseVec,
    {
        let mut queue: Vec<SparseVec> = self.rows.values().map(|r| r.vec.clone()).collect();
        while let Some(v) = queue.pop() {
            for op in ops {
                let w = op(&v);
                let (r, _) = self.reduce_tagged(w, SparseVec::new());
                if !r.is_empty() && self.insert(&r) {
                    queue.push(r);
                }
            }
        }
    }
}
