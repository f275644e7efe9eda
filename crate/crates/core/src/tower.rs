//! Ideals, quotients and standard modules of `b_n`, decided by rank computations in
//! diagram coordinates over random specializations of the parameters.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::basis::{squared_basis, weights};
use crate::diagram::{enumerate_bn, BlobDiagram, LoopTally};
use crate::error::{Error, Result};
use crate::linalg::{axpy, SparseVec, Subspace};
use crate::presentation::phi_tally;
use crate::report::Report;
use crate::ring::PrimeField;
use crate::walk::{binomial, word_set};
use crate::word::{e_word, eplus_word, er_word, generators, Gen, Word};

/// Values for `q, γ, δe` in a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Specialization {
    #[serde(serialize_with = "field_modulus")]
    pub field: PrimeField,
    pub q: u64,
    pub gamma: u64,
    pub delta: u64,
}

fn field_modulus<S: serde::Serializer>(
    f: &PrimeField,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(f.modulus())
}

impl Specialization {
    pub fn new(field: PrimeField, q: u64, gamma: u64, delta: u64) -> Result<Self> {
        if field.reduce(q) == 0 {
            return Err(Error::NonInvertibleQ);
        }
        Ok(Self {
            field,
            q: field.reduce(q),
            gamma: field.reduce(gamma),
            delta: field.reduce(delta),
        })
    }

    /// `[2] = q + q⁻¹`.
    pub fn loop_value(&self) -> u64 {
        self.field.add(self.q, self.field.inv(self.q))
    }

    pub fn scalar(&self, t: LoopTally) -> u64 {
        let f = self.field;
        f.mul(
            f.pow(self.loop_value(), t.loops as u64),
            f.mul(
                f.pow(self.gamma, t.blob_loops as u64),
                f.pow(self.delta, t.excess_blobs as u64),
            ),
        )
    }

    /// Draws a point at which `q, [2], γ, δe` are all nonzero.
    pub fn draw(field: PrimeField, rng: &mut impl Rng) -> Self {
        loop {
            let p = field.modulus();
            let (q, gamma, delta) = (
                rng.gen_range(1..p),
                rng.gen_range(1..p),
                rng.gen_range(1..p),
            );
            let s = Self {
                field,
                q,
                gamma,
                delta,
            };
            if s.loop_value() != 0 {
                return s;
            }
        }
    }

    /// `count` points drawn from a seeded stream.
    pub fn points(prime: u64, seed: u64, count: usize) -> Result<Vec<Self>> {
        let field = PrimeField::new(prime)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok((0..count).map(|_| Self::draw(field, &mut rng)).collect())
    }
}

/// The diagram basis of `b_n` with the left and right action of each generator tabulated.
#[derive(Clone, Debug)]
pub struct CoordSpace {
    n: usize,
    diagrams: Vec<BlobDiagram>,
    index: HashMap<BlobDiagram, usize>,
    left: Vec<Vec<(usize, LoopTally)>>,
    right: Vec<Vec<(usize, LoopTally)>>,
}

impl CoordSpace {
    pub fn new(n: usize) -> Result<Self> {
        let diagrams = enumerate_bn(n);
        let index: HashMap<_, _> = diagrams
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, d)| (d, i))
            .collect();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for g in generators(n) {
            let gd = BlobDiagram::generator(n, g)?;
            let mut l = Vec::with_capacity(diagrams.len());
            let mut r = Vec::with_capacity(diagrams.len());
            for d in &diagrams {
                let (x, t) = gd.compose_tally(d)?;
                l.push((index[&x], t));
                let (x, t) = d.compose_tally(&gd)?;
                r.push((index[&x], t));
            }
            left.push(l);
            right.push(r);
        }
        Ok(Self {
            n,
            diagrams,
            index,
            left,
            right,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.diagrams.len()
    }

    pub fn diagram(&self, i: usize) -> &BlobDiagram {
        &self.diagrams[i]
    }

    /// Largest scalar degree produced by a single generator product.
    pub fn step_degree(&self) -> u64 {
        self.left
            .iter()
            .chain(&self.right)
            .flatten()
            .map(|(_, t)| t.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn at(&self, point: Specialization) -> Algebra<'_> {
        Algebra { space: self, point }
    }
}

fn gen_index(g: Gen) -> usize {
    match g {
        Gen::E => 0,
        Gen::U(i) => i as usize,
    }
}

type Op<'a> = Box<dyn Fn(&SparseVec) -> SparseVec + 'a>;

/// `b_n` specialized at one point.
#[derive(Clone, Copy, Debug)]
pub struct Algebra<'a> {
    pub space: &'a CoordSpace,
    pub point: Specialization,
}

impl<'a> Algebra<'a> {
    pub fn field(&self) -> PrimeField {
        self.point.field
    }

    pub fn word(&self, w: &Word) -> Result<SparseVec> {
        let w = w.with_n(self.space.n)?;
        let (d, t) = phi_tally(&w)?;
        let c = self.point.scalar(t);
        Ok(if c == 0 {
            SparseVec::new()
        } else {
            SparseVec::from([(self.space.index[&d], c)])
        })
    }

    fn act(&self, table: &[(usize, LoopTally)], v: &SparseVec) -> SparseVec {
        let f = self.field();
        let mut out = SparseVec::new();
        for (&j, &c) in v {
            let (k, t) = table[j];
            axpy(
                &f,
                &mut out,
                c,
                &SparseVec::from([(k, self.point.scalar(t))]),
            );
        }
        out
    }

    pub fn left(&self, g: Gen, v: &SparseVec) -> SparseVec {
        self.act(&self.space.left[gen_index(g)], v)
    }

    pub fn right(&self, g: Gen, v: &SparseVec) -> SparseVec {
        self.act(&self.space.right[gen_index(g)], v)
    }

    /// `w · v`.
    pub fn left_word(&self, w: &Word, v: &SparseVec) -> SparseVec {
        w.letters()
            .iter()
            .rev()
            .fold(v.clone(), |acc, &g| self.left(g, &acc))
    }

    /// `v · w`.
    pub fn right_word(&self, v: &SparseVec, w: &Word) -> SparseVec {
        w.letters()
            .iter()
            .fold(v.clone(), |acc, &g| self.right(g, &acc))
    }

    pub fn span<'v>(&self, vs: impl IntoIterator<Item = &'v SparseVec>) -> Subspace {
        let mut s = Subspace::new(self.field());
        s.extend(vs);
        s
    }

    pub fn span_words<'w>(&self, ws: impl IntoIterator<Item = &'w Word>) -> Result<Subspace> {
        let vs = ws
            .into_iter()
            .map(|w| self.word(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.span(&vs))
    }

    pub fn zero(&self) -> Subspace {
        Subspace::new(self.field())
    }

    pub fn full(&self) -> Subspace {
        let vs: Vec<SparseVec> = (0..self.space.dim())
            .map(|i| SparseVec::from([(i, 1)]))
            .collect();
        self.span(&vs)
    }

    /// Closure of `start` under left multiplication by the generators of `b_left`
    /// and right multiplication by those of `b_right` (sub-towers of `b_n`).
    pub fn close(&self, mut start: Subspace, left: usize, right: usize) -> Subspace {
        let gens = generators(self.space.n);
        let mut ops: Vec<Op<'_>> = Vec::new();
        for &g in gens.iter().take(left) {
            ops.push(Box::new(move |v| self.left(g, v)));
        }
        for &g in gens.iter().take(right) {
            ops.push(Box::new(move |v| self.right(g, v)));
        }
        start.close_under(&ops);
        start
    }

    pub fn left_ideal(&self, start: Subspace) -> Subspace {
        let n = self.space.n;
        self.close(start, n, 0)
    }

    pub fn ideal(&self, start: Subspace) -> Subspace {
        let n = self.space.n;
        self.close(start, n, n)
    }

    pub fn ideal_of(&self, w: &Word) -> Result<Subspace> {
        Ok(self.ideal(self.span_words([w])?))
    }

    /// `b_k` inside `b_n`.
    pub fn sub_algebra(&self, k: usize) -> Subspace {
        let one = self.span([&SparseVec::from([(
            self.space.index[&BlobDiagram::identity(self.space.n)],
            1,
        )])]);
        self.close(one, k, 0)
    }

    pub fn map(&self, s: &Subspace, f: impl Fn(&SparseVec) -> SparseVec) -> Subspace {
        let images: Vec<SparseVec> = s.basis_vectors().map(f).collect();
        self.span(&images)
    }

    /// `ℐ_m`; zero for negative `m`.
    pub fn ideal_m(&self, m: i64) -> Result<Subspace> {
        if m < 0 {
            return Ok(self.zero());
        }
        self.ideal_of(&e_word(m as usize, self.space.n)?)
    }

    /// `ℐ_m^+` for `m > 0`.
    pub fn ideal_plus(&self, m: i64) -> Result<Subspace> {
        self.ideal_of(&eplus_word(m as usize, self.space.n)?)
    }

    fn bound(&self, rank: usize) -> f64 {
        rank as f64 * self.space.step_degree().max(1) as f64 / self.field().modulus() as f64
    }
}

/// Several specializations of one `b_n`; a claim holds only if it holds at every point.
pub struct Tower {
    space: CoordSpace,
    points: Vec<Specialization>,
    seed: u64,
}

impl Tower {
    pub fn new(n: usize, prime: u64, seed: u64) -> Result<Self> {
        Ok(Self {
            space: CoordSpace::new(n)?,
            points: Specialization::points(prime, seed, 3)?,
            seed,
        })
    }

    pub fn n(&self) -> usize {
        self.space.n
    }

    pub fn points(&self) -> &[Specialization] {
        &self.points
    }

    pub fn space(&self) -> &CoordSpace {
        &self.space
    }

    fn describe(&self) -> String {
        let pts: Vec<String> = self
            .points
            .iter()
            .map(|p| format!("(q={}, g={}, de={})", p.q, p.gamma, p.delta))
            .collect();
        format!(
            "prime {} seed {} points {}",
            self.points[0].field.modulus(),
            self.seed,
            pts.join(" ")
        )
    }

    /// Evaluates `f` at every point; passes iff all points pass. The reported sides come from the first point.
    fn decide(
        &self,
        r: &mut Report,
        instance: impl Into<String>,
        f: impl Fn(&Algebra<'_>) -> Result<(String, String, bool, usize)>,
    ) -> Result<()> {
        let mut first = None;
        let mut pass = true;
        let mut rank = 0;
        for &p in &self.points {
            let (l, rr, ok, rk) = f(&self.space.at(p))?;
            pass &= ok;
            rank = rank.max(rk);
            first.get_or_insert((l, rr));
        }
        let (l, rr) = first.unwrap();
        let bound = self.space.at(self.points[0]).bound(rank);
        r.push_bounded(instance, l, rr, pass, bound);
        Ok(())
    }

    pub fn new_report(&self, suite: &str) -> Report {
        let mut r = Report::new(suite, self.n());
        r.note(self.describe());
        r
    }

    /// The ideal claims: products of commuting `U`s, the chain `ℐ_m ⊂ ℐ_{m+2}`,
    /// `ℐ_m^+ ⊂ ℐ_m`, `γℐ_m ⊂ ℐ_{m+2}^+`, and the ranks of `ℐ_m`, `ℐ_m^+`.
    pub fn check_ideal_props(&self) -> Result<Report> {
        let n = self.n();
        let mut r = self.new_report("ideals");
        for set in commuting_subsets(n) {
            let w = Word::new(n, set.iter().map(|&i| Gen::U(i as u32)).collect())?;
            let m = n as i64 - 2 * set.len() as i64;
            self.decide(&mut r, format!("b({w})b = I_{m}"), |a| {
                let lhs = a.ideal_of(&w)?;
                let rhs = a.ideal_m(m)?;
                Ok((
                    format!("rank {}", lhs.rank()),
                    format!("rank {}", rhs.rank()),
                    lhs.same_span(&rhs),
                    rhs.rank(),
                ))
            })?;
        }
        for m in weights(n).filter(|&m| m >= 0) {
            if m + 2 <= n as i64 {
                self.decide(&mut r, format!("I_{m} in I_{}", m + 2), |a| {
                    let (lo, hi) = (a.ideal_m(m)?, a.ideal_m(m + 2)?);
                    Ok((
                        format!("rank {}", lo.rank()),
                        format!("rank {}", hi.rank()),
                        hi.contains_all(&lo),
                        hi.rank(),
                    ))
                })?;
                self.decide(&mut r, format!("g I_{m} in I_{}+", m + 2), |a| {
                    let lo = a.ideal_m(m)?;
                    let g = a.point.gamma;
                    let scaled: Vec<SparseVec> = lo
                        .basis_vectors()
                        .map(|v| crate::linalg::scale(&a.field(), v, g))
                        .collect();
                    let hi = a.ideal_plus(m + 2)?;
                    let ok = scaled.iter().all(|v| hi.contains(v));
                    Ok((
                        format!("rank {}", lo.rank()),
                        format!("rank {}", hi.rank()),
                        ok,
                        hi.rank(),
                    ))
                })?;
            }
            if m > 0 {
                self.decide(&mut r, format!("I_{m}+ in I_{m}"), |a| {
                    let (p, full) = (a.ideal_plus(m)?, a.ideal_m(m)?);
                    Ok((
                        format!("rank {}", p.rank()),
                        format!("rank {}", full.rank()),
                        full.contains_all(&p),
                        full.rank(),
                    ))
                })?;
            }
            let expect: u128 = weights(n)
                .filter(|x| x.abs() <= m)
                .map(|x| walk_count(n, x).pow(2))
                .sum();
            self.decide(&mut r, format!("rank I_{m}"), |a| {
                let rk = a.ideal_m(m)?.rank();
                Ok((rk.to_string(), expect.to_string(), rk as u128 == expect, rk))
            })?;
            if m > 0 {
                let expect_plus = expect - walk_count(n, -m).pow(2);
                self.decide(&mut r, format!("rank I_{m}+"), |a| {
                    let rk = a.ideal_plus(m)?.rank();
                    Ok((
                        rk.to_string(),
                        expect_plus.to_string(),
                        rk as u128 == expect_plus,
                        rk,
                    ))
                })?;
            }
        }
        let sym = symbolic_gamma_claims(&self.space)?;
        r.extend(sym);
        Ok(r)
    }

    /// The tower identities relating `b_n` to `b_{n-1}` and `b_{n-2}`, and the
    /// `Er`-conjugation identities.
    pub fn check_tower(&self) -> Result<Report> {
        let n = self.n();
        let mut r = self.new_report("tower");
        if n >= 2 {
            let u = Word::u(n, n as u32 - 1)?;
            self.decide(&mut r, "b_n = b_{n-1} + b_{n-1} U_{n-1} b_{n-1}", |a| {
                let small = a.sub_algebra(n - 1);
                let middle = a.close(a.span_words([&u])?, n - 1, n - 1);
                let total = small.sum(&middle);
                let full = binomial(2 * n, n);
                Ok((
                    format!("rank {}", total.rank()),
                    full.to_string(),
                    total.rank() as u128 == full,
                    total.rank(),
                ))
            })?;
            if n >= 3 {
                for (label, k) in [
                    ("lem0: U b_{n-1} U = U b_{n-2}", n - 1),
                    ("bnK: U b_n U = U b_{n-2}", n),
                ] {
                    self.decide(&mut r, label, |a| {
                        let lhs =
                            a.map(&a.sub_algebra(k), |v| a.right_word(&a.left_word(&u, v), &u));
                        let rhs = a.map(&a.sub_algebra(n - 2), |v| a.left_word(&u, v));
                        Ok((
                            format!("rank {}", lhs.rank()),
                            format!("rank {}", rhs.rank()),
                            lhs.same_span(&rhs),
                            rhs.rank(),
                        ))
                    })?;
                }
            }
        }
        r.extend(check_b2k()?);
        for m in weights(n).filter(|&m| m >= 0) {
            let er = er_word(m as usize, n)?;
            let label = format!("bss1: Er_{m} b_n Er_{m} = Er_{m} b_{m}");
            self.decide(&mut r, label, |a| {
                let lhs = a.map(&a.full(), |v| a.right_word(&a.left_word(&er, v), &er));
                let rhs = a.map(&a.sub_algebra(m as usize), |v| a.left_word(&er, v));
                Ok((
                    format!("rank {}", lhs.rank()),
                    format!("rank {}", rhs.rank()),
                    lhs.same_span(&rhs),
                    rhs.rank(),
                ))
            })?;
        }
        r.extend(self.quotient_basis()?);
        Ok(r)
    }

    /// `b_n^{n-2}` has coset basis `{1, e}`, and `Er_{n-2r} b_n^{n-2r-2} Er_{n-2r}` has basis `{1, e} Er_{n-2r}`.
    pub fn quotient_basis(&self) -> Result<Report> {
        let n = self.n();
        let mut r = Report::new("quotients", n);
        if n < 2 {
            return Ok(r);
        }
        let one = Word::identity(n);
        let e = Word::e(n);
        self.decide(
            &mut r,
            format!("dim b_{n}^{} = 2, basis {{1, e}}", n - 2),
            |a| {
                let j = a.ideal_m(n as i64 - 2)?;
                let reps = j.sum(&a.span_words([&one, &e])?);
                let dim = a.full().rank() - j.rank();
                let ok = dim == 2 && reps.rank() == a.full().rank();
                Ok((dim.to_string(), "2".into(), ok, a.full().rank()))
            },
        )?;
        for rr in 1.. {
            if n <= 2 * rr {
                break;
            }
            let k = n - 2 * rr;
            let er = er_word(k, n)?;
            let quotient = k as i64 - 2;
            self.decide(
                &mut r,
                format!("Er_{k} b_{n}^{quotient} Er_{k} has basis {{1, e}} Er_{k}"),
                |a| {
                    let j = a.ideal_m(quotient)?;
                    let lhs = j.sum(&a.map(&a.full(), |v| a.right_word(&a.left_word(&er, v), &er)));
                    let reps = j.sum(&a.span_words([&er, &e.concat(&er)?])?);
                    let dim = lhs.rank() - j.rank();
                    let ok = dim == 2 && lhs.same_span(&reps);
                    Ok((dim.to_string(), "2".into(), ok, lhs.rank()))
                },
            )?;
        }
        Ok(r)
    }

    /// Walk words of weight `m` span a left ideal modulo the stated quotient; checked
    /// for every generator and walk, together with the dimension of the module.
    pub fn check_modules(&self) -> Result<Report> {
        let n = self.n();
        let mut r = self.new_report("modules");
        for m in weights(n) {
            let mut failures = Vec::new();
            let mut dims = Vec::new();
            for &p in &self.points {
                let a = self.space.at(p);
                match StandardModule::build(&a, m) {
                    Ok(sm) => {
                        dims.push(sm.dim());
                        for (label, ok) in sm.check_relations() {
                            if !ok {
                                failures.push(label);
                            }
                        }
                    }
                    Err(e) => failures.push(e.to_string()),
                }
            }
            let expect = walk_count(n, m) as usize;
            let ok = failures.is_empty() && dims.iter().all(|&d| d == expect);
            let bound = self.space.at(self.points[0]).bound(self.space.dim());
            let lhs = if failures.is_empty() {
                format!("dim {:?}", dims)
            } else {
                failures.join("; ")
            };
            r.push_bounded(
                format!("module m={m}: closure, dimension, relations"),
                lhs,
                format!("dim {expect}"),
                ok,
                bound,
            );
        }
        Ok(r)
    }

    /// The filtration statement for the squared bases: each `S²_{(n,m)}` spans, modulo the
    /// ideal generated by the lower squared bases, the two-sided ideal it generates.
    pub fn check_filtration(&self) -> Result<Report> {
        let n = self.n();
        let mut r = self.new_report("filtration");
        let sets: Vec<(i64, Vec<Word>)> = weights(n)
            .map(|m| Ok((m, squared_basis(n, m)?.words().cloned().collect())))
            .collect::<Result<_>>()?;
        for (m, words) in &sets {
            let m = *m;
            let lower: Vec<&Word> = sets
                .iter()
                .filter(|(x, _)| x.abs() < m.abs() || (m < 0 && *x == -m))
                .flat_map(|(_, ws)| ws.iter())
                .collect();
            self.decide(
                &mut r,
                format!("S^2_(n,{m}) spans its ideal mod lower"),
                |a| {
                    let j = a.ideal(a.span_words(lower.iter().copied())?);
                    let own = a.span_words(words)?;
                    let total = j.sum(&own);
                    let independent = total.rank() - j.rank() == words.len();
                    let gens = generators(n);
                    let closed = own.basis_vectors().all(|v| {
                        gens.iter().all(|&g| {
                            total.contains(&a.left(g, v)) && total.contains(&a.right(g, v))
                        })
                    });
                    Ok((
                        format!("rank {} over {}", total.rank(), j.rank()),
                        format!("{} words", words.len()),
                        independent && closed,
                        total.rank(),
                    ))
                },
            )?;
        }
        Ok(r)
    }
}

fn walk_count(n: usize, m: i64) -> u128 {
    binomial(n, ((n as i64 + m) / 2) as usize)
}

/// Subsets of `{1, …, n-1}` with no two consecutive elements.
pub fn commuting_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for i in 1..n {
        let more: Vec<Vec<usize>> = out
            .iter()
            .filter(|s| s.last().is_none_or(|&l| l + 1 < i))
            .map(|s| [s.as_slice(), &[i]].concat())
            .collect();
        out.extend(more);
    }
    out
}

/// Left `b_n`-module spanned by the walk words of weight `m` acting on the weight word,
/// realized in diagram coordinates modulo the appropriate quotient.
#[derive(Clone, Debug, Serialize)]
pub struct StandardModule {
    pub n: usize,
    pub m: i64,
    pub basis: Vec<Word>,
    pub point: Specialization,
    /// `matrices[g][i][j]`: coefficient of basis word `i` in `g · basis[j]`, generators in the order `e, U_1, …`.
    pub matrices: Vec<Vec<Vec<u64>>>,
}

type Matrix = Vec<Vec<u64>>;

impl StandardModule {
    /// Quotient by which the walk words of weight `m` span a left ideal.
    pub fn quotient(a: &Algebra<'_>, m: i64) -> Result<Subspace> {
        let n = a.space.n;
        Ok(match m {
            0 | 1 => a.zero(),
            -1 => a.left_ideal(a.span_words(&word_set(n, 1)?)?),
            m if m >= 2 => a.ideal_m(m - 2)?,
            m => a
                .left_ideal(a.span_words(&word_set(n, -m)?)?)
                .sum(&a.ideal_m(-m - 2)?),
        })
    }

    pub fn build(a: &Algebra<'_>, m: i64) -> Result<Self> {
        let n = a.space.n;
        let basis = word_set(n, m)?;
        let mut echelon = Self::quotient(a, m)?;
        let vecs = basis
            .iter()
            .map(|w| a.word(w))
            .collect::<Result<Vec<_>>>()?;
        for (j, v) in vecs.iter().enumerate() {
            if !echelon.insert_tagged(v, SparseVec::from([(j, 1)])) {
                return Err(Error::NotInSpan);
            }
        }
        let k = basis.len();
        let mut matrices = Vec::new();
        for g in generators(n) {
            let mut mat = vec![vec![0u64; k]; k];
            for (j, v) in vecs.iter().enumerate() {
                let coords = echelon.express(&a.left(g, v)).ok_or(Error::NotInSpan)?;
                for (i, c) in coords {
                    mat[i][j] = c;
                }
            }
            matrices.push(mat);
        }
        Ok(Self {
            n,
            m,
            basis,
            point: a.point,
            matrices,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn mul(&self, x: &Matrix, y: &Matrix) -> Matrix {
        let f = self.point.field;
        let k = self.dim();
        let mut out = vec![vec![0u64; k]; k];
        for i in 0..k {
            for l in 0..k {
                if x[i][l] == 0 {
                    continue;
                }
                for j in 0..k {
                    out[i][j] = f.add(out[i][j], f.mul(x[i][l], y[l][j]));
                }
            }
        }
        out
    }

    fn scaled(&self, x: &Matrix, c: u64) -> Matrix {
        let f = self.point.field;
        x.iter()
            .map(|row| row.iter().map(|&v| f.mul(v, c)).collect())
            .collect()
    }

    /// The defining relations evaluated on the action matrices.
    pub fn check_relations(&self) -> Vec<(String, bool)> {
        let mats = &self.matrices;
        let n = self.n;
        let p = self.point;
        let mut out = Vec::new();
        let prod = |xs: &[usize]| {
            xs[1..]
                .iter()
                .fold(mats[xs[0]].clone(), |acc, &i| self.mul(&acc, &mats[i]))
        };
        for i in 1..n {
            out.push((
                format!("TL001 i={i}"),
                prod(&[i, i]) == self.scaled(&mats[i], p.loop_value()),
            ));
            if i + 1 < n {
                out.push((format!("TL002 i={i},+1"), prod(&[i, i + 1, i]) == mats[i]));
                out.push((
                    format!("TL002 i={},-1", i + 1),
                    prod(&[i + 1, i, i + 1]) == mats[i + 1],
                ));
            }
            for j in i + 2..n {
                out.push((format!("TL003 i={i},j={j}"), prod(&[i, j]) == prod(&[j, i])));
            }
            if i >= 2 {
                out.push((format!("TL006 i={i}"), prod(&[i, 0]) == prod(&[0, i])));
            }
        }
        if n >= 2 {
            out.push((
                "TL004".into(),
                prod(&[1, 0, 1]) == self.scaled(&mats[1], p.gamma),
            ));
        }
        out.push((
            "TL005".into(),
            prod(&[0, 0]) == self.scaled(&mats[0], p.delta),
        ));
        out
    }
}

fn divides(a: &LoopTally, b: &LoopTally) -> bool {
    a.loops <= b.loops && a.blob_loops <= b.blob_loops && a.excess_blobs <= b.excess_blobs
}

/// Minimal scalars (under divisibility) with which each diagram occurs in a two-sided
/// ideal over the unspecialized ring. Every product is a monomial in `[2], γ, δe`
/// times a diagram, so an ideal is described by these antichains.
pub fn symbolic_ideal(space: &CoordSpace, seed: &Word) -> Result<HashMap<usize, Vec<LoopTally>>> {
    let (d, t) = phi_tally(&seed.with_n(space.n)?)?;
    let mut minimal: HashMap<usize, Vec<LoopTally>> = HashMap::new();
    let mut queue = vec![(space.index[&d], t)];
    minimal.insert(space.index[&d], vec![t]);
    while let Some((j, t)) = queue.pop() {
        if !minimal[&j].contains(&t) {
            continue;
        }
        for table in space.left.iter().chain(&space.right) {
            let (k, s) = table[j];
            let nt = t.combine(s);
            let entry = minimal.entry(k).or_default();
            if entry.iter().any(|x| divides(x, &nt)) {
                continue;
            }
            entry.retain(|x| !divides(&nt, x));
            entry.push(nt);
            queue.push((k, nt));
        }
    }
    Ok(minimal)
}

/// `γℐ_m ⊂ ℐ_{m+2}^+` over the unspecialized ring.
fn symbolic_gamma_claims(space: &CoordSpace) -> Result<Report> {
    let n = space.n;
    let mut r = Report::new("ideals/symbolic", n);
    let gamma = LoopTally {
        blob_loops: 1,
        ..Default::default()
    };
    for m in weights(n).filter(|&m| m >= 0 && m + 2 <= n as i64) {
        let lo = symbolic_ideal(space, &e_word(m as usize, n)?)?;
        let hi = symbolic_ideal(space, &eplus_word(m as usize + 2, n)?)?;
        let missing = lo
            .iter()
            .filter(|(k, ts)| {
                ts.iter().any(|t| {
                    let need = t.combine(gamma);
                    !hi.get(k)
                        .is_some_and(|hs| hs.iter().any(|h| divides(h, &need)))
                })
            })
            .count();
        r.push(
            format!("g I_{m} in I_{}+ (exact)", m + 2),
            format!("{missing} missing"),
            format!("{} diagrams", lo.len()),
            missing == 0,
        );
    }
    Ok(r)
}

/// `U_1 b_2 U_1 = ([2]K + γK) U_1`: every product lands on `U_1`, and the
/// minimal scalars are exactly `[2]` and `γ`.
pub fn check_b2k() -> Result<Report> {
    let mut r = Report::new("tower/b2K", 2);
    let space = CoordSpace::new(2)?;
    let u = Word::u(2, 1)?;
    let ideal = symbolic_conjugates(&space, &u)?;
    let target = space.index[&BlobDiagram::gen_u(2, 1)?];
    let only_u = ideal.keys().all(|&k| k == target);
    let mut scalars: Vec<String> = ideal
        .get(&target)
        .into_iter()
        .flatten()
        .map(|t| t.to_ring().to_string())
        .collect();
    scalars.sort();
    r.push(
        "b2K: U1 b_2 U1 = ([2]K + gK) U1",
        scalars.join(", "),
        "g, q^-1 + q",
        only_u && scalars == ["g", "q^-1 + q"],
    );
    Ok(r)
}

/// Minimal scalars of `{ u x u : x ∈ b_n }` per diagram.
fn symbolic_conjugates(space: &CoordSpace, u: &Word) -> Result<HashMap<usize, Vec<LoopTally>>> {
    let (ud, tu) = phi_tally(u)?;
    let mut out: HashMap<usize, Vec<LoopTally>> = HashMap::new();
    for d in &space.diagrams {
        let (x, t1) = ud.compose_tally(d)?;
        let (x, t2) = x.compose_tally(&ud)?;
        let t = t1.combine(t2).combine(tu).combine(tu);
        let entry = out.entry(space.index[&x]).or_default();
        if !entry.iter().any(|e| divides(e, &t)) {
            entry.retain(|e| !divides(&t, e));
            entry.push(t);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::DEFAULT_PRIME;

    fn tower(n: usize) -> Tower {
        Tower::new(n, DEFAULT_PRIME, 7).unwrap()
    }

    #[test]
    fn points_are_seeded_and_admissible() {
        let a = Specialization::points(DEFAULT_PRIME, 1, 3).unwrap();
        let b = Specialization::points(DEFAULT_PRIME, 1, 3).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, Specialization::points(DEFAULT_PRIME, 2, 3).unwrap());
        assert!(a
            .iter()
            .all(|p| p.q != 0 && p.loop_value() != 0 && p.gamma != 0 && p.delta != 0));
        assert!(Specialization::points(1_000_000, 1, 3).is_err());
    }

    #[test]
    fn ideal_ranks() {
        let t = tower(2);
        let a = t.space().at(t.points()[0]);
        assert_eq!(a.ideal_m(0).unwrap().rank(), 4);
        assert_eq!(a.ideal_m(2).unwrap().rank(), 6);
        assert_eq!(a.ideal_plus(2).unwrap().rank(), 5);
        let t = tower(3);
        let a = t.space().at(t.points()[0]);
        assert_eq!(a.ideal_of(&Word::identity(3)).unwrap().rank(), 20);
    }

    #[test]
    fn commuting_sets() {
        assert_eq!(
            commuting_subsets(4),
            vec![vec![], vec![1], vec![2], vec![3], vec![1, 3]]
        );
    }

    #[test]
    fn standard_module_dims() {
        let t = tower(3);
        let a = t.space().at(t.points()[0]);
        let sm = StandardModule::build(&a, 1).unwrap();
        assert_eq!(sm.dim(), 3);
        assert!(sm.check_relations().iter().all(|(_, ok)| *ok));
        for n in 1..=5 {
            let t = tower(n);
            let r = t.check_modules().unwrap();
            assert!(r.passed(), "{}", r.summary());
        }
    }

    #[test]
    fn suites_small() {
        for n in 2..=4 {
            let t = tower(n);
            for r in [
                t.check_ideal_props().unwrap(),
                t.check_tower().unwrap(),
                t.check_filtration().unwrap(),
            ] {
                assert!(r.passed(), "{}", r.summary());
            }
        }
    }

    #[test]
    fn b2k_symbolic() {
        let r = check_b2k().unwrap();
        assert!(r.passed(), "{}", r.summary());
    }
}
