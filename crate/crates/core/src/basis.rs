//! The squared walk bases `S²_{(n,m)}` and the regular basis of `b_n`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::diagram::enumerate_bn;
use crate::error::Result;
use crate::presentation::phi_tally;
use crate::report::Report;
use crate::walk::{binomial, prefix_set};
use crate::word::{weight_tail, Word};

/// `{ a T b° : a, b ∈ s(n,m) }` stored as a `k × k` grid, rows indexed by `b`, columns by `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquaredBasis {
    pub n: usize,
    pub m: i64,
    pub prefixes: Vec<Word>,
    pub tail: Word,
    pub grid: Vec<Vec<Word>>,
}

impl SquaredBasis {
    pub fn words(&self) -> impl Iterator<Item = &Word> + '_ {
        self.grid.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.prefixes.len() * self.prefixes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefixes.is_empty()
    }

    pub fn to_latex(&self) -> String {
        let k = self.prefixes.len();
        let mut s = format!("\\begin{{array}}{{{}}}\n", "c".repeat(k.max(1)));
        for (r, row) in self.grid.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(Word::to_latex).collect();
            s.push_str(&cells.join(" & "));
            if r + 1 < k {
                s.push_str(" \\\\");
            }
            s.push('\n');
        }
        s.push_str("\\end{array}");
        s
    }
}

pub fn squared_basis(n: usize, m: i64) -> Result<SquaredBasis> {
    let prefixes = prefix_set(n, m)?;
    let tail = weight_tail(m, n)?;
    let grid = prefixes
        .iter()
        .map(|b| {
            prefixes
                .iter()
                .map(|a| Word::product(n, [a, &tail, &b.opposite()]))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SquaredBasis {
        n,
        m,
        prefixes,
        tail,
        grid,
    })
}

/// Weights `m` with `|m| <= n` and `m ≡ n (mod 2)`, in increasing order.
pub fn weights(n: usize) -> impl Iterator<Item = i64> {
    let n = n as i64;
    (-n..=n).step_by(2)
}

pub fn regular_basis(n: usize) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for m in weights(n) {
        out.extend(squared_basis(n, m)?.words().cloned());
    }
    Ok(out)
}

/// Exact check that the regular basis maps onto the diagram basis with unit scalars.
pub fn verify_basis_exact(n: usize) -> Result<Report> {
    let mut r = Report::new("bases", n);
    let words = regular_basis(n)?;
    let expect = binomial(2 * n, n);
    r.push_eq("|S^2_n| = C(2n,n)", words.len() as u128, expect);
    let mut images = BTreeSet::new();
    let mut non_unit = 0;
    for w in &words {
        let (d, t) = phi_tally(w)?;
        if !t.is_unit() {
            non_unit += 1;
            r.push(format!("unit scalar {w}"), w, t.to_ring(), false);
        }
        images.insert(d);
    }
    r.push_eq("non-unit images", non_unit, 0);
    r.push_eq("distinct images", images.len(), words.len());
    let all: BTreeSet<_> = enumerate_bn(n).into_iter().collect();
    r.push("image equals B_n", images.len(), all.len(), images == all);
    for m in weights(n) {
        let sb = squared_basis(n, m)?;
        let walks = binomial(n, ((n as i64 + m) / 2) as usize);
        r.push_eq(
            format!("|S^2_(n,{m})| = |S_n,{m}|^2"),
            sb.len() as u128,
            walks * walks,
        );
        let mut sym = None;
        for w in sb.words() {
            let (d, _) = phi_tally(w)?;
            if d.flip() == d {
                sym = Some(w.clone());
                break;
            }
        }
        let found = sym.as_ref().map_or("none".to_string(), |w| w.to_string());
        r.push(
            format!("opposite-invariant element in S^2_(n,{m})"),
            found,
            "exists",
            sym.is_some(),
        );
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::phi_equal;

    fn w(n: usize, s: &str) -> Word {
        Word::parse(n, s).unwrap()
    }

    #[test]
    fn regular_basis_n2() {
        let b = regular_basis(2).unwrap();
        assert_eq!(b.len(), 6);
        let expected = ["1", "e", "U1", "e U1", "U1 e", "e U1 e"];
        for e in expected {
            let target = w(2, e);
            assert!(
                b.iter().any(|x| phi_equal(x, &target).unwrap()),
                "{e} missing"
            );
        }
    }

    #[test]
    fn squared_basis_31_matches_display() {
        let sb = squared_basis(3, 1).unwrap();
        let display = [
            ["U1 e U2 U1", "e U1 e U2 U1", "e U2 U1"],
            ["U1 e U2 U1 e", "e U1 e U2 U1 e", "e U2 U1 e"],
            ["U1 e U2", "e U1 e U2", "e U2"],
        ];
        for (row, drow) in sb.grid.iter().zip(display) {
            for (x, d) in row.iter().zip(drow) {
                assert!(phi_equal(x, &w(3, d)).unwrap(), "{x} vs {d}");
            }
        }
        assert!(sb.to_latex().contains("U_{1} e U_{2} U_{1}"));
    }

    #[test]
    fn basis_sizes() {
        for n in 0..=6 {
            let r = verify_basis_exact(n).unwrap();
            assert!(r.passed(), "{}", r.summary());
        }
        assert_eq!(regular_basis(3).unwrap().len(), 20);
        assert_eq!(
            squared_basis(4, -4).unwrap().grid,
            vec![vec![Word::identity(4)]]
        );
    }
}
