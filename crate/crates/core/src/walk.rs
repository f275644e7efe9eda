//! Walks on the Pascal triangle and the words they name.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{phi_equal, phi_tally};
use crate::report::Report;
use crate::word::{desc_run, e_word, step2_run, weight_tail, Word};

/// A walk from level 0, given by its weights `σ_0 = 0, σ_1, …, σ_n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Walk {
    sigma: Vec<i64>,
}

impl Walk {
    pub fn new(sigma: Vec<i64>) -> Result<Self> {
        if sigma.first() != Some(&0) {
            return Err(Error::InvalidWalk("a walk starts at weight 0".into()));
        }
        if let Some(w) = sigma.windows(2).find(|w| (w[1] - w[0]).abs() != 1) {
            return Err(Error::InvalidWalk(format!(
                "step {} -> {} is not +-1",
                w[0], w[1]
            )));
        }
        Ok(Self { sigma })
    }

    pub fn sigma(&self) -> &[i64] {
        &self.sigma
    }

    /// Number of edges.
    pub fn level(&self) -> usize {
        self.sigma.len() - 1
    }

    pub fn weight(&self) -> i64 {
        *self.sigma.last().unwrap()
    }

    /// Edges as `(level, from, to)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, i64, i64)> + '_ {
        self.sigma
            .windows(2)
            .enumerate()
            .map(|(l, w)| (l, w[0], w[1]))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "sigma": self.sigma })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: Walk =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Walk::new(raw.sigma)
    }

    fn with_segment(&self, start: usize, seg: &[i64]) -> Walk {
        let mut sigma = self.sigma.clone();
        sigma[start..start + seg.len()].copy_from_slice(seg);
        Walk { sigma }
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sigma.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Walk {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let sigma = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad weight {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Walk::new(sigma)
    }
}

/// All walks of length `n`, optionally ending at weight `m`, in lexicographic order of `σ`.
/// A weight of the wrong parity or out of range gives an empty list.
pub fn enumerate_walks(n: usize, m: Option<i64>) -> Vec<Walk> {
    fn go(n: usize, m: Option<i64>, cur: &mut Vec<i64>, out: &mut Vec<Walk>) {
        let here = *cur.last().unwrap();
        let left = (n + 1 - cur.len()) as i64;
        if let Some(m) = m {
            if (m - here).abs() > left {
                return;
            }
        }
        if left == 0 {
            out.push(Walk { sigma: cur.clone() });
            return;
        }
        for step in [-1, 1] {
            cur.push(here + step);
            go(n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if let Some(m) = m {
        if m.unsigned_abs() as usize > n || (n as i64 - m) % 2 != 0 {
            return out;
        }
    }
    go(n, m, &mut vec![0], &mut out);
    out
}

/// The word attached to the edge `((level, a), (level + 1, b))`, living in `b_{level+1}`.
pub fn edge_word(level: usize, a: i64, b: i64, variant: bool) -> Result<Word> {
    let n = level + 1;
    let l = level as i64;
    if (a - b).abs() != 1 {
        return Err(Error::InvalidWalk(format!(
            "({level},{a}) -> ({n},{b}) is not an edge"
        )));
    }
    if a == 0 {
        return if b == 1 {
            Word::product(
                n,
                [&Word::e(n), &step2_run(n, l, 2)?, &step2_run(n, l - 1, 1)?],
            )
        } else {
            Ok(Word::identity(n))
        };
    }
    if b.abs() > a.abs() {
        return Ok(Word::identity(n));
    }
    if variant {
        desc_run(n, l, l - a.abs() + 1)
    } else {
        desc_run(n, l, 1)
    }
}

/// `w(p)`: the left-to-right product of the edge words, in `b_n`.
pub fn word_of_path(p: &Walk, variant: bool) -> Result<Word> {
    let n = p.level();
    let mut out = Word::identity(n);
    for (l, a, b) in p.edges() {
        out = out.concat(&edge_word(l, a, b, variant)?.with_n(n)?)?;
    }
    Ok(out)
}

/// `S_{(n,m)}`, in walk order.
pub fn word_set(n: usize, m: i64) -> Result<Vec<Word>> {
    enumerate_walks(n, Some(m))
        .iter()
        .map(|p| word_of_path(p, false))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub walk: Walk,
    pub prefix: Word,
    pub tail: Word,
}

/// The prefix `w'` with `w(p) = w' T`, built edge by edge.
fn recursive_prefix(p: &Walk) -> Result<Word> {
    let n = p.level();
    let mut prefix = Word::identity(n);
    for (l, a, b) in p.edges() {
        if b.abs() > a.abs() || a == 0 {
            continue;
        }
        let li = l as i64;
        let piece = if a == 1 {
            let even: Word = Word::new(
                n,
                (2..l)
                    .step_by(2)
                    .map(|i| crate::word::Gen::U(i as u32))
                    .collect(),
            )?;
            Word::product(n, [&e_word(0, l - 1)?.with_n(n)?, &Word::e(n), &even])?
        } else {
            desc_run(n, li, li - a.abs() + 2)?
        };
        prefix = prefix.concat(&piece)?;
    }
    Ok(prefix)
}

/// Splits `w(p)` as `prefix · T` with `T = E_{|m|}` for `m <= 0` and `E_{m+}` for `m > 0`.
pub fn factor_walk(p: &Walk) -> Result<Factorization> {
    let n = p.level();
    let tail = weight_tail(p.weight(), n)?;
    let w = word_of_path(p, false)?;
    let target = phi_tally(&w)?;
    let candidates = w
        .strip_suffix(&tail)
        .into_iter()
        .chain(std::iter::once(recursive_prefix(p)?));
    for prefix in candidates {
        let (d, t) = phi_tally(&prefix.concat(&tail)?)?;
        if t.is_unit() && (d, t) == target {
            return Ok(Factorization {
                walk: p.clone(),
                prefix,
                tail,
            });
        }
    }
    Err(Error::FactorizationFailed {
        word: w.to_string(),
        tail: tail.to_string(),
    })
}

pub fn factor(n: usize, m: i64) -> Result<Vec<Factorization>> {
    enumerate_walks(n, Some(m))
        .iter()
        .map(factor_walk)
        .collect()
}

/// `s(n,m)`: the prefixes of the factorizations, in walk order.
pub fn prefix_set(n: usize, m: i64) -> Result<Vec<Word>> {
    Ok(factor(n, m)?.into_iter().map(|f| f.prefix).collect())
}

fn bump(l: i64) -> i64 {
    l + l.signum()
}

fn push_diamond(r: &mut Report, label: String, i: usize, p: &Walk, q: &Walk) -> Result<()> {
    let n = p.level();
    let lhs = Word::u(n, i as u32)?.concat(&word_of_path(p, false)?)?;
    let rhs = word_of_path(q, false)?;
    r.push(
        label,
        format!("U{i} w({p})"),
        format!("w({q})"),
        phi_equal(&lhs, &rhs)?,
    );
    Ok(())
}

/// The three local moves relating `U_i w(p)` to the word of a neighbouring walk,
/// checked at every position of every walk of length `n`.
pub fn check_diamonds(n: usize) -> Result<Report> {
    let mut r = Report::new("walks/diamond", n);
    for p in enumerate_walks(n, None) {
        let s = p.sigma();
        for i in 1..n {
            let l = s[i - 1];
            if l.abs() > 1 && s[i + 1] == l && s[i].abs() < l.abs() {
                let q = p.with_segment(i, &[bump(l)]);
                push_diamond(&mut r, format!("diamond1 p={p} i={i}"), i, &p, &q)?;
            }
            // 0 (-1 -2)^l -1 [0] 1
            if s[i] == 0 && s[i + 1] == 1 && s[i - 1] == -1 {
                let mut start = i as i64 - 2;
                while start >= 0 {
                    let st = start as usize;
                    if s[st] == 0 {
                        let len = i + 2 - st;
                        let seg: Vec<i64> = (0..len)
                            .map(|k| match k {
                                0 => 0,
                                k if k == len - 1 => 1,
                                k if k == len - 2 => 2,
                                k if k % 2 == 1 => 1,
                                _ => 2,
                            })
                            .collect();
                        let q = p.with_segment(st, &seg);
                        let lcount = (i - st - 2) / 2;
                        push_diamond(
                            &mut r,
                            format!("diamond0 p={p} i={i} l={lcount}"),
                            i,
                            &p,
                            &q,
                        )?;
                        break;
                    }
                    if s[st] != -2 || s[st + 1] != -1 || start < 1 {
                        break;
                    }
                    start -= 2;
                }
            }
            // 0 [1] (2 3)^l 2 1
            if s[i - 1] == 0 && s[i] == 1 {
                let mut k = i + 1;
                while k < n && s[k] == 2 {
                    if s[k + 1] == 1 {
                        let len = k + 2 - (i - 1);
                        let seg: Vec<i64> = (0..len)
                            .map(|j| match j {
                                j if j == len - 1 => 1,
                                j if j % 2 == 0 => 0,
                                _ => -1,
                            })
                            .collect();
                        let q = p.with_segment(i - 1, &seg);
                        let lcount = (k - i - 1) / 2;
                        push_diamond(
                            &mut r,
                            format!("diamond012 p={p} i={i} l={lcount}"),
                            i,
                            &p,
                            &q,
                        )?;
                        break;
                    }
                    if k + 2 > n || s[k + 1] != 3 {
                        break;
                    }
                    k += 2;
                }
            }
        }
    }
    Ok(r)
}

/// Walk-level checks: counts, reducedness, the factorizations, and the agreement of the
/// standard and variant edge rules.
pub fn check_walks(n: usize) -> Result<Report> {
    let mut r = Report::new("walks", n);
    r.note("algebra-reduced is decided by the unit-scalar proxy");
    let all = enumerate_walks(n, None);
    r.push_eq("|S_n|".to_string(), all.len(), 1usize << n);
    for m in -(n as i64)..=n as i64 {
        if (n as i64 - m) % 2 != 0 {
            continue;
        }
        let count = enumerate_walks(n, Some(m)).len();
        r.push_eq(
            format!("|S_n,{m}|"),
            count as u128,
            binomial(n, (n as i64 + m) as usize / 2),
        );
    }
    for p in &all {
        let w = word_of_path(p, false)?;
        let v = word_of_path(p, true)?;
        let (d, t) = phi_tally(&w)?;
        r.push(
            format!("reduced p={p}"),
            &w,
            if t.is_unit() {
                "unit scalar"
            } else {
                "non-unit scalar"
            },
            t.is_unit(),
        );
        r.push(
            format!("variant p={p}"),
            &w,
            &v,
            (d, t) == phi_tally(&v)? && v.len() <= w.len(),
        );
        match factor_walk(p) {
            Ok(f) => r.push(
                format!("factor p={p}"),
                &w,
                format!("({}) ({})", f.prefix, f.tail),
                true,
            ),
            Err(e) => r.push(format!("factor p={p}"), &w, e, false),
        }
    }
    Ok(r)
}

/// `|S_{n,m}| = C(n, (n+m)/2)`, zero for an unreachable weight.
pub fn binomial_count(n: usize, m: i64) -> u128 {
    if m.unsigned_abs() as usize > n || (n as i64 - m) % 2 != 0 {
        return 0;
    }
    binomial(n, ((n as i64 + m) / 2) as usize)
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::eplus_word;

    fn walk(s: &str) -> Walk {
        s.parse().unwrap()
    }

    fn w(n: usize, s: &str) -> Word {
        Word::parse(n, s).unwrap()
    }

    #[test]
    fn walk_validation() {
        assert!(Walk::new(vec![1, 0]).is_err());
        assert!(Walk::new(vec![0, 2]).is_err());
        assert!("0,-1,0,x".parse::<Walk>().is_err());
        let p = walk("0,-1,0,1");
        assert_eq!(p.to_string(), "0,-1,0,1");
        assert_eq!(Walk::from_json(&p.to_json()).unwrap(), p);
        assert_eq!(p.to_json().to_string(), r#"{"sigma":[0,-1,0,1]}"#);
    }

    #[test]
    fn enumeration_counts() {
        for n in 0..=12 {
            assert_eq!(enumerate_walks(n, None).len(), 1 << n);
            for m in -(n as i64)..=n as i64 {
                let c = enumerate_walks(n, Some(m)).len() as u128;
                let expect = if (n as i64 - m) % 2 == 0 {
                    binomial(n, (n as i64 + m) as usize / 2)
                } else {
                    0
                };
                assert_eq!(c, expect, "n={n} m={m}");
            }
        }
        assert_eq!(enumerate_walks(3, Some(1)).len(), 3);
        assert!(enumerate_walks(3, Some(2)).is_empty());
        let s = enumerate_walks(2, None);
        assert!(s.windows(2).all(|x| x[0] < x[1]));
    }

    #[test]
    fn edge_rules() {
        assert_eq!(edge_word(2, 0, 1, false).unwrap(), w(3, "e U2 U1"));
        assert_eq!(edge_word(1, -1, 0, false).unwrap(), w(2, "U1"));
        assert!(edge_word(0, 0, -1, false).unwrap().is_empty());
        assert!(edge_word(3, 1, 2, false).unwrap().is_empty());
        assert!(edge_word(3, -1, -2, false).unwrap().is_empty());
        assert_eq!(edge_word(0, 0, 1, false).unwrap(), w(1, "e"));
        assert_eq!(edge_word(3, 2, 1, true).unwrap(), w(4, "U3 U2"));
        assert!(edge_word(3, 2, 2, false).is_err());
    }

    #[test]
    fn path_words() {
        assert_eq!(
            word_of_path(&walk("0,-1,0,1"), false).unwrap(),
            w(3, "U1 e U2 U1")
        );
        assert_eq!(
            word_of_path(&walk("0,1,2,1"), false).unwrap(),
            w(3, "e U2 U1")
        );
        assert!(phi_equal(
            &word_of_path(&walk("0,1,2,1"), false).unwrap(),
            &w(3, "U2 U1 e U2 U1")
        )
        .unwrap());
        for n in (2..=8).step_by(2) {
            let zig: Vec<i64> = (0..=n).map(|k| -((k % 2) as i64)).collect();
            let p = Walk::new(zig.clone()).unwrap();
            assert!(phi_equal(&word_of_path(&p, false).unwrap(), &e_word(0, n).unwrap()).unwrap());
            let mut up = zig;
            up.push(1);
            let p = Walk::new(up).unwrap();
            assert!(phi_equal(
                &word_of_path(&p, false).unwrap(),
                &eplus_word(1, n + 1).unwrap()
            )
            .unwrap());
        }
    }

    #[test]
    fn word_sets() {
        let s = word_set(3, 1).unwrap();
        let listed = [
            w(3, "U1 e U2 U1"),
            w(3, "e U1 e U2 U1"),
            w(3, "U2 U1 e U2 U1"),
        ];
        assert_eq!(s.len(), 3);
        for (a, b) in s.iter().zip(&listed) {
            assert!(phi_equal(a, b).unwrap(), "{a} vs {b}");
        }
        let s = word_set(2, 0).unwrap();
        assert!(phi_equal(&s[0], &w(2, "U1")).unwrap());
        assert!(phi_equal(&s[1], &w(2, "e U1")).unwrap());
        assert_eq!(word_set(4, -4).unwrap(), vec![Word::identity(4)]);
    }

    #[test]
    fn factorizations() {
        let f = factor(3, 1).unwrap();
        let prefixes: Vec<String> = f.iter().map(|x| x.prefix.to_string()).collect();
        assert_eq!(prefixes, ["1", "e", "U2"]);
        let f = factor(4, -4).unwrap();
        assert!(f[0].prefix.is_empty() && f[0].tail.is_empty());
        for x in factor(4, 0).unwrap() {
            assert_eq!(x.tail, w(4, "U1 U3"));
        }
        for n in 0..=7 {
            for m in -(n as i64)..=n as i64 {
                if (n as i64 - m) % 2 == 0 {
                    factor(n, m).unwrap();
                }
            }
        }
    }

    #[test]
    fn walk_suite_small() {
        for n in 1..=6 {
            let r = check_walks(n).unwrap();
            assert!(r.passed(), "{}", r.summary());
        }
    }

    #[test]
    fn diamond_moves_small() {
        for n in 2..=7 {
            let r = check_diamonds(n).unwrap();
            assert!(r.passed(), "{}", r.summary());
        }
        let r = check_diamonds(6).unwrap();
        for kind in ["diamond1", "diamond0", "diamond012"] {
            assert!(
                r.checks
                    .iter()
                    .any(|c| c.instance.starts_with(&format!("{kind} "))),
                "{kind} never exercised"
            );
        }
    }
}
