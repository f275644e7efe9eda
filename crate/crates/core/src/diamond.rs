//! Right-stepping walks on the diamond grid, the parse `π` of Pascal walks into them,
//! the height order, and the envelope word `W`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::phi_equal;
use crate::report::Report;
use crate::walk::{enumerate_walks, word_of_path, Walk};
use crate::word::{Gen, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    N,
    S,
}

/// A walk from the centre vertical of the side-`n` diamond grid to its rightmost vertex,
/// which sits at height `n` (heights measured from the lowest vertex).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiamondWalk {
    steps: Vec<Step>,
    start_height: i64,
}

#[derive(Serialize, Deserialize)]
struct DiamondJson {
    steps: String,
    start_height: i64,
}

impl DiamondWalk {
    pub fn new(steps: Vec<Step>) -> Self {
        let n = steps.len() as i64;
        let rise: i64 = steps
            .iter()
            .map(|s| if *s == Step::N { 1 } else { -1 })
            .sum();
        Self {
            steps,
            start_height: n - rise,
        }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn n(&self) -> usize {
        self.steps.len()
    }

    pub fn start_height(&self) -> i64 {
        self.start_height
    }

    /// Heights at `x = n, n+1, …, 2n`.
    pub fn heights(&self) -> Vec<i64> {
        let mut h = vec![self.start_height];
        for s in &self.steps {
            let last = *h.last().unwrap();
            h.push(if *s == Step::N { last + 1 } else { last - 1 });
        }
        h
    }

    pub fn lowest(&self) -> i64 {
        *self.heights().iter().min().unwrap()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DiamondJson {
            steps: self.to_string(),
            start_height: self.start_height,
        })
        .unwrap()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: DiamondJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let steps = raw
            .steps
            .chars()
            .map(|c| match c {
                'N' => Ok(Step::N),
                'S' => Ok(Step::S),
                _ => Err(Error::Parse(format!("bad step {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let t = DiamondWalk::new(steps);
        if t.start_height != raw.start_height {
            return Err(Error::InvalidWalk(format!(
                "start height {} does not end at the rightmost vertex (expected {})",
                raw.start_height, t.start_height
            )));
        }
        Ok(t)
    }
}

impl fmt::Display for DiamondWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", if *s == Step::N { 'N' } else { 'S' })?;
        }
        Ok(())
    }
}

/// `π(p)`: a decrease in `|σ|` is `S`, the step `0 → 1` is `S`, any other increase is `N`.
pub fn pi(p: &Walk) -> DiamondWalk {
    let steps = p
        .sigma()
        .windows(2)
        .map(|w| {
            if w[1].abs() < w[0].abs() || (w[0], w[1]) == (0, 1) {
                Step::S
            } else {
                Step::N
            }
        })
        .collect();
    DiamondWalk::new(steps)
}

/// All of `T_n`.
pub fn enumerate_diamond(n: usize) -> Vec<DiamondWalk> {
    (0..1u64 << n)
        .map(|mask| {
            DiamondWalk::new(
                (0..n)
                    .map(|i| {
                        if mask >> (n - 1 - i) & 1 == 1 {
                            Step::S
                        } else {
                            Step::N
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}

/// `t ≤ t'` iff `t` is nowhere above `t'`.
pub fn poset_leq(t: &DiamondWalk, u: &DiamondWalk) -> bool {
    t.n() == u.n() && t.heights().iter().zip(u.heights()).all(|(a, b)| *a <= b)
}

/// Lowest height of `π(p)` for walks ending at weight `m`.
pub fn lowest_height(n: usize, m: i64) -> i64 {
    let n = n as i64;
    match m {
        0 => n,
        m if m > 0 => n - m + 1,
        m => n + m,
    }
}

/// `|m|` recovered from the lowest height of a walk in `π(S_{n,m})`: a drop of the
/// same parity as `n` means `m <= 0`, otherwise `m > 0`.
fn weight_size(n: usize, lowest: i64) -> i64 {
    let drop = n as i64 - lowest;
    if (n as i64 - drop) % 2 == 0 {
        drop
    } else {
        drop + 1
    }
}

/// Lower edge of the envelope for `|m| = k`: a zigzag between heights `n-k` and
/// `n-k-1` up to `x = 2n-k`, then straight up to the endpoint.
fn lower_boundary(n: usize, k: i64) -> Vec<i64> {
    let n = n as i64;
    (0..=n)
        .map(|s| if s <= n - k { n - k - (s % 2) } else { s })
        .collect()
}

/// Cells `(height, column)` strictly between the walk and the lower boundary, on the
/// checkerboard of the grid; column `j` carries `U_j`, with `U_0 = e`.
pub fn envelope_cells(t: &DiamondWalk) -> Vec<(i64, usize)> {
    let n = t.n();
    let top = t.heights();
    let bottom = lower_boundary(n, weight_size(n, t.lowest()));
    let mut cells = Vec::new();
    for j in 0..n {
        let mut h = bottom[j] + 1;
        while h < top[j] {
            cells.push((h, j));
            h += 2;
        }
    }
    cells
}

/// Orders in which the envelope cells may be read off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReadingOrder {
    /// Top row first, each row west to east.
    RowsTopDown,
    /// Bottom row first, each row west to east.
    RowsBottomUp,
    /// West column first, each column top to bottom.
    ColumnsTopDown,
    /// West column first, each column bottom to top.
    ColumnsBottomUp,
}

impl ReadingOrder {
    pub const ALL: [ReadingOrder; 4] = [
        Self::RowsTopDown,
        Self::RowsBottomUp,
        Self::ColumnsTopDown,
        Self::ColumnsBottomUp,
    ];
}

pub fn envelope_word_with(t: &DiamondWalk, order: ReadingOrder) -> Word {
    let mut cells = envelope_cells(t);
    match order {
        ReadingOrder::RowsTopDown => cells.sort_by_key(|&(h, j)| (-h, j)),
        ReadingOrder::RowsBottomUp => cells.sort_by_key(|&(h, j)| (h, j)),
        ReadingOrder::ColumnsTopDown => cells.sort_by_key(|&(h, j)| (j, -h)),
        ReadingOrder::ColumnsBottomUp => cells.sort_by_key(|&(h, j)| (j, h)),
    }
    let letters = cells
        .into_iter()
        .map(|(_, j)| if j == 0 { Gen::E } else { Gen::U(j as u32) })
        .collect();
    Word::new(t.n(), letters).expect("columns lie below n")
}

/// `W(t)`, read top to bottom and west to east.
pub fn envelope_word(t: &DiamondWalk) -> Word {
    envelope_word_with(t, ReadingOrder::RowsTopDown)
}

/// The maximum of `π(S_{n,0})` in the height order.
pub fn top_of_weight_zero(n: usize) -> Option<DiamondWalk> {
    let image: Vec<DiamondWalk> = enumerate_walks(n, Some(0)).iter().map(pi).collect();
    image
        .iter()
        .find(|t| image.iter().all(|u| poset_leq(u, t)))
        .cloned()
}

pub const CAPTION_WORDS: [(usize, &str); 2] = [
    (4, "e U1 e U2 U1 U3"),
    (6, "e U1 e U2 U1 U3 e U2 U4 U1 U3 U5"),
];

/// Tries each reading order against the two known top words and against `W∘π = w`
/// on `n <= n_max`; notes which orders survive.
pub fn calibrate(n_max: usize) -> Result<Report> {
    let mut r = Report::new("diamond/calibration", n_max);
    let mut survivors = Vec::new();
    for order in ReadingOrder::ALL {
        let mut ok = true;
        for (n, caption) in CAPTION_WORDS {
            let top =
                top_of_weight_zero(n).ok_or_else(|| Error::InvalidWalk("no maximum".into()))?;
            ok &= envelope_word_with(&top, order).to_string() == caption;
        }
        for n in 0..=n_max {
            for p in enumerate_walks(n, None) {
                ok &= phi_equal(
                    &envelope_word_with(&pi(&p), order),
                    &word_of_path(&p, false)?,
                )?;
            }
        }
        r.note(format!(
            "{order:?}: {}",
            if ok { "consistent" } else { "rejected" }
        ));
        if ok {
            survivors.push(order);
        }
    }
    r.push(
        "reading order",
        format!("{survivors:?}"),
        format!("{:?}", [ReadingOrder::RowsTopDown]),
        survivors.contains(&ReadingOrder::RowsTopDown),
    );
    Ok(r)
}

/// `π` is a bijection onto `T_n`, and the lowest height of `π(p)` depends only on the weight.
pub fn check_bijection(n: usize) -> Result<Report> {
    let mut r = Report::new("diamond/bijection", n);
    let walks = enumerate_walks(n, None);
    let image: BTreeSet<DiamondWalk> = walks.iter().map(pi).collect();
    r.push_eq("pi injective", image.len(), walks.len());
    let all: BTreeSet<DiamondWalk> = enumerate_diamond(n).into_iter().collect();
    r.push("pi onto T_n", image.len(), all.len(), image == all);
    for m in (-(n as i64)..=n as i64).step_by(2) {
        let expect = lowest_height(n, m);
        let lows: BTreeSet<i64> = enumerate_walks(n, Some(m))
            .iter()
            .map(|p| pi(p).lowest())
            .collect();
        let got: Vec<String> = lows.iter().map(|h| h.to_string()).collect();
        r.push(
            format!("lowest height on S_{n},{m}"),
            got.join(","),
            expect,
            lows == BTreeSet::from([expect]),
        );
    }
    Ok(r)
}

/// `W(π(p)) = w(p)` for every walk, as images under φ; letter-for-letter agreement
/// with the standard and variant words is recorded in the notes.
pub fn check_ww(n: usize) -> Result<Report> {
    let mut r = Report::new("diamond/Ww", n);
    let (mut std_eq, mut var_eq, mut total) = (0, 0, 0);
    for p in enumerate_walks(n, None) {
        let big_w = envelope_word(&pi(&p));
        let w = word_of_path(&p, false)?;
        let v = word_of_path(&p, true)?;
        total += 1;
        std_eq += usize::from(big_w == w);
        var_eq += usize::from(big_w == v);
        r.push(format!("W(pi({p}))"), &big_w, &w, phi_equal(&big_w, &w)?);
    }
    r.note(format!(
        "letter-for-letter: {std_eq}/{total} standard, {var_eq}/{total} variant"
    ));
    Ok(r)
}

pub fn check_diamond(n: usize) -> Result<Report> {
    let mut r = check_bijection(n)?;
    r.suite = "diamond".into();
    r.extend(check_ww(n)?);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walk(s: &str) -> Walk {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(pi(&walk("0,1,0")).to_string(), "SS");
        assert_eq!(pi(&walk("0,-1,-2")).to_string(), "NN");
        assert_eq!(pi(&walk("0,-1,0,1")).to_string(), "NSS");
        let t = pi(&walk("0,-1,0,1"));
        assert_eq!(t.start_height(), 4);
        assert_eq!(
            t.to_json().to_string(),
            r#"{"start_height":4,"steps":"NSS"}"#
        );
        assert_eq!(DiamondWalk::from_json(&t.to_json()).unwrap(), t);
        let bad = serde_json::json!({"steps": "NSS", "start_height": 3});
        assert!(DiamondWalk::from_json(&bad).is_err());
    }

    #[test]
    fn heights_by_weight() {
        assert_eq!(
            pi(&walk("0,1,2,3,2")).lowest() - pi(&walk("0,-1,-2,-3,-2")).lowest(),
            1
        );
        for n in 0..=10 {
            let r = check_bijection(n).unwrap();
            assert!(r.passed(), "{}", r.summary());
        }
        assert_eq!(enumerate_diamond(4).len(), 16);
    }

    #[test]
    fn order_properties() {
        let ts = enumerate_diamond(4);
        assert!(ts.iter().all(|t| poset_leq(t, t)));
        let image: Vec<DiamondWalk> = enumerate_walks(6, Some(0)).iter().map(pi).collect();
        let top = top_of_weight_zero(6).unwrap();
        assert!(image.iter().all(|t| poset_leq(t, &top)));
        let incomparable = image
            .iter()
            .any(|a| image.iter().any(|b| !poset_leq(a, b) && !poset_leq(b, a)));
        assert!(incomparable);
    }

    #[test]
    fn caption_words() {
        for (n, caption) in CAPTION_WORDS {
            let top = top_of_weight_zero(n).unwrap();
            assert_eq!(envelope_word(&top).to_string(), caption);
        }
    }

    #[test]
    fn minimal_walk_is_empty() {
        let t = pi(&walk("0,-1,-2,-3"));
        assert!(envelope_word(&t).is_empty());
    }

    #[test]
    fn envelope_matches_walk_words() {
        for n in 0..=6 {
            let r = check_ww(n).unwrap();
            assert!(r.passed(), "{}", r.summary());
        }
    }

    #[test]
    fn calibration_selects_rows() {
        let r = calibrate(4).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }
}
