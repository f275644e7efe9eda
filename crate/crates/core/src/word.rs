//! Words in the generators `e, U_1, …, U_{n-1}` and the structured words
//! built from them (descending runs, `E_m`, `Er_m`, `E_{m+}`).

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    /// The blob generator, also accepted as `U0`.
    E,
    U(u32),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::E => write!(f, "e"),
            Gen::U(i) => write!(f, "U{i}"),
        }
    }
}

/// A word together with the strand count it is validated against.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    n: usize,
    letters: Vec<Gen>,
}

fn check_gen(g: Gen, n: usize) -> Result<()> {
    match g {
        Gen::U(i) if i == 0 || i as usize >= n => Err(Error::IndexOutOfRange { index: i, n }),
        _ => Ok(()),
    }
}

impl Word {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            letters: Vec::new(),
        }
    }

    pub fn new(n: usize, letters: Vec<Gen>) -> Result<Self> {
        for &g in &letters {
            check_gen(g, n)?;
        }
        Ok(Self { n, letters })
    }

    pub fn gen(n: usize, g: Gen) -> Result<Self> {
        Self::new(n, vec![g])
    }

    pub fn u(n: usize, i: u32) -> Result<Self> {
        Self::gen(n, Gen::U(i))
    }

    pub fn e(n: usize) -> Self {
        Self {
            n,
            letters: vec![Gen::E],
        }
    }

    /// Parses whitespace-separated tokens such as `"e U1 e U2 U1"`; `"1"` is the empty word.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            match tok {
                "1" => {}
                "e" | "U0" => letters.push(Gen::E),
                _ => {
                    let idx = tok
                        .strip_prefix('U')
                        .and_then(|d| d.trim_start_matches('_').parse::<u32>().ok())
                        .ok_or_else(|| Error::Parse(format!("bad generator token {tok:?}")))?;
                    letters.push(if idx == 0 { Gen::E } else { Gen::U(idx) });
                }
            }
        }
        Self::new(n, letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Gen] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.n != other.n {
            return Err(Error::StrandMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { n: self.n, letters })
    }

    /// Concatenation of a sequence of words sharing one strand count.
    pub fn product<'a>(n: usize, parts: impl IntoIterator<Item = &'a Word>) -> Result<Word> {
        parts
            .into_iter()
            .try_fold(Word::identity(n), |acc, w| acc.concat(w))
    }

    /// Image under the anti-automorphism fixing every generator.
    pub fn opposite(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { n: self.n, letters }
    }

    /// Re-validates the letters for another strand count.
    pub fn with_n(&self, n: usize) -> Result<Word> {
        Word::new(n, self.letters.clone())
    }

    pub fn ends_with(&self, tail: &Word) -> bool {
        self.letters.ends_with(&tail.letters)
    }

    pub fn strip_suffix(&self, tail: &Word) -> Option<Word> {
        if !self.ends_with(tail) {
            return None;
        }
        let k = self.letters.len() - tail.letters.len();
        Some(Word {
            n: self.n,
            letters: self.letters[..k].to_vec(),
        })
    }

    pub fn to_latex(&self) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        self.letters
            .iter()
            .map(|g| match g {
                Gen::E => "e".to_string(),
                Gen::U(i) => format!("U_{{{i}}}"),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, g) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn run(n: usize, i: i64, j: i64, step: i64) -> Result<Word> {
    if i < j || (i - j) % step != 0 {
        return Ok(Word::identity(n));
    }
    if j < 1 {
        return Err(Error::IndexOutOfRange { index: 0, n });
    }
    let letters = (0..=(i - j) / step)
        .map(|k| Gen::U((i - k * step) as u32))
        .collect();
    Word::new(n, letters)
}

/// `U_{i\j} = U_i U_{i-1} … U_j`, or the empty word when `i < j`.
pub fn desc_run(n: usize, i: i64, j: i64) -> Result<Word> {
    run(n, i, j, 1)
}

/// `U_{i\\j} = U_i U_{i-2} … U_j`, or the empty word unless `i - j` is a nonnegative even number.
pub fn step2_run(n: usize, i: i64, j: i64) -> Result<Word> {
    run(n, i, j, 2)
}

fn check_weight(m: usize, n: usize) -> Result<()> {
    if m > n || !(n - m).is_multiple_of(2) {
        return Err(Error::Parity { n, m: m as i64 });
    }
    Ok(())
}

/// `E_m = U_1 U_3 … U_{n-m-1}`.
pub fn e_word(m: usize, n: usize) -> Result<Word> {
    check_weight(m, n)?;
    let letters = (1..n - m).step_by(2).map(|i| Gen::U(i as u32)).collect();
    Word::new(n, letters)
}

/// `Er_m = U_{n-1} U_{n-3} … U_{m+1}`.
pub fn er_word(m: usize, n: usize) -> Result<Word> {
    check_weight(m, n)?;
    step2_run(n, n as i64 - 1, m as i64 + 1)
}

/// `E_{m+} = E_m e U_2 U_4 … U_{n-m} E_m`, defined for `m > 0`.
pub fn eplus_word(m: usize, n: usize) -> Result<Word> {
    check_weight(m, n)?;
    if m == 0 {
        return Err(Error::Parity { n, m: 0 });
    }
    let em = e_word(m, n)?;
    let mut letters = em.letters.clone();
    letters.push(Gen::E);
    letters.extend((2..=n - m).step_by(2).map(|i| Gen::U(i as u32)));
    letters.extend_from_slice(&em.letters);
    Word::new(n, letters)
}

/// The generating word for walk weight `m`: `E_{|m|}` for `m <= 0`, `E_{m+}` for `m > 0`.
pub fn weight_tail(m: i64, n: usize) -> Result<Word> {
    if m > 0 {
        eplus_word(m as usize, n)
    } else {
        e_word(m.unsigned_abs() as usize, n)
    }
}

/// All generators of `b_n`: `e` first, then `U_1 … U_{n-1}`.
pub fn generators(n: usize) -> Vec<Gen> {
    std::iter::once(Gen::E)
        .chain((1..n as u32).map(Gen::U))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, s: &str) -> Word {
        Word::parse(n, s).unwrap()
    }

    #[test]
    fn concat_and_opposite() {
        assert_eq!(Word::identity(3).concat(&w(3, "U1")).unwrap(), w(3, "U1"));
        assert_eq!(w(3, "U1").concat(&w(3, "U2")).unwrap(), w(3, "U1 U2"));
        assert_eq!(w(2, "e").concat(&w(2, "e")).unwrap().len(), 2);
        assert!(w(2, "e").concat(&w(3, "e")).is_err());
        let x = w(3, "U1 e U2 U1");
        assert_eq!(x.opposite(), w(3, "U1 U2 e U1"));
        assert_eq!(x.opposite().opposite(), x);
    }

    #[test]
    fn parsing() {
        assert_eq!(w(3, "U0 U1"), w(3, "e U1"));
        assert_eq!(w(3, "1").to_string(), "1");
        assert!(Word::parse(3, "U3").is_err());
        assert!(Word::parse(3, "x").is_err());
    }

    #[test]
    fn runs() {
        assert_eq!(desc_run(4, 3, 1).unwrap(), w(4, "U3 U2 U1"));
        assert!(desc_run(4, 1, 3).unwrap().is_empty());
        assert_eq!(desc_run(4, 2, 2).unwrap(), w(4, "U2"));
        assert_eq!(step2_run(4, 3, 1).unwrap(), w(4, "U3 U1"));
        assert!(step2_run(4, 2, 1).unwrap().is_empty());
        assert_eq!(step2_run(4, 1, 1).unwrap(), w(4, "U1"));
        assert!(step2_run(4, -1, 1).unwrap().is_empty());
    }

    #[test]
    fn structured_words() {
        assert_eq!(e_word(0, 4).unwrap(), w(4, "U1 U3"));
        assert_eq!(eplus_word(1, 3).unwrap(), w(3, "U1 e U2 U1"));
        assert_eq!(er_word(1, 3).unwrap(), w(3, "U2"));
        assert!(e_word(4, 4).unwrap().is_empty());
        assert!(e_word(1, 4).is_err());
        assert!(eplus_word(0, 4).is_err());
        assert_eq!(eplus_word(2, 2).unwrap(), w(2, "e"));
    }

    #[test]
    fn e_word_shift_invariance() {
        for n in 0..10usize {
            for m in (n % 2..=n).step_by(2) {
                assert_eq!(
                    e_word(m + 1, n + 1).unwrap().letters(),
                    e_word(m, n).unwrap().letters()
                );
            }
        }
    }
}
