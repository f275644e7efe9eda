//! Exact coefficients in `Z[γ, δe][q, q⁻¹]` and their images in a prime field.
//!
//! Elements are sparse maps from monomials to nonzero integer coefficients.
//! The string form uses the tokens `q`, `g` (γ) and `de` (δe).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::Error;

/// Exponent triple `q^q · γ^g · δe^d`. Ordered lexicographically by `(q, g, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub q: i32,
    pub g: u32,
    pub d: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { q: 0, g: 0, d: 0 };

    fn mul(self, other: Monomial) -> Monomial {
        Monomial {
            q: self.q + other.q,
            g: self.g + other.g,
            d: self.d + other.d,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RingElem {
    terms: BTreeMap<Monomial, i64>,
}

impl RingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, Monomial::ONE)
    }

    pub fn monomial(coeff: i64, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(m, coeff);
        }
        Self { terms }
    }

    pub fn int(c: i64) -> Self {
        Self::monomial(c, Monomial::ONE)
    }

    pub fn q_pow(k: i32) -> Self {
        Self::monomial(
            1,
            Monomial {
                q: k,
                ..Monomial::ONE
            },
        )
    }

    pub fn gamma() -> Self {
        Self::monomial(
            1,
            Monomial {
                g: 1,
                ..Monomial::ONE
            },
        )
    }

    pub fn delta_e() -> Self {
        Self::monomial(
            1,
            Monomial {
                d: 1,
                ..Monomial::ONE
            },
        )
    }

    /// The loop value `[2] = q + q⁻¹`.
    pub fn loop_value() -> Self {
        Self::q_pow(1) + Self::q_pow(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE) == Some(&1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &i64)> {
        self.terms.iter()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m).or_insert(0);
        *entry = entry.checked_add(c).expect("coefficient overflow");
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    /// Evaluates at `q = q0, γ = g0, δe = d0` in `field`.
    pub fn specialize(&self, field: PrimeField, q0: u64, g0: u64, d0: u64) -> Result<u64, Error> {
        let q0 = field.reduce(q0);
        if q0 == 0 {
            return Err(Error::NonInvertibleQ);
        }
        let q_inv = field.inv(q0);
        let (g0, d0) = (field.reduce(g0), field.reduce(d0));
        let mut acc = 0;
        for (m, &c) in &self.terms {
            let qpart = if m.q >= 0 {
                field.pow(q0, m.q as u64)
            } else {
                field.pow(q_inv, m.q.unsigned_abs() as u64)
            };
            let t = field.mul(
                field.from_i64(c),
                field.mul(
                    qpart,
                    field.mul(field.pow(g0, m.g as u64), field.pow(d0, m.d as u64)),
                ),
            );
            acc = field.add(acc, t);
        }
        Ok(acc)
    }
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        let mut out = self.clone();
        for (&m, &c) in &rhs.terms {
            out.add_term(m, c);
        }
        out
    }
}

impl Add for RingElem {
    type Output = RingElem;
    fn add(self, rhs: RingElem) -> RingElem {
        &self + &rhs
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            terms: self.terms.iter().map(|(&m, &c)| (m, -c)).collect(),
        }
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        self + &(-rhs)
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        let mut out = RingElem::zero();
        for (&a, &x) in &self.terms {
            for (&b, &y) in &rhs.terms {
                out.add_term(a.mul(b), x.checked_mul(y).expect("coefficient overflow"));
            }
        }
        out
    }
}

impl Mul for RingElem {
    type Output = RingElem;
    fn mul(self, rhs: RingElem) -> RingElem {
        &self * &rhs
    }
}

fn write_factors(f: &mut fmt::Formatter<'_>, m: &Monomial) -> Result<bool, fmt::Error> {
    let mut parts = Vec::new();
    match m.g {
        0 => {}
        1 => parts.push("g".to_string()),
        k => parts.push(format!("g^{k}")),
    }
    match m.d {
        0 => {}
        1 => parts.push("de".to_string()),
        k => parts.push(format!("de^{k}")),
    }
    match m.q {
        0 => {}
        1 => parts.push("q".to_string()),
        k => parts.push(format!("q^{k}")),
    }
    if parts.is_empty() {
        return Ok(false);
    }
    write!(f, "{}", parts.join("*"))?;
    Ok(true)
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, &c)) in self.terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            if idx == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}*")?;
                }
                write_factors(f, m)?;
            }
        }
        Ok(())
    }
}

impl FromStr for RingElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("bad ring element {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        // split into signed terms, keeping exponent minus signs attached
        let mut terms = Vec::new();
        let mut cur = String::new();
        let chars: Vec<char> = compact.chars().collect();
        for (i, &ch) in chars.iter().enumerate() {
            let after_caret = i > 0 && chars[i - 1] == '^';
            if (ch == '+' || ch == '-') && !after_caret && !cur.is_empty() {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);

        let mut out = RingElem::zero();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, term.strip_prefix('+').unwrap_or(&term)),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let mut coeff: i64 = sign;
            let mut m = Monomial::ONE;
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, Some(e.parse::<i64>().map_err(|_| bad())?)),
                    None => (factor, None),
                };
                match base {
                    "q" => m.q += exp.unwrap_or(1) as i32,
                    "g" => m.g += u32::try_from(exp.unwrap_or(1)).map_err(|_| bad())?,
                    "de" => m.d += u32::try_from(exp.unwrap_or(1)).map_err(|_| bad())?,
                    digits => {
                        if exp.is_some() {
                            return Err(bad());
                        }
                        coeff *= digits.parse::<i64>().map_err(|_| bad())?;
                    }
                }
            }
            out.add_term(m, coeff);
        }
        Ok(out)
    }
}

/// Arithmetic modulo a prime `p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

/// `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, Error> {
        if p >= 1 << 63 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn reduce(self, a: u64) -> u64 {
        a % self.p
    }

    pub fn from_i64(self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Panics on zero.
    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        self.pow(a, self.p - 2)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> RingElem {
        RingElem::q_pow(1)
    }

    #[test]
    fn additive_inverse_and_loop_value() {
        assert!((&q() + &(-&q())).is_zero());
        assert_eq!(q() + RingElem::q_pow(-1), RingElem::loop_value());
        assert_eq!(
            RingElem::gamma() + RingElem::gamma(),
            RingElem::int(2) * RingElem::gamma()
        );
    }

    #[test]
    fn products() {
        assert!((q() * RingElem::q_pow(-1)).is_one());
        let two = RingElem::loop_value();
        assert_eq!(
            &two * &two,
            RingElem::q_pow(2) + RingElem::int(2) + RingElem::q_pow(-2)
        );
        assert_eq!(
            RingElem::gamma() * two,
            "g*q + g*q^-1".parse::<RingElem>().unwrap()
        );
    }

    #[test]
    fn canonical_string() {
        assert_eq!(RingElem::loop_value().to_string(), "q^-1 + q");
        let e = RingElem::delta_e() + RingElem::gamma() * RingElem::q_pow(2);
        assert_eq!(e.to_string(), "de + g*q^2");
        assert_eq!("g*q^0".parse::<RingElem>().unwrap(), RingElem::gamma());
        assert_eq!(
            "-3*q^-2 + 1".parse::<RingElem>().unwrap().to_string(),
            "-3*q^-2 + 1"
        );
        assert!("q^x".parse::<RingElem>().is_err());
    }

    #[test]
    fn specialize_examples() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        assert_eq!(RingElem::loop_value().specialize(f, 1, 0, 0).unwrap(), 2);
        assert_eq!(RingElem::gamma().specialize(f, 9, 5, 0).unwrap(), 5);
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(RingElem::q_pow(2).specialize(f7, 3, 0, 0).unwrap(), 2);
        assert!(matches!(
            q().specialize(f7, 14, 1, 1),
            Err(Error::NonInvertibleQ)
        ));
    }

    #[test]
    fn primality() {
        assert!(PrimeField::new(DEFAULT_PRIME).is_ok());
        assert!(PrimeField::new(1_000_000_007).is_ok());
        assert!(PrimeField::new(1 << 31).is_err());
        assert!(PrimeField::new(561).is_err());
    }

    fn arb_elem() -> impl Strategy<Value = RingElem> {
        prop::collection::vec((-3i32..=3, 0u32..=2, 0u32..=2, -4i64..=4), 0..4).prop_map(|ts| {
            let mut e = RingElem::zero();
            for (a, b, c, k) in ts {
                e.add_term(Monomial { q: a, g: b, d: c }, k);
            }
            e
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn ring_axioms(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(a.to_string().parse::<RingElem>().unwrap(), a);
        }

        #[test]
        fn specialization_is_a_homomorphism(a in arb_elem(), b in arb_elem(),
                                            q0 in 1u64..DEFAULT_PRIME, g0 in 0u64..DEFAULT_PRIME,
                                            d0 in 0u64..DEFAULT_PRIME) {
            let f = PrimeField::new(DEFAULT_PRIME).unwrap();
            let s = |x: &RingElem| x.specialize(f, q0, g0, d0).unwrap();
            prop_assert_eq!(s(&(&a * &b)), f.mul(s(&a), s(&b)));
            prop_assert_eq!(s(&(&a + &b)), f.add(s(&a), s(&b)));
        }
    }
}
