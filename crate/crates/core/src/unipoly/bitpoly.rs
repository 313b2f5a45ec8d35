use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use super::clmul::{gather_even, mul_words, spread32};
use crate::error::{Error, Result};

type Words = SmallVec<[u64; 2]>;

/// Dense polynomial over F_2, packed little-endian (bit `k` is the coefficient of `w^k`).
///
/// The representation is normalized: the top word is nonzero unless the
/// polynomial is zero, in which case there are no words at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitPoly {
    words: Words,
}

impl BitPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// The indeterminate `w`.
    pub fn w() -> Self {
        Self::monomial(1)
    }

    pub fn monomial(k: usize) -> Self {
        let mut words: Words = SmallVec::from_elem(0, k / 64 + 1);
        words[k / 64] = 1u64 << (k % 64);
        Self { words }
    }

    pub fn from_words(words: impl IntoIterator<Item = u64>) -> Self {
        let mut p = Self { words: words.into_iter().collect() };
        p.normalize();
        p
    }

    pub fn from_u128(bits: u128) -> Self {
        Self::from_words([bits as u64, (bits >> 64) as u64])
    }

    /// Builds `sum w^e` over the given exponents; repeated exponents cancel.
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = Self::zero();
        for &e in exps {
            p.flip(e);
        }
        p
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some(64 * (self.words.len() - 1) + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, k: usize) -> bool {
        self.words.get(k / 64).is_some_and(|w| (w >> (k % 64)) & 1 == 1)
    }

    /// Toggles the coefficient of `w^k`.
    pub fn flip(&mut self, k: usize) {
        if self.words.len() <= k / 64 {
            self.words.resize(k / 64 + 1, 0);
        }
        self.words[k / 64] ^= 1u64 << (k % 64);
        self.normalize();
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents of the nonzero terms, highest first.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (i, &w) in self.words.iter().enumerate().rev() {
            let mut w = w;
            while w != 0 {
                let b = 63 - w.leading_zeros() as usize;
                out.push(64 * i + b);
                w ^= 1u64 << b;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(short.words.iter()) {
            *w ^= s;
        }
        let mut p = Self { words };
        p.normalize();
        p
    }

    pub fn add_assign(&mut self, other: &Self) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (w, s) in self.words.iter_mut().zip(other.words.iter()) {
            *w ^= s;
        }
        self.normalize();
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::from_words(mul_words(&self.words, &other.words))
    }

    /// Frobenius square: spreads every bit `k` to bit `2k`.
    pub fn square(&self) -> Self {
        let mut out: Words = SmallVec::from_elem(0, 2 * self.words.len());
        for (i, &w) in self.words.iter().enumerate() {
            out[2 * i] = spread32(w as u32);
            out[2 * i + 1] = spread32((w >> 32) as u32);
        }
        let mut p = Self { words: out };
        p.normalize();
        p
    }

    /// Exact square root when every odd coefficient vanishes.
    pub fn sqrt(&self) -> Option<Self> {
        if self.words.iter().any(|w| w & 0xAAAA_AAAA_AAAA_AAAA != 0) {
            return None;
        }
        let n = self.words.len().div_ceil(2);
        let words = (0..n).map(|i| {
            let lo = gather_even(self.words[2 * i]) as u64;
            let hi = self.words.get(2 * i + 1).map_or(0, |&w| gather_even(w) as u64);
            lo | (hi << 32)
        });
        Some(Self::from_words(words))
    }

    /// Formal derivative: keeps the odd-exponent terms, shifted down by one.
    pub fn derivative(&self) -> Self {
        let odd: Vec<u64> = self.words.iter().map(|w| w & 0xAAAA_AAAA_AAAA_AAAA).collect();
        Self::from_words(odd).shr(1)
    }

    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (ws, bs) = (k / 64, k % 64);
        let mut out: Words = SmallVec::from_elem(0, self.words.len() + ws + 1);
        for (i, &w) in self.words.iter().enumerate() {
            out[i + ws] ^= w << bs;
            if bs != 0 {
                out[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        let mut p = Self { words: out };
        p.normalize();
        p
    }

    pub fn shr(&self, k: usize) -> Self {
        let (ws, bs) = (k / 64, k % 64);
        if ws >= self.words.len() {
            return Self::zero();
        }
        let n = self.words.len() - ws;
        let words = (0..n).map(|i| {
            let lo = self.words[i + ws] >> bs;
            let hi = if bs != 0 {
                self.words.get(i + ws + 1).map_or(0, |w| w << (64 - bs))
            } else {
                0
            };
            lo | hi
        });
        Self::from_words(words)
    }

    /// Keeps only the terms of degree `< k`.
    pub fn truncate(&self, k: usize) -> Self {
        let mut words = self.words.clone();
        let n = k.div_ceil(64);
        words.truncate(n);
        if !k.is_multiple_of(64) && words.len() == n {
            words[n - 1] &= (1u64 << (k % 64)) - 1;
        }
        let mut p = Self { words };
        p.normalize();
        p
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, m: &Self) -> Result<(Self, Self)> {
        let dm = m.degree().ok_or(Error::DivisionByZero)?;
        let mut r: Vec<u64> = self.words.to_vec();
        let Some(dr) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if dr < dm {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![0u64; (dr - dm) / 64 + 1];
        let mut top = dr;
        loop {
            if (r[top / 64] >> (top % 64)) & 1 == 1 {
                let s = top - dm;
                q[s / 64] |= 1u64 << (s % 64);
                xor_shifted(&mut r, &m.words, s);
            }
            if top == dm {
                break;
            }
            top -= 1;
        }
        Ok((Self::from_words(q), Self::from_words(r)))
    }

    pub fn rem(&self, m: &Self) -> Result<Self> {
        let dm = m.degree().ok_or(Error::DivisionByZero)?;
        let Some(dr) = self.degree() else {
            return Ok(Self::zero());
        };
        if dr < dm {
            return Ok(self.clone());
        }
        let mut r: Vec<u64> = self.words.to_vec();
        let mut top = dr;
        loop {
            if (r[top / 64] >> (top % 64)) & 1 == 1 {
                xor_shifted(&mut r, &m.words, top - dm);
            }
            if top == dm {
                break;
            }
            top -= 1;
        }
        Ok(Self::from_words(r))
    }

    /// Exact quotient; errors if `m` is zero. Any remainder is discarded.
    pub fn div_exact(&self, m: &Self) -> Result<Self> {
        Ok(self.div_rem(m)?.0)
    }

    /// Monic greatest common divisor (every nonzero polynomial over F_2 is monic).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g`.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("r1 is nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.add(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.add(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Result<Self> {
        self.mul(other).rem(m)
    }

    /// `self^k mod m` by left-to-right square and multiply.
    pub fn pow_mod(&self, k: u128, m: &Self) -> Result<Self> {
        let base = self.rem(m)?;
        let mut acc = Self::one().rem(m)?;
        if k == 0 {
            return Ok(acc);
        }
        for bit in (0..128 - k.leading_zeros()).rev() {
            acc = acc.square().rem(m)?;
            if (k >> bit) & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for bit in (0..32 - k.leading_zeros()).rev() {
            acc = acc.square();
            if (k >> bit) & 1 == 1 {
                acc = acc.mul(self);
            }
        }
        acc
    }

    /// Compares as unsigned integers: degree first, then bit pattern from the top.
    pub fn cmp_bits(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }

    /// Lowercase hex with a `0x` prefix, e.g. `0x103` for `w^8 + w + 1`.
    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0x0".into();
        }
        let mut s = format!("0x{:x}", self.words.last().unwrap());
        for w in self.words.iter().rev().skip(1) {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }

    /// Comma-separated exponent list, highest first (`"8,1,0"`); the zero polynomial is `""`.
    pub fn to_exponent_list(&self) -> String {
        self.exponents().iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Parses an exponent list (`"8,1,0"`) or a hex bit string (`"0x103"`).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            if hex.is_empty() {
                return Err(Error::Syntax(format!("empty hex literal {s:?}")));
            }
            let mut p = Self::zero();
            for (k, c) in hex.chars().rev().enumerate() {
                let v = c
                    .to_digit(16)
                    .ok_or_else(|| Error::Syntax(format!("bad hex digit {c:?} in {s:?}")))?;
                for b in 0..4 {
                    if (v >> b) & 1 == 1 {
                        p.flip(4 * k + b);
                    }
                }
            }
            return Ok(p);
        }
        if s.is_empty() {
            return Ok(Self::zero());
        }
        let mut exps = Vec::new();
        for part in s.split(',') {
            let e: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::Syntax(format!("bad exponent {part:?} in {s:?}")))?;
            exps.push(e);
        }
        Ok(Self::from_exponents(&exps))
    }

    /// Evaluates at `w = 0` and `w = 1`.
    pub fn eval_f2(&self, at: bool) -> bool {
        if at {
            self.weight() % 2 == 1
        } else {
            self.coeff(0)
        }
    }
}

/// `dst ^= src << shift`, where `dst` is long enough to hold the result.
pub(crate) fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (ws, bs) = (shift / 64, shift % 64);
    if bs == 0 {
        for (i, &s) in src.iter().enumerate() {
            dst[i + ws] ^= s;
        }
    } else {
        for (i, &s) in src.iter().enumerate() {
            dst[i + ws] ^= s << bs;
            let hi = s >> (64 - bs);
            if hi != 0 {
                dst[i + ws + 1] ^= hi;
            }
        }
    }
}

impl serde::Serialize for BitPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_exponent_list())
    }
}

impl Ord for BitPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_bits(other)
    }
}

impl PartialOrd for BitPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for BitPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "w".to_string(),
                _ => format!("w^{e}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BitPoly {
        BitPoly::parse(s).unwrap()
    }

    #[test]
    fn char_two_square() {
        assert_eq!(p("1,0").mul(&p("1,0")), p("2,0"));
        assert_eq!(p("1,0").square(), p("2,0"));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p("2,1").gcd(&p("1")), p("1"));
        assert_eq!(BitPoly::zero().gcd(&p("3,1,0")), p("3,1,0"));
    }

    #[test]
    fn pow_mod_matches_schoolbook_remainder() {
        let m = p("3,1,0");
        assert_eq!(BitPoly::w().pow_mod(8, &m).unwrap(), BitPoly::monomial(8).rem(&m).unwrap());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(p("3").rem(&BitPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn text_formats() {
        assert_eq!(p("0x103"), p("8,1,0"));
        assert_eq!(p("8,1,0").to_hex(), "0x103");
        assert_eq!(p("8,1,0").to_exponent_list(), "8,1,0");
        assert_eq!(p("8,1,0").to_string(), "w^8 + w + 1");
        assert!(BitPoly::parse("8,x").is_err());
        assert_eq!(BitPoly::monomial(130).to_hex().len(), 2 + 33);
    }

    #[test]
    fn degree_and_sqrt() {
        assert_eq!(BitPoly::zero().degree(), None);
        assert_eq!(BitPoly::monomial(200).degree(), Some(200));
        let f = p("200,77,3,0");
        assert_eq!(f.square().sqrt().unwrap(), f);
        assert!(f.sqrt().is_none());
        assert_eq!(p("5,4,1").derivative(), p("4,0"));
        assert_eq!(f.truncate(10), p("3,0"));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p("300,200,131,64,63,5,0");
        let m = p("70,3,1");
        let (q, r) = a.div_rem(&m).unwrap();
        assert!(r.degree().unwrap() < 70);
        assert_eq!(q.mul(&m).add(&r), a);
        let (g, s, t) = a.xgcd(&m);
        assert_eq!(s.mul(&a).add(&t.mul(&m)), g);
    }
}
