//! Finite fields F_{2^d} presented as F_2[w]/(m(w)) for an irreducible modulus `m`.
//!
//! A [`FieldCtx`] is immutable and cheap to clone (it is reference counted).
//! A [`FieldElem`] is a coefficient vector in the power basis `1, a, ..., a^(d-1)`
//! together with its context. Arithmetic between elements of different
//! contexts is refused: the `try_*` methods return [`Error::CtxMismatch`],
//! while the operator impls panic.

mod dyadic;
mod parse;
pub mod presets;

use std::fmt;
use std::ops::{Add, Mul};
use std::sync::Arc;

use rand::Rng;

pub use dyadic::Dyadic;
pub use parse::{format_elem, parse_elem, parse_elem_exponents};

use crate::error::{Error, Result};
use crate::unipoly::{is_irreducible, BitPoly};

#[derive(Debug)]
struct CtxInner {
    degree: usize,
    modulus: BitPoly,
    name: Option<String>,
}

/// An explicit finite field F_{2^d}.
#[derive(Clone, Debug)]
pub struct FieldCtx(Arc<CtxInner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.modulus == other.0.modulus
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Creates F_{2^d} = F_2[w]/(modulus), checking degree and irreducibility.
    pub fn new(d: usize, modulus: BitPoly) -> Result<Self> {
        Self::build(d, modulus, None)
    }

    pub fn named(d: usize, modulus: BitPoly, name: &str) -> Result<Self> {
        Self::build(d, modulus, Some(name.to_string()))
    }

    fn build(d: usize, modulus: BitPoly, name: Option<String>) -> Result<Self> {
        let found = modulus.degree().unwrap_or(0);
        if d == 0 || found != d {
            return Err(Error::DegreeMismatch { expected: d, found });
        }
        if !is_irreducible(&modulus) {
            return Err(Error::ReducibleModulus);
        }
        Ok(Self(Arc::new(CtxInner { degree: d, modulus, name })))
    }

    /// F_2 itself, presented by `w + 1` (so the generator equals 1).
    pub fn f2() -> Self {
        Self::named(1, BitPoly::from_exponents(&[1, 0]), "f2").expect("w+1 is irreducible")
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn modulus(&self) -> &BitPoly {
        &self.0.modulus
    }

    pub fn name(&self) -> Option<&str> {
        self.0.name.as_deref()
    }

    /// Field spec string `d:<degree>;mod:<exponent list>`.
    pub fn spec(&self) -> String {
        format!("d:{};mod:{}", self.degree(), self.modulus().to_exponent_list())
    }

    /// Parses a field spec string or a preset name.
    pub fn parse_spec(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(ctx) = presets::preset(s) {
            return Ok(ctx);
        }
        let mut degree = None;
        let mut modulus = None;
        for part in s.split(';') {
            let (key, value) = part
                .split_once(':')
                .ok_or_else(|| Error::Syntax(format!("bad field spec {s:?}")))?;
            match key.trim() {
                "d" => {
                    degree = Some(
                        value
                            .trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Syntax(format!("bad degree in {s:?}")))?,
                    )
                }
                "mod" => modulus = Some(BitPoly::parse(value)?),
                other => return Err(Error::Syntax(format!("unknown key {other:?} in {s:?}"))),
            }
        }
        match (degree, modulus) {
            (Some(d), Some(m)) => Self::new(d, m),
            _ => Err(Error::Syntax(format!("field spec {s:?} needs both d and mod"))),
        }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { ctx: self.clone(), repr: BitPoly::zero() }
    }

    pub fn one(&self) -> FieldElem {
        self.elem(BitPoly::one())
    }

    /// The class of `w`, written `a` in element strings.
    pub fn generator(&self) -> FieldElem {
        self.elem(BitPoly::w())
    }

    /// Reduces an arbitrary polynomial in the generator into the field.
    pub fn elem(&self, p: BitPoly) -> FieldElem {
        let repr = self.reduce(&p);
        FieldElem { ctx: self.clone(), repr }
    }

    pub fn from_u64(&self, bits: u64) -> FieldElem {
        self.elem(BitPoly::from_words([bits]))
    }

    pub(crate) fn reduce(&self, p: &BitPoly) -> BitPoly {
        match p.degree() {
            Some(d) if d >= self.degree() => p.rem(self.modulus()).expect("modulus is nonzero"),
            _ => p.clone(),
        }
    }

    /// Product of two reduced representatives.
    pub fn mul_raw(&self, a: &BitPoly, b: &BitPoly) -> BitPoly {
        self.reduce(&a.mul(b))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        let nw = self.degree().div_ceil(64);
        let words: Vec<u64> = (0..nw).map(|_| rng.gen()).collect();
        self.elem(BitPoly::from_words(words).truncate(self.degree()))
    }

    /// Every element in increasing bit order; only sensible for small degree.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        assert!(self.degree() < 32, "enumerating a field of degree {}", self.degree());
        (0u64..1u64 << self.degree()).map(move |b| self.from_u64(b))
    }
}

/// An element of a [`FieldCtx`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    ctx: FieldCtx,
    repr: BitPoly,
}

impl std::hash::Hash for FieldCtx {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.modulus.hash(state);
    }
}

impl FieldElem {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// Coordinates in the power basis, as a polynomial in the generator.
    pub fn bits(&self) -> &BitPoly {
        &self.repr
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.repr.is_one()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { ctx: self.ctx.clone(), repr: self.repr.add(&other.repr) })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { ctx: self.ctx.clone(), repr: self.ctx.mul_raw(&self.repr, &other.repr) })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn square(&self) -> Self {
        Self { ctx: self.ctx.clone(), repr: self.ctx.reduce(&self.repr.square()) }
    }

    /// Applies the Frobenius `x -> x^2` `k` times.
    pub fn frobenius(&self, k: usize) -> Self {
        let mut x = self.clone();
        for _ in 0..k % self.ctx.degree() {
            x = x.square();
        }
        x
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.repr.xgcd(self.ctx.modulus());
        debug_assert!(g.is_one());
        Ok(self.ctx.elem(s))
    }

    pub fn pow(&self, k: u128) -> Self {
        let mut acc = self.ctx.one();
        for bit in (0..128 - k.leading_zeros()).rev() {
            acc = acc.square();
            if (k >> bit) & 1 == 1 {
                acc = &acc * self;
            }
        }
        acc
    }

    /// Signed integer power; negative exponents need a nonzero base.
    pub fn powi(&self, k: i128) -> Result<Self> {
        if k >= 0 {
            Ok(self.pow(k as u128))
        } else {
            Ok(self.inv()?.pow(k.unsigned_abs()))
        }
    }

    /// The unique square root, `a^(2^(d-1))`.
    pub fn sqrt(&self) -> Self {
        self.frobenius(self.ctx.degree() - 1)
    }

    /// `a^q` for a dyadic rational `q = m / 2^s` (or `m * 2^s`).
    pub fn pow_dyadic(&self, q: Dyadic) -> Result<Self> {
        let d = self.ctx.degree() as i64;
        let shift = (q.exp() as i64).rem_euclid(d) as usize;
        let root = self.frobenius(shift);
        root.powi(q.mantissa() as i128)
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &'a FieldElem) -> FieldElem {
        self.try_add(rhs).expect("field elements from different contexts")
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &'a FieldElem) -> FieldElem {
        self.try_mul(rhs).expect("field elements from different contexts")
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: FieldElem) -> FieldElem {
        &self + &rhs
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: FieldElem) -> FieldElem {
        &self * &rhs
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_elem(self))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", format_elem(self), self.ctx.spec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f4() -> FieldCtx {
        FieldCtx::parse_spec("d:2;mod:2,1,0").unwrap()
    }

    #[test]
    fn create_examples() {
        assert_eq!(f4().degree(), 2);
        assert_eq!(FieldCtx::parse_spec("d:13;mod:13,4,3,1,0").unwrap().degree(), 13);
        assert_eq!(FieldCtx::new(2, BitPoly::parse("2,0").unwrap()), Err(Error::ReducibleModulus));
        assert_eq!(
            FieldCtx::new(3, BitPoly::parse("2,1,0").unwrap()),
            Err(Error::DegreeMismatch { expected: 3, found: 2 })
        );
        assert_eq!(FieldCtx::f2().one(), FieldCtx::f2().generator());
    }

    #[test]
    fn f4_arithmetic() {
        let k = f4();
        let a = k.generator();
        let a1 = &a + &k.one();
        assert!((&a * &a1).is_one());
        assert_eq!(a.inv().unwrap(), a1);
        assert!((&a + &a).is_zero());
        assert_eq!(a.sqrt(), a1);
        assert_eq!(a1.square(), a);
        assert_eq!(k.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn ctx_mismatch() {
        let k13 = FieldCtx::parse_spec("d:13;mod:13,4,3,1,0").unwrap();
        assert_eq!(f4().one().try_add(&k13.one()), Err(Error::CtxMismatch));
        assert_eq!(f4().one().try_mul(&k13.one()), Err(Error::CtxMismatch));
    }

    #[test]
    fn frobenius_exhaustive_small() {
        for spec in ["d:1;mod:1,0", "d:2;mod:2,1,0", "d:3;mod:3,1,0", "d:8;mod:8,4,3,1,0"] {
            let k = FieldCtx::parse_spec(spec).unwrap();
            let elems: Vec<_> = k.elements().collect();
            for a in &elems {
                assert_eq!(a.sqrt().square(), *a);
                assert_eq!(a.square().sqrt(), *a);
                if !a.is_zero() {
                    assert!(a.pow((1u128 << k.degree()) - 1).is_one());
                    assert!((a * &a.inv().unwrap()).is_one());
                }
                for b in &elems {
                    assert_eq!((a + b).square(), &a.square() + &b.square());
                }
            }
        }
    }

    #[test]
    fn randomized_large_degrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for name in ["t2-d13", "t2-d15", "t2-d20", "t2-d74"] {
            let k = presets::preset(name).unwrap();
            for _ in 0..50 {
                let a = k.random(&mut rng);
                let b = k.random(&mut rng);
                assert_eq!(a.sqrt().square(), a);
                assert_eq!((&a + &b).square(), &a.square() + &b.square());
                if !a.is_zero() {
                    assert!(a.pow((1u128 << k.degree()) - 1).is_one());
                }
            }
        }
    }

    #[test]
    fn dyadic_powers() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let k = presets::preset("t2-d13").unwrap();
        for _ in 0..50 {
            let a = k.random(&mut rng);
            assert_eq!(a.pow_dyadic(Dyadic::ONE).unwrap(), a);
            let q = a.pow_dyadic(Dyadic::pow2(-2)).unwrap();
            assert_eq!(q.square().square(), a);
            let h = a.pow_dyadic(Dyadic::pow2(-1)).unwrap();
            assert_eq!(&h * &h, a);
            assert_eq!(a.pow_dyadic(Dyadic::new(6, 0)).unwrap(), a.pow(6));
            assert_eq!(a.pow_dyadic(Dyadic::pow2(5)).unwrap(), a.pow(32));
        }
        assert_eq!(k.zero().pow_dyadic(Dyadic::new(-1, 0)), Err(Error::DivisionByZero));
    }
}
