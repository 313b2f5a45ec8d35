//! Sparse trivariate polynomials over a [`FieldCtx`], the truncated rings
//! `F[x,y,z]/(x^B, y^B, z^B)`, and the bracket generator families.

mod basis;
mod gens;

use std::fmt;

use rustc_hash::FxHashMap;

pub use basis::GradedBasis;
pub use gens::{
    bracket, bracket_z, check_q, u_basis, w0_generators, w_generators, wprime_generators,
    BracketCache, BracketSpec, Family, Generator,
};

use crate::binaryfield::{format_elem, FieldCtx, FieldElem};
use crate::error::{Error, Result};
use crate::unipoly::BitPoly;

const FIELD_BITS: u32 = 21;
const FIELD_MASK: u64 = (1 << FIELD_BITS) - 1;

/// Exponent triple packed as three 21-bit fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn new(ex: u32, ey: u32, ez: u32) -> Self {
        debug_assert!(u64::from(ex.max(ey).max(ez)) <= FIELD_MASK);
        Mono(u64::from(ex) << (2 * FIELD_BITS) | u64::from(ey) << FIELD_BITS | u64::from(ez))
    }

    pub fn from_triple(t: [u32; 3]) -> Self {
        Self::new(t[0], t[1], t[2])
    }

    pub fn ex(self) -> u32 {
        (self.0 >> (2 * FIELD_BITS)) as u32
    }

    pub fn ey(self) -> u32 {
        ((self.0 >> FIELD_BITS) & FIELD_MASK) as u32
    }

    pub fn ez(self) -> u32 {
        (self.0 & FIELD_MASK) as u32
    }

    pub fn triple(self) -> [u32; 3] {
        [self.ex(), self.ey(), self.ez()]
    }

    pub fn degree(self) -> u32 {
        self.ex() + self.ey() + self.ez()
    }

    /// Product of monomials (the packed fields add without carries).
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Mono) -> Mono {
        Mono(self.0 + other.0)
    }

    pub fn fits(self, bound: u32) -> bool {
        self.ex() < bound && self.ey() < bound && self.ez() < bound
    }

    pub fn swap_xy(self) -> Mono {
        Mono::new(self.ey(), self.ex(), self.ez())
    }

    /// Weight `e_x + 2 e_y mod 3`; every `h_a` is homogeneous for it.
    pub fn class3(self) -> u32 {
        (self.ex() + 2 * self.ey()) % 3
    }

    pub fn raw(self) -> u64 {
        self.0
    }
}

/// A sparse polynomial in `x, y, z`. Coefficients are kept as reduced bit
/// vectors in the power basis of the context; no zero coefficient is stored.
#[derive(Clone)]
pub struct TriPoly {
    ctx: FieldCtx,
    terms: FxHashMap<Mono, BitPoly>,
}

impl PartialEq for TriPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms == other.terms
    }
}

impl Eq for TriPoly {}

impl TriPoly {
    pub fn zero(ctx: &FieldCtx) -> Self {
        Self { ctx: ctx.clone(), terms: FxHashMap::default() }
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        Self::monomial(&ctx.one(), Mono::ONE)
    }

    pub fn monomial(c: &FieldElem, m: Mono) -> Self {
        let mut p = Self::zero(c.ctx());
        if !c.is_zero() {
            p.terms.insert(m, c.bits().clone());
        }
        p
    }

    /// `x`, `y` or `z` for `var = 0, 1, 2`.
    pub fn var(ctx: &FieldCtx, var: usize) -> Self {
        let mut t = [0u32; 3];
        t[var] = 1;
        Self::monomial(&ctx.one(), Mono::from_triple(t))
    }

    /// Sum of the listed monomials with coefficient 1; repeats cancel.
    pub fn from_monos(ctx: &FieldCtx, monos: &[[u32; 3]]) -> Self {
        let mut p = Self::zero(ctx);
        for &t in monos {
            p.add_term(Mono::from_triple(t), &BitPoly::one());
        }
        p
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms sorted lexicographically by exponent triple.
    pub fn terms(&self) -> Vec<(Mono, FieldElem)> {
        let mut out: Vec<_> = self.terms.iter().map(|(m, c)| (*m, self.ctx.elem(c.clone()))).collect();
        out.sort_by_key(|(m, _)| *m);
        out
    }

    pub(crate) fn raw_terms(&self) -> impl Iterator<Item = (&Mono, &BitPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: [u32; 3]) -> FieldElem {
        match self.terms.get(&Mono::from_triple(t)) {
            Some(c) => self.ctx.elem(c.clone()),
            None => self.ctx.zero(),
        }
    }

    /// Adds `c * m` in place, `c` already reduced.
    pub(crate) fn add_term(&mut self, m: Mono, c: &BitPoly) {
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c.clone());
                }
            }
        }
    }

    /// The common total degree, `None` for zero; errors if not homogeneous.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let Some(d) = it.next() else { return Ok(None) };
        for e in it {
            if e != d {
                return Err(Error::DegreeMismatch { expected: d as usize, found: e as usize });
            }
        }
        Ok(Some(d))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_ok()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::CtxMismatch);
        }
        let (mut big, small) = if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(*m, c);
        }
        Ok(big)
    }

    pub fn scale(&self, c: &FieldElem) -> Result<Self> {
        if c.ctx() != &self.ctx {
            return Err(Error::CtxMismatch);
        }
        let mut out = Self::zero(&self.ctx);
        if c.is_zero() {
            return Ok(out);
        }
        for (m, a) in &self.terms {
            out.terms.insert(*m, self.ctx.mul_raw(a, c.bits()));
        }
        Ok(out)
    }

    /// Product; with a bound `B`, monomials with an exponent `>= B` are dropped.
    pub fn tmul(&self, other: &Self, bound: Option<u32>) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::CtxMismatch);
        }
        let mut out = Self::zero(&self.ctx);
        let ones = self.is_f2() && other.is_f2();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(*mb);
                if bound.is_some_and(|b| !m.fits(b)) {
                    continue;
                }
                if ones {
                    out.add_term(m, ca);
                } else {
                    out.add_term(m, &self.ctx.mul_raw(ca, cb));
                }
            }
        }
        Ok(out)
    }

    /// Whether every coefficient is 0 or 1.
    pub fn is_f2(&self) -> bool {
        self.terms.values().all(|c| c.is_one())
    }

    /// Squaring is monomial-wise in characteristic 2.
    pub fn square(&self, bound: Option<u32>) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let m2 = m.mul(*m);
            if bound.is_none_or(|b| m2.fits(b)) {
                out.terms.insert(m2, self.ctx.reduce(&c.square()));
            }
        }
        out
    }

    /// `self^k` by square-and-multiply, truncating at every step.
    pub fn pow(&self, k: u64, bound: Option<u32>) -> Self {
        let mut acc = Self::one(&self.ctx).truncate(bound);
        for bit in (0..64 - k.leading_zeros()).rev() {
            acc = acc.square(bound);
            if (k >> bit) & 1 == 1 {
                acc = acc.tmul(self, bound).expect("same ctx");
            }
        }
        acc
    }

    pub fn truncate(mut self, bound: Option<u32>) -> Self {
        if let Some(b) = bound {
            self.terms.retain(|m, _| m.fits(b));
        }
        self
    }

    pub fn swap_xy(&self) -> Self {
        Self { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, c)| (m.swap_xy(), c.clone())).collect() }
    }

    /// Re-reads an F_2-coefficient polynomial in another field.
    pub fn lift(&self, ctx: &FieldCtx) -> Result<Self> {
        if !self.is_f2() {
            return Err(Error::CtxMismatch);
        }
        Ok(Self { ctx: ctx.clone(), terms: self.terms.clone() })
    }

    pub fn eval(&self, x: &FieldElem, y: &FieldElem, z: &FieldElem) -> FieldElem {
        let mut acc = self.ctx.zero();
        for (m, c) in &self.terms {
            let t = &(&x.pow(m.ex().into()) * &y.pow(m.ey().into())) * &z.pow(m.ez().into());
            acc = &acc + &(&t * &self.ctx.elem(c.clone()));
        }
        acc
    }

    /// Debug dump `coeff*x^a*y^b*z^c + ...` in lexicographic order.
    pub fn dump(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms()
            .iter()
            .map(|(m, c)| {
                let s = format_elem(c);
                let s = if s.contains('+') { format!("({s})") } else { s };
                format!("{s}*x^{}*y^{}*z^{}", m.ex(), m.ey(), m.ez())
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

/// `A_x = x^2 + yz`.
pub fn ax(ctx: &FieldCtx) -> TriPoly {
    TriPoly::from_monos(ctx, &[[2, 0, 0], [0, 1, 1]])
}

/// `A_y = y^2 + xz`.
pub fn ay(ctx: &FieldCtx) -> TriPoly {
    TriPoly::from_monos(ctx, &[[0, 2, 0], [1, 0, 1]])
}

/// `h_a = a z^4 + A_x A_y = a z^4 + x^2y^2 + x^3z + y^3z + xyz^2`.
pub fn h_poly(alpha: &FieldElem) -> TriPoly {
    let ctx = alpha.ctx();
    let mut p = TriPoly::from_monos(ctx, &[[2, 2, 0], [3, 0, 1], [0, 3, 1], [1, 1, 2]]);
    p.add_term(Mono::new(0, 0, 4), alpha.bits());
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binaryfield::presets::preset;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_poly(ctx: &FieldCtx, rng: &mut ChaCha8Rng, n: usize, maxe: u32) -> TriPoly {
        let mut p = TriPoly::zero(ctx);
        for _ in 0..n {
            let m = Mono::new(rng.gen_range(0..maxe), rng.gen_range(0..maxe), rng.gen_range(0..maxe));
            p.add_term(m, ctx.random(rng).bits());
        }
        p
    }

    #[test]
    fn mono_packing() {
        let m = Mono::new(5, 1_000_000, 7);
        assert_eq!(m.triple(), [5, 1_000_000, 7]);
        assert_eq!(m.mul(Mono::new(1, 2, 3)).triple(), [6, 1_000_002, 10]);
        assert!(Mono::new(3, 3, 3).fits(4) && !Mono::new(4, 0, 0).fits(4));
    }

    #[test]
    fn tmul_examples() {
        let k = FieldCtx::f2();
        let x = TriPoly::var(&k, 0);
        assert!(x.tmul(&x, Some(2)).unwrap().is_zero());
        let p = ax(&k).tmul(&ay(&k), None).unwrap();
        assert_eq!(p, TriPoly::from_monos(&k, &[[2, 2, 0], [3, 0, 1], [0, 3, 1], [1, 1, 2]]));
        assert_eq!(h_poly(&k.zero()), p);
        let h1 = h_poly(&k.one());
        assert_eq!(h1.len(), 5);
        assert!(h1.is_f2());
        let k13 = preset("t2-d13").unwrap();
        assert_eq!(ax(&k).tmul(&ax(&k13), None), Err(Error::CtxMismatch));
    }

    #[test]
    fn h_at_001_is_alpha() {
        let k = preset("t2-d13").unwrap();
        let a = k.generator().pow(77);
        assert_eq!(h_poly(&a).eval(&k.zero(), &k.zero(), &k.one()), a);
    }

    #[test]
    fn bounded_tmul_is_truncated_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let k = preset("t2-d5").unwrap();
        for _ in 0..50 {
            let a = random_poly(&k, &mut rng, 20, 9);
            let b = random_poly(&k, &mut rng, 20, 9);
            let bound = rng.gen_range(1..12);
            assert_eq!(a.tmul(&b, Some(bound)).unwrap(), a.tmul(&b, None).unwrap().truncate(Some(bound)));
            assert_eq!(a.square(None), a.tmul(&a, None).unwrap());
            assert_eq!(a.pow(5, Some(bound)), a.pow(5, None).truncate(Some(bound)));
        }
    }

    #[test]
    fn dump_format() {
        let k = preset("t2-d2").unwrap();
        let p = h_poly(&(&k.generator() + &k.one()));
        assert_eq!(
            p.dump(),
            "(a+1)*x^0*y^0*z^4 + 1*x^0*y^3*z^1 + 1*x^1*y^1*z^2 + 1*x^2*y^2*z^0 + 1*x^3*y^0*z^1"
        );
        assert_eq!(TriPoly::zero(&k).dump(), "0");
    }
}
