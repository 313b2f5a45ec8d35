//! Roots of F_2 polynomials inside a given F_{2^d}.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{factor, BitPoly};
use crate::binaryfield::{FieldCtx, FieldElem};
use crate::error::{Error, Result};
use crate::unipoly::factor::TRACE_RETRY_CAP;

/// All distinct roots of `f` lying in `ctx`, sorted by coordinate bits.
/// Every returned root is checked by evaluation.
pub fn roots_in_field(f: &BitPoly, ctx: &FieldCtx) -> Result<Vec<FieldElem>> {
    let Some(n) = f.degree() else {
        return Err(Error::DivisionByZero);
    };
    if n == 0 {
        return Ok(Vec::new());
    }
    let d = ctx.degree();
    // x^(2^d) - x collects exactly the factors whose degree divides d.
    let mut h = BitPoly::w().rem(f)?;
    let table = super::SquareModTable::new(f);
    for _ in 0..d {
        h = table.square(&h);
    }
    let g = h.add(&BitPoly::w()).gcd(f);
    if g.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x2007_5eed);
    let mut roots = Vec::new();
    for (p, _) in factor(&g)?.factors {
        let k = p.degree().unwrap();
        let r = one_root(&p, ctx, &mut rng)?;
        let mut c = r;
        for _ in 0..k {
            roots.push(c.clone());
            c = c.square();
        }
    }
    roots.sort_by(|a, b| a.bits().cmp(b.bits()));
    roots.dedup();
    for r in &roots {
        assert!(eval(f, r).is_zero(), "root check failed");
    }
    Ok(roots)
}

/// Horner evaluation of an F_2 polynomial at a field element.
pub fn eval(f: &BitPoly, at: &FieldElem) -> FieldElem {
    let ctx = at.ctx();
    let mut acc = ctx.zero();
    let Some(n) = f.degree() else { return acc };
    for k in (0..=n).rev() {
        acc = &acc * at;
        if f.coeff(k) {
            acc = &acc + &ctx.one();
        }
    }
    acc
}

/// Dense polynomial over a field, low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
struct ExtPoly(Vec<FieldElem>);

impl ExtPoly {
    fn from_f2(p: &BitPoly, ctx: &FieldCtx) -> Self {
        let n = p.degree().map_or(0, |d| d + 1);
        let mut c: Vec<FieldElem> =
            (0..n).map(|k| if p.coeff(k) { ctx.one() } else { ctx.zero() }).collect();
        trim(&mut c);
        Self(c)
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn rem(&self, m: &Self) -> Self {
        let dm = m.degree().expect("nonzero modulus");
        let lead_inv = m.0[dm].inv().unwrap();
        let mut r = self.0.clone();
        while r.len() > dm {
            let top = r.len() - 1;
            let c = &r[top] * &lead_inv;
            for (k, mk) in m.0.iter().enumerate() {
                let t = &c * mk;
                r[top - dm + k] = &r[top - dm + k] + &t;
            }
            trim(&mut r);
        }
        Self(r)
    }

    fn mul_mod(&self, other: &Self, m: &Self, ctx: &FieldCtx) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return Self(Vec::new());
        }
        let mut out = vec![ctx.zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        trim(&mut out);
        Self(out).rem(m)
    }

    fn add(&self, other: &Self, ctx: &FieldCtx) -> Self {
        let n = self.0.len().max(other.0.len());
        let z = ctx.zero();
        let mut out: Vec<FieldElem> =
            (0..n).map(|k| self.0.get(k).unwrap_or(&z) + other.0.get(k).unwrap_or(&z)).collect();
        trim(&mut out);
        Self(out)
    }

    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.0.is_empty() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if let Some(d) = a.degree() {
            let inv = a.0[d].inv().unwrap();
            for c in a.0.iter_mut() {
                *c = &*c * &inv;
            }
        }
        a
    }

    fn div_exact(&self, m: &Self, ctx: &FieldCtx) -> Self {
        let dm = m.degree().unwrap();
        let lead_inv = m.0[dm].inv().unwrap();
        let mut r = self.0.clone();
        let mut q = vec![ctx.zero(); r.len().saturating_sub(dm)];
        while r.len() > dm {
            let top = r.len() - 1;
            let c = &r[top] * &lead_inv;
            for (k, mk) in m.0.iter().enumerate() {
                r[top - dm + k] = &r[top - dm + k] + &(&c * mk);
            }
            q[top - dm] = c;
            trim(&mut r);
        }
        debug_assert!(r.is_empty());
        trim(&mut q);
        Self(q)
    }
}

fn trim(c: &mut Vec<FieldElem>) {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
}

/// One root of an irreducible `p` whose degree divides `ctx.degree()`.
fn one_root(p: &BitPoly, ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> Result<FieldElem> {
    let mut g = ExtPoly::from_f2(p, ctx);
    let d = ctx.degree();
    while g.degree().unwrap() > 1 {
        let n = g.degree().unwrap();
        let mut split = None;
        for _ in 0..TRACE_RETRY_CAP {
            // Tr(r x) mod g splits g for a random r with probability about 1/2.
            let r = ctx.random(rng);
            let x = ExtPoly(vec![ctx.zero(), r]).rem(&g);
            let mut s = x.clone();
            let mut t = x;
            for _ in 1..d {
                s = s.mul_mod(&s, &g, ctx);
                t = t.add(&s, ctx);
            }
            let h = t.gcd(&g);
            let dh = h.degree().unwrap_or(0);
            if dh > 0 && dh < n {
                split = Some(h);
                break;
            }
        }
        let h = split.ok_or(Error::TraceSplitFailed(TRACE_RETRY_CAP))?;
        let other = g.div_exact(&h, ctx);
        g = if h.degree() <= other.degree() { h } else { other };
    }
    // g is monic linear: x + c.
    Ok(g.0[0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binaryfield::presets::preset;

    fn p(s: &str) -> BitPoly {
        BitPoly::parse(s).unwrap()
    }

    #[test]
    fn small_examples() {
        let f2 = FieldCtx::f2();
        let r = roots_in_field(&p("1,0"), &f2).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].is_one());
        assert_eq!(roots_in_field(&p("2,1,0"), &preset("t2-d2").unwrap()).unwrap().len(), 2);
        assert!(roots_in_field(&p("2,1,0"), &preset("t2-d3").unwrap()).unwrap().is_empty());
        // Repeated roots are reported once.
        assert_eq!(roots_in_field(&p("2,0"), &f2).unwrap().len(), 1);
    }

    #[test]
    fn splits_in_bigger_field() {
        // w^3+w+1 has its three roots in F_{2^6}, presented by an unrelated modulus.
        let k6 = FieldCtx::parse_spec("d:6;mod:6,1,0").unwrap();
        let f = p("3,1,0").mul(&p("2,1,0")).mul(&p("6,1,0"));
        let r = roots_in_field(&f, &k6).unwrap();
        assert_eq!(r.len(), 3 + 2 + 6);
        // Quartic factors do not split in F_{2^6}.
        assert!(roots_in_field(&p("4,1,0"), &k6).unwrap().is_empty());
    }
}
