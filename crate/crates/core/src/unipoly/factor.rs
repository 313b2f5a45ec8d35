//! Complete factorization over F_2: squarefree split, distinct-degree
//! split, then equal-degree splitting with the absolute trace.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::BitPoly;
use crate::error::{Error, Result};

/// Maximum number of random trace attempts for a single split.
pub const TRACE_RETRY_CAP: usize = 64;

/// Precomputed `w^(2i) mod f` for the upper half of the exponent range, so
/// that squaring modulo `f` is a spread plus a handful of row XORs.
pub struct SquareModTable {
    modulus: BitPoly,
    n: usize,
    nw: usize,
    first: usize,
    rows: Vec<u64>,
}

impl SquareModTable {
    pub fn new(modulus: &BitPoly) -> Self {
        let n = modulus.degree().expect("modulus must be nonzero");
        assert!(n >= 1, "modulus must have positive degree");
        let nw = n.div_ceil(64);
        let first = n.div_ceil(2);
        let mut rows = vec![0u64; (n - first) * nw];
        let mut cur = BitPoly::monomial(2 * first).rem(modulus).unwrap();
        let step = BitPoly::monomial(2);
        for i in first..n {
            let row = &mut rows[(i - first) * nw..(i - first + 1) * nw];
            for (r, w) in row.iter_mut().zip(cur.words()) {
                *r = *w;
            }
            cur = cur.mul(&step).rem(modulus).unwrap();
        }
        Self { modulus: modulus.clone(), n, nw, first, rows }
    }

    pub fn modulus(&self) -> &BitPoly {
        &self.modulus
    }

    /// `a^2 mod f` for `deg a < deg f`.
    pub fn square(&self, a: &BitPoly) -> BitPoly {
        debug_assert!(a.degree().is_none_or(|d| d < self.n));
        let low = a.truncate(self.first).square();
        let mut acc: Vec<u64> = vec![0u64; self.nw.max(low.words().len())];
        for (d, s) in acc.iter_mut().zip(low.words()) {
            *d ^= s;
        }
        for e in a.exponents() {
            if e < self.first {
                break;
            }
            let row = &self.rows[(e - self.first) * self.nw..(e - self.first + 1) * self.nw];
            for (d, s) in acc.iter_mut().zip(row) {
                *d ^= s;
            }
        }
        BitPoly::from_words(acc)
    }
}

/// Rabin's test: `w^(2^n) = w mod f` and `gcd(w^(2^(n/p)) - w, f) = 1` for each prime `p | n`.
pub fn is_irreducible(f: &BitPoly) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if !f.coeff(0) {
        return false;
    }
    let table = SquareModTable::new(f);
    let w = BitPoly::w().rem(f).unwrap();
    let checkpoints: Vec<usize> = prime_factors(n).into_iter().map(|p| n / p).collect();
    let mut h = w.clone();
    for k in 1..=n {
        h = table.square(&h);
        if checkpoints.contains(&k) && !h.add(&w).gcd(f).is_one() {
            return false;
        }
    }
    h == w
}

pub(crate) fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `f` into squarefree parts `(part, multiplicity)` whose product
/// `prod part^mult` is `f`. Parts are pairwise coprime and sorted by multiplicity.
pub fn squarefree_decompose(f: &BitPoly) -> Vec<(BitPoly, u32)> {
    assert!(!f.is_zero(), "squarefree_decompose of the zero polynomial");
    let mut parts = Vec::new();
    sqf_into(f, 1, &mut parts);
    // Merge parts that ended up with equal multiplicity.
    parts.sort_by_key(|(_, m)| *m);
    let mut merged: Vec<(BitPoly, u32)> = Vec::new();
    for (p, m) in parts {
        match merged.last_mut() {
            Some((q, mm)) if *mm == m => *q = q.mul(&p),
            _ => merged.push((p, m)),
        }
    }
    merged
}

fn sqf_into(f: &BitPoly, scale: u32, out: &mut Vec<(BitPoly, u32)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let d = f.derivative();
    if d.is_zero() {
        let r = f.sqrt().expect("zero derivative over F_2 means a square");
        sqf_into(&r, 2 * scale, out);
        return;
    }
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c).unwrap();
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).unwrap();
        if !z.is_one() {
            out.push((z, i * scale));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w).unwrap();
    }
    if !c.is_one() {
        let r = c.sqrt().expect("remaining cofactor is a square");
        sqf_into(&r, 2 * scale, out);
    }
}

/// Distinct-degree factorization of a squarefree `f`: pairs `(k, g_k)` where
/// `g_k` is the product of all irreducible factors of degree `k`.
pub fn distinct_degree(f: &BitPoly) -> Vec<(usize, BitPoly)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    if rest.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut table = SquareModTable::new(&rest);
    let mut h = BitPoly::w().rem(&rest).unwrap();
    let mut k = 0;
    loop {
        let n = rest.degree().unwrap();
        k += 1;
        if 2 * k > n {
            break;
        }
        h = table.square(&h);
        let g = h.add(&BitPoly::w()).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g).unwrap();
            out.push((k, g));
            if rest.degree().unwrap() == 0 {
                return out;
            }
            h = h.rem(&rest).unwrap();
            table = SquareModTable::new(&rest);
        }
    }
    let n = rest.degree().unwrap();
    if n > 0 {
        out.push((n, rest));
    }
    out
}

/// Splits a product of distinct irreducibles all of degree `k`.
pub fn equal_degree<R: Rng>(g: &BitPoly, k: usize, rng: &mut R) -> Result<Vec<BitPoly>> {
    let n = g.degree().expect("nonzero input");
    if n == k {
        return Ok(vec![g.clone()]);
    }
    debug_assert_eq!(n % k, 0);
    let table = SquareModTable::new(g);
    for _ in 0..TRACE_RETRY_CAP {
        let a = random_below(n, rng);
        // Absolute trace a + a^2 + ... + a^(2^(k-1)) mod g.
        let mut t = a.clone();
        let mut s = a;
        for _ in 1..k {
            s = table.square(&s);
            t.add_assign(&s);
        }
        let d = t.gcd(g);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && dd < n {
            let e = g.div_exact(&d).unwrap();
            let mut left = equal_degree(&d, k, rng)?;
            left.extend(equal_degree(&e, k, rng)?);
            return Ok(left);
        }
    }
    Err(Error::TraceSplitFailed(TRACE_RETRY_CAP))
}

fn random_below<R: Rng>(n: usize, rng: &mut R) -> BitPoly {
    let nw = n.div_ceil(64);
    let words: Vec<u64> = (0..nw).map(|_| rng.gen()).collect();
    BitPoly::from_words(words).truncate(n)
}

/// Irreducible factors with multiplicities, sorted by `(degree, bit pattern)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub factors: Vec<(BitPoly, u32)>,
}

impl Factorization {
    /// Factor degrees, repeated by multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (p, m) in &self.factors {
            for _ in 0..*m {
                out.push(p.degree().unwrap());
            }
        }
        out.sort_unstable();
        out
    }

    pub fn product(&self) -> BitPoly {
        self.factors.iter().fold(BitPoly::one(), |acc, (p, m)| acc.mul(&p.pow(*m)))
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }
}

/// Complete factorization with a fixed internal seed; the output is canonical.
pub fn factor(f: &BitPoly) -> Result<Factorization> {
    factor_seeded(f, 0x7c1a_b5ee_d000_0001)
}

pub fn factor_seeded(f: &BitPoly, seed: u64) -> Result<Factorization> {
    let n = f.degree().expect("factor of the zero polynomial");
    assert!(n >= 1, "factor of a constant");
    let mut factors: Vec<(BitPoly, u32)> = Vec::new();
    for (part, mult) in squarefree_decompose(f) {
        let classes = distinct_degree(&part);
        let split: Vec<Result<Vec<BitPoly>>> = classes
            .par_iter()
            .map(|(k, g)| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (*k as u64).wrapping_mul(0x9e37_79b9));
                equal_degree(g, *k, &mut rng)
            })
            .collect();
        for s in split {
            factors.extend(s?.into_iter().map(|p| (p, mult)));
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Factorization { factors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BitPoly {
        BitPoly::parse(s).unwrap()
    }

    #[test]
    fn irreducibility_small() {
        assert!(is_irreducible(&p("1")));
        assert!(is_irreducible(&p("1,0")));
        assert!(is_irreducible(&p("2,1,0")));
        assert!(!is_irreducible(&p("2,0")));
        assert!(is_irreducible(&p("13,4,3,1,0")));
        assert!(!is_irreducible(&p("4,2,0")));
        assert!(!is_irreducible(&BitPoly::one()));
        // Brute force over all polynomials of degree <= 9.
        let mut irr = Vec::<BitPoly>::new();
        for bits in 2u64..1024 {
            let f = BitPoly::from_words([bits]);
            let n = f.degree().unwrap();
            let has_factor = irr
                .iter()
                .filter(|g| 2 * g.degree().unwrap() <= n)
                .any(|g| f.rem(g).unwrap().is_zero());
            assert_eq!(is_irreducible(&f), !has_factor, "{f}");
            if !has_factor {
                irr.push(f);
            }
        }
    }

    #[test]
    fn square_table_matches_plain_squaring() {
        let f = p("97,6,0");
        let t = SquareModTable::new(&f);
        let a = p("96,50,49,3,1");
        assert_eq!(t.square(&a), a.square().rem(&f).unwrap());
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_decompose(&p("2,0")), vec![(p("1,0"), 2)]);
        let f = p("5,2,0");
        assert_eq!(squarefree_decompose(&f), vec![(f.clone(), 1)]);
        let c = p("2,1,0").pow(3);
        assert_eq!(squarefree_decompose(&c), vec![(p("2,1,0"), 3)]);
    }

    #[test]
    fn factor_small() {
        let fz = factor(&p("2,1")).unwrap();
        assert_eq!(fz.factors, vec![(p("1"), 1), (p("1,0"), 1)]);
        let f = p("1,0").pow(5).mul(&p("3,1,0").pow(2)).mul(&p("3,2,0")).mul(&p("4,1,0"));
        let fz = factor(&f).unwrap();
        assert_eq!(fz.product(), f);
        assert_eq!(fz.degrees(), vec![1, 1, 1, 1, 1, 3, 3, 3, 4]);
    }
}
