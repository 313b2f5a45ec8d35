//! Hilbert–Kunz values `e_n(R_a) = dim F[x,y,z]/(x^B, y^B, z^B, h_a)` with
//! `B = 2^n`, computed as `B^3` minus the ranks of multiplication by `h_a`
//! between graded pieces.
//!
//! `h_a` is homogeneous of degree 4 and every monomial of it has
//! `e_x + 2 e_y = 0 mod 3`, so each degree block splits further into three
//! independent blocks by that residue.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::binaryfield::{presets, FieldCtx, FieldElem};
use crate::dynamics::{escape_time, Escape};
use crate::error::{Error, Result};
use crate::gflinalg::{GFMatrix, PolyMatrix};
use crate::trivarring::{h_poly, GradedBasis, Mono, TriPoly};
use crate::unipoly::BitPoly;

/// Largest `n` accepted (`B^3 = 2^{3n}` monomials).
pub const MAX_N: u32 = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockRank {
    /// Codomain degree.
    pub degree: u32,
    pub class: Option<u32>,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HKResult {
    pub n: u32,
    pub alpha: String,
    pub field: String,
    pub e_n: u64,
    pub formula_value: u64,
    pub total_rank: u64,
    pub blocks: Vec<BlockRank>,
    #[serde(skip)]
    pub wall_ms: f64,
}

impl HKResult {
    pub fn matches_formula(&self) -> bool {
        self.e_n == self.formula_value
    }
}

/// `3 * 4^n - 4`.
pub fn formula(n: u32) -> u64 {
    3 * 4u64.pow(n) - 4
}

/// Matrix of `u -> p u` from `dom` to `cod` (rows indexed by `cod`).
/// Products leaving the truncation or landing outside `cod` are dropped,
/// which is right when `cod` is a whole graded piece or a full residue block.
pub fn mult_matrix(p: &TriPoly, dom: &GradedBasis, cod: &GradedBasis) -> GFMatrix {
    let mut m = GFMatrix::zeros(p.ctx(), cod.len(), dom.len());
    let terms: Vec<(Mono, BitPoly)> = p.raw_terms().map(|(m, c)| (*m, c.clone())).collect();
    for (col, mono) in dom.monos().iter().enumerate() {
        for (t, c) in &terms {
            let prod = mono.mul(*t);
            if let Some(row) = cod.index_of(prod) {
                m.add_bits(row, col, c);
            }
        }
    }
    m
}

/// Same as [`mult_matrix`] for `h_t = t z^4 + A_x A_y` with `t` left symbolic.
pub fn h_t_poly_matrix(dom: &GradedBasis, cod: &GradedBasis) -> PolyMatrix {
    let f2 = FieldCtx::f2();
    let h1 = h_poly(&f2.one());
    let z4 = Mono::new(0, 0, 4);
    let mut m = PolyMatrix::zeros(cod.len(), dom.len());
    for (col, mono) in dom.monos().iter().enumerate() {
        for (t, _) in h1.raw_terms() {
            if let Some(row) = cod.index_of(mono.mul(*t)) {
                let c = if *t == z4 { BitPoly::w() } else { BitPoly::one() };
                m.add_at(row, col, &c);
            }
        }
    }
    m
}

fn check_n(n: u32) -> Result<u32> {
    if n == 0 {
        return Err(Error::DimensionMismatch("n must be at least 1".into()));
    }
    if n > MAX_N {
        return Err(Error::TooLarge(format!("n = {n} exceeds {MAX_N}")));
    }
    Ok(1 << n)
}

/// Common residue class of all terms, if any.
fn class_of(p: &TriPoly) -> Option<u32> {
    let mut classes = p.raw_terms().map(|(m, _)| m.class3());
    let first = classes.next()?;
    classes.all(|c| c == first).then_some(first)
}

/// `e_n` for an arbitrary homogeneous quartic `p`.
pub fn en_poly(n: u32, p: &TriPoly) -> Result<HKResult> {
    let b = check_n(n)?;
    if p.homogeneous_degree()? != Some(4) {
        return Err(Error::DegreeMismatch { expected: 4, found: p.homogeneous_degree()?.unwrap_or(0) as usize });
    }
    let start = Instant::now();
    let shift = class_of(p);
    let top = 3 * (b - 1);
    let jobs: Vec<(u32, Option<u32>)> = (4..=top)
        .flat_map(|d| match shift {
            Some(_) => (0..3).map(|c| (d, Some(c))).collect::<Vec<_>>(),
            None => vec![(d, None)],
        })
        .collect();
    let blocks: Vec<BlockRank> = jobs
        .into_par_iter()
        .map(|(d, class)| {
            let (dom, cod) = match (class, shift) {
                (Some(c), Some(s)) => {
                    (GradedBasis::with_class(d - 4, b, (c + 3 - s) % 3), GradedBasis::with_class(d, b, c))
                }
                _ => (GradedBasis::new(d - 4, b), GradedBasis::new(d, b)),
            };
            let rank = if dom.is_empty() || cod.is_empty() { 0 } else { mult_matrix(p, &dom, &cod).rank() };
            BlockRank { degree: d, class, rows: cod.len(), cols: dom.len(), rank }
        })
        .collect();
    let total_rank: u64 = blocks.iter().map(|b| b.rank as u64).sum();
    let total = u64::from(b).pow(3);
    Ok(HKResult {
        n,
        alpha: "-".into(),
        field: p.ctx().spec(),
        e_n: total - total_rank,
        formula_value: formula(n),
        total_rank,
        blocks,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// `e_n(R_a)`.
pub fn en(n: u32, alpha: &FieldElem) -> Result<HKResult> {
    let mut r = en_poly(n, &h_poly(alpha))?;
    r.alpha = alpha.to_string();
    Ok(r)
}

/// Oracle: one matrix for all of `F[x,y,z]/(x^B,y^B,z^B)` with no blocking.
pub fn en_full(n: u32, p: &TriPoly) -> Result<u64> {
    let b = check_n(n)?;
    if n > 3 {
        return Err(Error::TooLarge("full-matrix oracle is limited to n <= 3".into()));
    }
    let monos: Vec<Mono> = (0..b)
        .flat_map(|x| (0..b).flat_map(move |y| (0..b).map(move |z| Mono::new(x, y, z))))
        .collect();
    let index: std::collections::HashMap<Mono, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut m = GFMatrix::zeros(p.ctx(), monos.len(), monos.len());
    for (col, mono) in monos.iter().enumerate() {
        for (t, c) in p.raw_terms() {
            if let Some(&row) = index.get(&mono.mul(*t)) {
                m.add_bits(row, col, c);
            }
        }
    }
    Ok(u64::from(b).pow(3) - m.rank() as u64)
}

#[derive(Clone, Debug, Serialize)]
pub struct HKGeneric {
    pub n: u32,
    pub e_n: u64,
    pub formula_value: u64,
    pub agree: bool,
    pub matches: bool,
    pub points: Vec<HKResult>,
}

/// Rejects points whose escape time is finite.
pub fn check_generic_point(alpha: &FieldElem) -> Result<()> {
    match escape_time(alpha).result {
        Escape::Finite { steps } => Err(Error::BadPoint(steps)),
        _ => Ok(()),
    }
}

/// `e_n` at each point, all of which must have infinite escape time.
pub fn en_generic(n: u32, points: &[FieldElem]) -> Result<HKGeneric> {
    for p in points {
        check_generic_point(p)?;
    }
    let results: Vec<HKResult> = points.iter().map(|p| en(n, p)).collect::<Result<_>>()?;
    let e_n = results.iter().map(|r| r.e_n).max().unwrap_or(0);
    let agree = results.windows(2).all(|w| w[0].e_n == w[1].e_n);
    Ok(HKGeneric { n, e_n, formula_value: formula(n), agree, matches: agree && e_n == formula(n), points: results })
}

/// The field random generic points are drawn from.
pub fn generic_field() -> FieldCtx {
    presets::preset("hk-d16").expect("preset exists")
}

/// `k` distinct nonzero points of infinite escape time, by rejection.
pub fn generic_points<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<FieldElem> {
    let ctx = generic_field();
    let mut out: Vec<FieldElem> = Vec::with_capacity(k);
    while out.len() < k {
        let a = ctx.random(rng);
        if !a.is_zero() && !out.contains(&a) && check_generic_point(&a).is_ok() {
            out.push(a);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binaryfield::presets::preset;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn formula_values() {
        let v: Vec<u64> = (1..=5).map(formula).collect();
        assert_eq!(v, [8, 44, 188, 764, 3068]);
    }

    #[test]
    fn generic_small_n() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let pts = generic_points(&mut rng, 2);
        for n in 1..=4 {
            let g = en_generic(n, &pts).unwrap();
            assert!(g.matches, "n = {n}: {:?}", g.points.iter().map(|r| r.e_n).collect::<Vec<_>>());
            for r in &g.points {
                let s: u64 = r.blocks.iter().map(|b| b.rank as u64).sum();
                assert_eq!(s, 8u64.pow(n) - r.e_n);
            }
        }
    }

    #[test]
    fn finite_escape_point_rejected() {
        let f2 = FieldCtx::f2();
        assert_eq!(en_generic(1, &[f2.one()]).unwrap_err(), Error::BadPoint(1));
    }

    #[test]
    fn blocked_equals_full() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let k = preset("t2-d5").unwrap();
        let mut alphas = vec![FieldCtx::f2().one(), k.generator(), k.zero()];
        alphas.extend((0..3).map(|_| k.random(&mut rng)));
        for a in &alphas {
            let h = h_poly(a);
            for n in 1..=3 {
                assert_eq!(en(n, a).unwrap().e_n, en_full(n, &h).unwrap(), "alpha = {a}, n = {n}");
            }
        }
    }

    #[test]
    fn swap_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let k = preset("t2-d7").unwrap();
        let a = k.random(&mut rng);
        let h = h_poly(&a);
        assert_eq!(h.swap_xy(), h);
        // A non-symmetric quartic exercises the permuted bases for real.
        let mut p = TriPoly::zero(&k);
        for m in GradedBasis::new(4, 8).monos() {
            if rng.gen_bool(0.4) {
                p.add_term(*m, k.random(&mut rng).bits());
            }
        }
        p.add_term(Mono::new(4, 0, 0), &BitPoly::one());
        assert_ne!(p.swap_xy(), p);
        for n in 1..=3 {
            let e = en_poly(n, &p).unwrap().e_n;
            assert_eq!(e, en_poly(n, &p.swap_xy()).unwrap().e_n);
            assert_eq!(e, en_full(n, &p).unwrap());
            assert_eq!(en(n, &a).unwrap().e_n, en_poly(n, &h.swap_xy()).unwrap().e_n);
        }
    }

    #[test]
    fn alpha_one_is_data() {
        // Escape time 1; values are recorded, not predicted.
        let one = FieldCtx::f2().one();
        let blocked: Vec<u64> = (1..=3).map(|n| en(n, &one).unwrap().e_n).collect();
        let full: Vec<u64> = (1..=3).map(|n| en_full(n, &h_poly(&one)).unwrap()).collect();
        assert_eq!(blocked, full);
    }
}
