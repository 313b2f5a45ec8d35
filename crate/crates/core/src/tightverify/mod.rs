//! Executable checks for both halves of the localization counterexample:
//! `v = x y f^Q` is not in `h_a O` for escape-time witnesses `a`, and
//! `y f^Q` lies in `(x^{4Q}, y^{4Q}, z^{4Q}, h_t)` over the generic fiber.
//!
//! Here `f = y^3 z^3`, `Q = 2^{2l-1}` and `O = F[x,y,z]/(x^{4Q}, y^{4Q}, z^{4Q})`.

mod membership;
mod tmap;

use rayon::prelude::*;
use serde::Serialize;

pub use membership::{
    containment_generic, direct_membership, negative_control, noncontainment, ContainmentReport, DirectReport,
    NoncontainmentReport, DIRECT_MAX_ELL,
};
pub use tmap::{a_matrix, invariance, nullity, partners, t_matrix, t_star, InvarianceCheck, MapKind, TMap};

use crate::binaryfield::{FieldCtx, FieldElem};
use crate::dynamics::{escape_time, gn_hn, least_root};
use crate::error::{Error, Result};
use crate::gflinalg::GFMatrix;
use crate::parity::binom_odd;
use crate::trivarring::{
    check_q, h_poly, w0_generators, w_generators, wprime_generators, BracketCache, BracketSpec, Generator, GradedBasis,
    Mono, TriPoly,
};
use crate::unipoly::factor;

/// A finite-escape element with its `Q`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub ell: u32,
    pub q: u64,
    pub alpha: FieldElem,
}

/// `G_l` is factored to pick canonical witnesses; keep it cheap.
pub const CANONICAL_MAX_ELL: u32 = 5;

impl Witness {
    /// Checks that `alpha` has escape time exactly `ell`.
    pub fn new(ell: u32, alpha: FieldElem) -> Result<Self> {
        if ell == 0 || ell > 31 {
            return Err(Error::TooLarge(format!("escape time {ell}")));
        }
        let got = escape_time(&alpha).result;
        if got.finite() != Some(u64::from(ell)) {
            return Err(Error::CrossCheckMismatch(format!("alpha = {alpha} has escape {got:?}, expected {ell}")));
        }
        Ok(Self { ell, q: 1 << (2 * ell - 1), alpha })
    }

    /// Least root of the lowest-degree irreducible factor of `G_l`
    /// (ties broken by the factor's bit pattern).
    pub fn canonical(ell: u32) -> Result<Self> {
        if ell == 0 || ell > CANONICAL_MAX_ELL {
            return Err(Error::TooLarge(format!("canonical witness for l = {ell}")));
        }
        let (g, _) = gn_hn(ell);
        let fz = factor(&g)?;
        let p = fz
            .factors
            .iter()
            .map(|(p, _)| p)
            .min_by(|a, b| a.degree().cmp(&b.degree()).then(a.cmp_bits(b)))
            .expect("G_l is not constant");
        let (_, alpha) = least_root(p)?;
        Self::new(ell, alpha)
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.alpha.ctx()
    }
}

fn bound_of(q: u64) -> u32 {
    u32::try_from(4 * q).expect("Q fits in u32")
}

/// `v = x y^{3Q+1} z^{3Q}`.
pub fn v_poly(q: u64, ctx: &FieldCtx) -> TriPoly {
    let e = u32::try_from(3 * q).expect("Q fits in u32");
    TriPoly::monomial(&ctx.one(), Mono::new(1, e + 1, e))
}

/// `(xyz)^{4Q-1}`, the socle monomial.
fn socle(q: u64) -> Mono {
    let e = bound_of(q) - 1;
    Mono::new(e, e, e)
}

/// `x^{4Q-2} y^{Q-2} z^{Q-1}`, the only partner of `v` in the socle.
fn partner_mono(q: u64) -> [u32; 3] {
    let q = q as u32;
    [4 * q - 2, q - 2, q - 1]
}

/// Parity of the coefficient of `x^X y^Y z^Z` in `A_x^p A_y^r z^k`, by Lucas.
///
/// Terms are `C(p,a) C(r,b) x^{2a+r-b} y^{p-a+2b} z^{p-a+r-b+k}`; at most one
/// `(a, b)` hits a given monomial.
pub fn axay_coeff_odd(p: u64, r: u64, k: u64, target: [u32; 3]) -> bool {
    let [x, y, z] = target.map(i64::from);
    let (p, r, k) = (p as i64, r as i64, k as i64);
    let (u, w) = (x - r, y - p);
    let (a3, b3) = (2 * u + w, u + 2 * w);
    if a3 % 3 != 0 || b3 % 3 != 0 {
        return false;
    }
    let (a, b) = (a3 / 3, b3 / 3);
    if !(0..=p).contains(&a) || !(0..=r).contains(&b) || p - a + r - b + k != z {
        return false;
    }
    binom_odd(p as u64, a as u64) && binom_odd(r as u64, b as u64)
}

/// Same for `[i, j] z^k`.
pub fn bracket_coeff_odd(s: &BracketSpec, target: [u32; 3]) -> bool {
    axay_coeff_odd(s.i, s.j, s.k, target) ^ axay_coeff_odd(s.j, s.i, s.k, target)
}

/// `c` in `v u_i = c (xyz)^{4Q-1}`, three ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VTimesU {
    pub i: u64,
    /// From the truncated product `v * u_i`.
    pub product: String,
    /// Coefficient of the partner monomial in `u_i`.
    pub coefficient: String,
    /// Lucas parity of that coefficient.
    pub lucas: bool,
    #[serde(skip)]
    pub value: FieldElem,
}

fn cache_for(ctx: &FieldCtx, q: u64) -> BracketCache {
    BracketCache::new(ctx, bound_of(q), (2 * q) as usize)
}

fn v_times_ui_with(cache: &BracketCache, q: u64, i: u64) -> Result<VTimesU> {
    let ctx = cache.ctx();
    if i.is_multiple_of(2) || i >= q {
        return Err(Error::BadIndex { q, index: i });
    }
    let spec = BracketSpec { i: q - i - 1, j: 2 * q - 1, k: 2 * i - 1, q };
    let u = cache.bracket_z(spec.i, spec.j, spec.k);
    let prod = v_poly(q, ctx).tmul(&u, Some(bound_of(q)))?;
    let s = socle(q);
    let product = prod.coeff(s.triple());
    if prod.len() > usize::from(!product.is_zero()) {
        return Err(Error::CrossCheckMismatch(format!("v u_{i} has terms off the socle")));
    }
    let coefficient = u.coeff(partner_mono(q));
    let lucas = bracket_coeff_odd(&spec, partner_mono(q));
    if product != coefficient || coefficient.is_one() != lucas || !(coefficient.is_zero() || coefficient.is_one()) {
        return Err(Error::CrossCheckMismatch(format!(
            "v u_{i}: product {product}, coefficient {coefficient}, lucas {lucas}"
        )));
    }
    Ok(VTimesU { i, product: product.to_string(), coefficient: coefficient.to_string(), lucas, value: product })
}

/// `c` with `v u_i = c (xyz)^{4Q-1}`, cross-checked three ways.
pub fn v_times_ui(q: u64, i: u64, ctx: &FieldCtx) -> Result<FieldElem> {
    check_q(q)?;
    Ok(v_times_ui_with(&cache_for(ctx, q), q, i)?.value)
}

/// All odd `i` at once.
pub fn v_times_u_all(q: u64, ctx: &FieldCtx) -> Result<Vec<VTimesU>> {
    check_q(q)?;
    let cache = cache_for(ctx, q);
    (1..q).step_by(2).collect::<Vec<_>>().into_par_iter().map(|i| v_times_ui_with(&cache, q, i)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct W0Report {
    pub q: u64,
    pub generators: usize,
    /// Generators with `v g != 0`.
    pub not_annihilated: Vec<BracketSpec>,
    /// Generators where the Lucas prediction disagrees with the product.
    pub lucas_mismatches: Vec<BracketSpec>,
}

impl W0Report {
    pub fn passes(&self) -> bool {
        self.not_annihilated.is_empty() && self.lucas_mismatches.is_empty()
    }
}

/// Checks `v g = 0` for every generator `g` of `W_0`.
pub fn v_annihilates_w0(q: u64, ctx: &FieldCtx) -> Result<W0Report> {
    let gens = w0_generators(q)?;
    let cache = cache_for(ctx, q);
    let v = v_poly(q, ctx);
    let target = partner_mono(q);
    let s = socle(q);
    let results: Vec<(BracketSpec, bool, bool)> = gens
        .par_iter()
        .map(|g| {
            let prod = v.tmul(&cache.generator(g), Some(bound_of(q))).expect("same field");
            let nonzero = !prod.is_zero();
            let predicted = bracket_coeff_odd(&g.spec, target);
            let mismatch = predicted != prod.coeff(s.triple()).is_one() || prod.len() > 1;
            (g.spec, nonzero, mismatch)
        })
        .collect();
    Ok(W0Report {
        q,
        generators: gens.len(),
        not_annihilated: results.iter().filter(|r| r.1).map(|r| r.0).collect(),
        lucas_mismatches: results.iter().filter(|r| r.2).map(|r| r.0).collect(),
    })
}

fn coordinate_rows(basis: &GradedBasis, polys: &[TriPoly], ctx: &FieldCtx) -> Result<GFMatrix> {
    let mut m = GFMatrix::zeros(ctx, polys.len(), basis.len());
    for (r, p) in polys.iter().enumerate() {
        for (c, v) in basis.to_bits(p)?.iter().enumerate() {
            if !v.is_zero() {
                m.set_bits(r, c, v);
            }
        }
    }
    Ok(m)
}

fn generator_polys(cache: &BracketCache, gens: &[Generator]) -> Vec<TriPoly> {
    gens.par_iter().map(|g| cache.generator(g)).collect()
}

fn stack(a: &GFMatrix, b: &GFMatrix) -> GFMatrix {
    let mut m = GFMatrix::zeros(a.ctx(), a.rows() + b.rows(), a.cols());
    for (off, src) in [(0, a), (a.rows(), b)] {
        for r in 0..src.rows() {
            for c in 0..src.cols() {
                let e = src.get_bits(r, c);
                if !e.is_zero() {
                    m.set_bits(off + r, c, &e);
                }
            }
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub q: u64,
    pub w_generators: usize,
    pub wprime_rank: usize,
    pub combined_rank: usize,
}

impl SpanReport {
    /// `h_a W` adds nothing to the span of `W'`.
    pub fn contained(&self) -> bool {
        self.wprime_rank == self.combined_rank
    }
}

/// `h_a W` inside `span W'`, by comparing ranks in `O_{6Q-1}`.
pub fn span_check(q: u64, alpha: &FieldElem) -> Result<SpanReport> {
    let ctx = alpha.ctx();
    let cache = cache_for(ctx, q);
    let basis = GradedBasis::new((6 * q - 1) as u32, bound_of(q));
    let wp = generator_polys(&cache, &wprime_generators(q)?);
    let h = h_poly(alpha);
    let w_gens = w_generators(q)?;
    let hw: Vec<TriPoly> =
        generator_polys(&cache, &w_gens).par_iter().map(|g| h.tmul(g, Some(bound_of(q))).expect("same field")).collect();
    let wm = coordinate_rows(&basis, &wp, ctx)?;
    let hm = coordinate_rows(&basis, &hw, ctx)?;
    Ok(SpanReport { q, w_generators: w_gens.len(), wprime_rank: wm.rank(), combined_rank: stack(&wm, &hm).rank() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisReport {
    pub q: u64,
    pub w_rank: usize,
    pub w0_rank: usize,
    pub u_count: usize,
}

impl BasisReport {
    /// The `u_i` are independent modulo `W_0` and fill out `W`.
    pub fn holds(&self) -> bool {
        self.w_rank == self.w0_rank + self.u_count
    }
}

/// The `u_i` extend a basis of `W_0` to one of `W`. Everything is over F_2.
pub fn basis_claim(q: u64) -> Result<BasisReport> {
    let f2 = FieldCtx::f2();
    let cache = cache_for(&f2, q);
    let basis = GradedBasis::new((6 * q - 5) as u32, bound_of(q));
    let w0 = coordinate_rows(&basis, &generator_polys(&cache, &w0_generators(q)?), &f2)?;
    let us: Vec<TriPoly> = (1..q).step_by(2).map(|i| cache.bracket_z(q - i - 1, 2 * q - 1, 2 * i - 1)).collect();
    let um = coordinate_rows(&basis, &us, &f2)?;
    let w = stack(&w0, &um);
    // The u_i are exactly the W generators left out of W_0.
    let all = w_generators(q)?.len();
    let w_rank = w.rank();
    if all != w0.rows() + um.rows() {
        return Err(Error::CrossCheckMismatch(format!("{all} W generators, {} + {} split", w0.rows(), um.rows())));
    }
    Ok(BasisReport { q, w_rank, w0_rank: w0.rank(), u_count: us.len() })
}
