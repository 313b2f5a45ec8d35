//! Exact dense linear algebra over F_{2^d}.
//!
//! Rows are bitsliced: a row of an `r x c` matrix over F_{2^d} is `d` bit
//! planes of `ceil(c/64)` words, plane `k` holding the `a^k` coordinate of
//! every entry. Adding rows is word XOR; multiplying a row by `a` is a plane
//! shift plus one reduction by the modulus. Over F_2 this degenerates to the
//! usual packed XOR elimination.

mod poly;
pub mod reference;

use rayon::prelude::*;

pub use poly::{sample_points, GenericRank, PolyMatrix};

use crate::binaryfield::{FieldCtx, FieldElem};
use crate::error::{Error, Result};
use crate::unipoly::BitPoly;

/// Rows above this count are eliminated in parallel.
const PAR_ROWS: usize = 256;

#[derive(Clone, PartialEq, Eq)]
pub struct GFMatrix {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    d: usize,
    wpr: usize,
    data: Vec<u64>,
}

/// Answer of [`GFMatrix::in_image`] with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `M x = b`.
    InImage { preimage: Vec<FieldElem> },
    /// `phi M = 0` and `phi b != 0`.
    NotInImage { functional: Vec<FieldElem> },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::InImage { .. })
    }
}

impl GFMatrix {
    pub fn zeros(ctx: &FieldCtx, rows: usize, cols: usize) -> Self {
        let d = ctx.degree();
        let wpr = cols.div_ceil(64);
        Self { ctx: ctx.clone(), rows, cols, d, wpr, data: vec![0; rows * d * wpr] }
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set_bits(i, i, &BitPoly::one());
        }
        m
    }

    pub fn from_rows(ctx: &FieldCtx, rows: &[Vec<FieldElem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(ctx, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for (c, e) in row.iter().enumerate() {
                m.set(r, c, e)?;
            }
        }
        Ok(m)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn row_len(&self) -> usize {
        self.d * self.wpr
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.row_len()..(r + 1) * self.row_len()]
    }

    pub fn get_bits(&self, r: usize, c: usize) -> BitPoly {
        entry_bits(self.row(r), self.wpr, self.d, c)
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.ctx.elem(self.get_bits(r, c))
    }

    pub(crate) fn set_bits(&mut self, r: usize, c: usize, v: &BitPoly) {
        let (wpr, rl) = (self.wpr, self.row_len());
        let row = &mut self.data[r * rl..(r + 1) * rl];
        let (w, b) = (c / 64, c % 64);
        for k in 0..self.d {
            let word = &mut row[k * wpr + w];
            *word = (*word & !(1u64 << b)) | (u64::from(v.coeff(k)) << b);
        }
    }

    /// Adds `v` to the entry at `(r, c)`.
    pub(crate) fn add_bits(&mut self, r: usize, c: usize, v: &BitPoly) {
        let (wpr, rl) = (self.wpr, self.row_len());
        let row = &mut self.data[r * rl..(r + 1) * rl];
        for k in v.exponents() {
            row[k * wpr + c / 64] ^= 1u64 << (c % 64);
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: &FieldElem) -> Result<()> {
        if v.ctx() != &self.ctx {
            return Err(Error::CtxMismatch);
        }
        self.set_bits(r, c, v.bits());
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.ctx, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = self.get_bits(r, c);
                if !e.is_zero() {
                    t.set_bits(c, r, &e);
                }
            }
        }
        t
    }

    fn check_vec(&self, v: &[FieldElem], len: usize) -> Result<()> {
        if v.len() != len {
            return Err(Error::DimensionMismatch(format!("vector of length {} against {len}", v.len())));
        }
        if v.iter().any(|e| e.ctx() != &self.ctx) {
            return Err(Error::CtxMismatch);
        }
        Ok(())
    }

    /// `M x`.
    pub fn mul_vec(&self, x: &[FieldElem]) -> Result<Vec<FieldElem>> {
        self.check_vec(x, self.cols)?;
        Ok((0..self.rows)
            .into_par_iter()
            .map(|r| {
                let mut acc = BitPoly::zero();
                for (c, xc) in x.iter().enumerate() {
                    if !xc.is_zero() {
                        let e = self.get_bits(r, c);
                        if !e.is_zero() {
                            acc.add_assign(&e.mul(xc.bits()));
                        }
                    }
                }
                self.ctx.elem(acc)
            })
            .collect())
    }

    /// `phi M` for a row vector `phi`.
    pub fn vec_mul(&self, phi: &[FieldElem]) -> Result<Vec<FieldElem>> {
        self.check_vec(phi, self.rows)?;
        let mut acc = vec![0u64; self.row_len()];
        for (r, p) in phi.iter().enumerate() {
            if !p.is_zero() {
                let scaled = scale_row(self.row(r), p.bits(), &self.ctx, self.wpr);
                xor_into(&mut acc, &scaled);
            }
        }
        Ok((0..self.cols).map(|c| self.ctx.elem(entry_bits(&acc, self.wpr, self.d, c))).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::CtxMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Self::zeros(&self.ctx, self.rows, other.cols);
        let rl = out.row_len();
        out.data.par_chunks_mut(rl.max(1)).enumerate().for_each(|(r, dst)| {
            for c in 0..self.cols {
                let e = self.get_bits(r, c);
                if !e.is_zero() {
                    xor_into(dst, &scale_row(other.row(c), &e, &self.ctx, other.wpr));
                }
            }
        });
        Ok(out)
    }

    /// Reduced row echelon form in place, pivots chosen only in columns
    /// `< pivot_limit`. Returns the pivot column of each nonzero row.
    fn rref_limited(&mut self, pivot_limit: usize, full: bool) -> Vec<usize> {
        let (rl, wpr, d) = (self.row_len(), self.wpr, self.d);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_limit {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&p| entry_nonzero(self.row(p), wpr, d, c)) else { continue };
            if p != r {
                let (a, b) = self.data.split_at_mut(p * rl);
                a[r * rl..(r + 1) * rl].swap_with_slice(&mut b[..rl]);
            }
            let inv = self.ctx.elem(self.get_bits(r, c)).inv().expect("pivot is nonzero");
            let normalized = scale_row(self.row(r), inv.bits(), &self.ctx, wpr);
            self.data[r * rl..(r + 1) * rl].copy_from_slice(&normalized);
            let mults = alpha_multiples(&normalized, &self.ctx, wpr);
            let start = c / 64;
            let eliminate = |(i, row): (usize, &mut [u64])| {
                if i == r || (!full && i < r) {
                    return;
                }
                let e = entry_bits(row, wpr, d, c);
                if e.is_zero() {
                    return;
                }
                for k in e.exponents() {
                    for plane in 0..d {
                        let dst = &mut row[plane * wpr + start..(plane + 1) * wpr];
                        let src = &mults[k][plane * wpr + start..(plane + 1) * wpr];
                        for (x, y) in dst.iter_mut().zip(src) {
                            *x ^= y;
                        }
                    }
                }
            };
            if self.rows >= PAR_ROWS {
                self.data.par_chunks_mut(rl).enumerate().for_each(eliminate);
            } else {
                self.data.chunks_mut(rl).enumerate().for_each(eliminate);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Eliminating the shorter side is cheaper.
        let mut m = if self.rows > 2 * self.cols { self.transpose() } else { self.clone() };
        let limit = m.cols;
        m.rref_limited(limit, false).len()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_limited(self.cols, true);
        (m, p)
    }

    /// Basis of `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<FieldElem>> {
        let (m, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = vec![self.ctx.zero(); self.cols];
                x[f] = self.ctx.one();
                for (i, &c) in pivots.iter().enumerate() {
                    x[c] = m.get(i, f);
                }
                x
            })
            .collect()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Some `x` with `M x = b`, or `None`.
    pub fn solve(&self, b: &[FieldElem]) -> Result<Option<Vec<FieldElem>>> {
        Ok(match self.in_image(b)? {
            Membership::InImage { preimage } => Some(preimage),
            Membership::NotInImage { .. } => None,
        })
    }

    /// Decides `b in col(M)` with a certificate either way.
    #[allow(clippy::needless_range_loop)]
    pub fn in_image(&self, b: &[FieldElem]) -> Result<Membership> {
        self.check_vec(b, self.rows)?;
        let (n, m) = (self.cols, self.rows);
        // [M | b | I]
        let mut aug = Self::zeros(&self.ctx, m, n + 1 + m);
        for r in 0..m {
            for c in 0..n {
                let e = self.get_bits(r, c);
                if !e.is_zero() {
                    aug.set_bits(r, c, &e);
                }
            }
            aug.set_bits(r, n, b[r].bits());
            aug.set_bits(r, n + 1 + r, &BitPoly::one());
        }
        let pivots = aug.rref_limited(n + 1, true);
        if let Some(row) = pivots.iter().position(|&c| c == n) {
            let functional = (0..m).map(|j| aug.get(row, n + 1 + j)).collect();
            return Ok(Membership::NotInImage { functional });
        }
        let mut x = vec![self.ctx.zero(); n];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(i, n);
        }
        Ok(Membership::InImage { preimage: x })
    }

    /// Re-checks a membership certificate against this matrix and `b`.
    pub fn verify_membership(&self, b: &[FieldElem], cert: &Membership) -> Result<bool> {
        Ok(match cert {
            Membership::InImage { preimage } => self.mul_vec(preimage)? == b,
            Membership::NotInImage { functional } => {
                let zero = self.vec_mul(functional)?.iter().all(FieldElem::is_zero);
                let pb = functional.iter().zip(b).fold(self.ctx.zero(), |acc, (p, x)| &acc + &(p * x));
                zero && !pb.is_zero()
            }
        })
    }
}

impl std::fmt::Debug for GFMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "GFMatrix {}x{} over {}", self.rows, self.cols, self.ctx.spec())?;
        for r in 0..self.rows.min(16) {
            let row: Vec<String> = (0..self.cols.min(16)).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn entry_bits(row: &[u64], wpr: usize, d: usize, c: usize) -> BitPoly {
    let (w, b) = (c / 64, c % 64);
    let mut bits = 0u128;
    for k in 0..d.min(128) {
        bits |= u128::from((row[k * wpr + w] >> b) & 1) << k;
    }
    if d <= 128 {
        return BitPoly::from_u128(bits);
    }
    let exps: Vec<usize> = (0..d).filter(|&k| (row[k * wpr + w] >> b) & 1 == 1).collect();
    BitPoly::from_exponents(&exps)
}

fn entry_nonzero(row: &[u64], wpr: usize, d: usize, c: usize) -> bool {
    let (w, b) = (c / 64, c % 64);
    (0..d).any(|k| (row[k * wpr + w] >> b) & 1 == 1)
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (x, y) in dst.iter_mut().zip(src) {
        *x ^= y;
    }
}

/// `a * row`: shift planes up by one and fold the top plane back with the modulus.
fn times_alpha(row: &[u64], ctx: &FieldCtx, wpr: usize) -> Vec<u64> {
    let d = ctx.degree();
    let mut out = vec![0u64; row.len()];
    out[wpr..].copy_from_slice(&row[..(d - 1) * wpr]);
    let top = &row[(d - 1) * wpr..];
    for e in ctx.modulus().exponents() {
        if e < d {
            xor_into(&mut out[e * wpr..(e + 1) * wpr], top);
        }
    }
    out
}

/// `[row, a row, ..., a^{d-1} row]`.
fn alpha_multiples(row: &[u64], ctx: &FieldCtx, wpr: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::with_capacity(ctx.degree());
    out.push(row.to_vec());
    for k in 1..ctx.degree() {
        let next = times_alpha(&out[k - 1], ctx, wpr);
        out.push(next);
    }
    out
}

fn scale_row(row: &[u64], c: &BitPoly, ctx: &FieldCtx, wpr: usize) -> Vec<u64> {
    let mut acc = vec![0u64; row.len()];
    let mut cur = row.to_vec();
    let top = c.degree().map_or(0, |t| t + 1);
    for k in 0..top {
        if c.coeff(k) {
            xor_into(&mut acc, &cur);
        }
        if k + 1 < top {
            cur = times_alpha(&cur, ctx, wpr);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binaryfield::presets::preset;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_matrix(ctx: &FieldCtx, rng: &mut ChaCha8Rng, r: usize, c: usize, density: f64) -> GFMatrix {
        let mut m = GFMatrix::zeros(ctx, r, c);
        for i in 0..r {
            for j in 0..c {
                if rng.gen_bool(density) {
                    m.set(i, j, &ctx.random(rng)).unwrap();
                }
            }
        }
        m
    }

    fn low_rank(ctx: &FieldCtx, rng: &mut ChaCha8Rng, r: usize, c: usize, k: usize) -> GFMatrix {
        let a = random_matrix(ctx, rng, r, k, 0.7);
        let b = random_matrix(ctx, rng, k, c, 0.7);
        a.mul(&b).unwrap()
    }

    #[test]
    fn identity_and_zero() {
        let k = preset("t2-d3").unwrap();
        assert_eq!(GFMatrix::identity(&k, 70).rank(), 70);
        let z = GFMatrix::zeros(&k, 3, 4);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel().len(), 4);
        let zero_b = vec![k.zero(); 3];
        let m = z.in_image(&zero_b).unwrap();
        assert_eq!(m, Membership::InImage { preimage: vec![k.zero(); 4] });
        let mut e1 = zero_b.clone();
        e1[0] = k.one();
        let m = z.in_image(&e1).unwrap();
        assert!(!m.is_member());
        assert!(z.verify_membership(&e1, &m).unwrap());
    }

    #[test]
    fn rank_symmetry_and_nullity() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let fields = ["f2", "t2-d2", "t2-d3", "t2-d13", "t2-d74"];
        for t in 0..500 {
            let k = preset(fields[t % fields.len()]).unwrap();
            let (r, c) = (rng.gen_range(1..40), rng.gen_range(1..90));
            let m = if t % 2 == 0 {
                random_matrix(&k, &mut rng, r, c, 0.3)
            } else {
                { let k_rank = rng.gen_range(1..8); low_rank(&k, &mut rng, r, c, k_rank) }
            };
            let rank = m.rank();
            assert_eq!(rank, m.transpose().rank());
            let ker = m.kernel();
            assert_eq!(ker.len() + rank, c);
            for v in &ker {
                assert!(m.mul_vec(v).unwrap().iter().all(FieldElem::is_zero));
            }
        }
    }

    #[test]
    fn in_image_certificates() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for t in 0..200 {
            let k = preset(["f2", "t2-d3", "t2-d13"][t % 3]).unwrap();
            let (r, c) = (rng.gen_range(1..50), rng.gen_range(1..50));
            let m = { let k_rank = rng.gen_range(1..10); low_rank(&k, &mut rng, r, c, k_rank) };
            let x: Vec<FieldElem> = (0..c).map(|_| k.random(&mut rng)).collect();
            let b = m.mul_vec(&x).unwrap();
            let cert = m.in_image(&b).unwrap();
            assert!(cert.is_member());
            assert!(m.verify_membership(&b, &cert).unwrap());
            let b2: Vec<FieldElem> = (0..r).map(|_| k.random(&mut rng)).collect();
            let cert2 = m.in_image(&b2).unwrap();
            assert!(m.verify_membership(&b2, &cert2).unwrap());
            assert_eq!(cert2.is_member(), m.solve(&b2).unwrap().is_some());
        }
    }

    #[test]
    fn matches_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for t in 0..100 {
            let k = preset(["t2-d2", "t2-d5", "t2-d20"][t % 3]).unwrap();
            let (r, c) = (rng.gen_range(1..25), rng.gen_range(1..25));
            let m = { let k_rank = rng.gen_range(1..12); low_rank(&k, &mut rng, r, c, k_rank) };
            let rows: Vec<Vec<FieldElem>> = (0..r).map(|i| (0..c).map(|j| m.get(i, j)).collect()).collect();
            assert_eq!(m.rank(), reference::rank(&rows));
        }
    }

    #[test]
    fn errors() {
        let k = preset("t2-d3").unwrap();
        let k2 = preset("t2-d2").unwrap();
        let m = GFMatrix::identity(&k, 3);
        assert!(matches!(m.mul_vec(&[k.one()]), Err(Error::DimensionMismatch(_))));
        assert_eq!(m.mul_vec(&[k2.one(), k2.one(), k2.one()]), Err(Error::CtxMismatch));
        assert_eq!(m.clone().set(0, 0, &k2.one()), Err(Error::CtxMismatch));
        assert!(matches!(m.mul(&GFMatrix::identity(&k, 2)), Err(Error::DimensionMismatch(_))));
    }
}
