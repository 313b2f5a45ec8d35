//! Matrices over F_2[t], ranked either by specialization or exactly.

use serde::Serialize;

use super::GFMatrix;
use crate::binaryfield::{FieldCtx, FieldElem};
use crate::error::{Error, Result};
use crate::unipoly::BitPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BitPoly>,
}

/// Outcome of ranking a [`PolyMatrix`] at several specializations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericRank {
    /// Largest rank seen; a lower bound for the rank over F_2(t).
    pub lower_bound: usize,
    /// True when `lower_bound` equals `min(rows, cols)`.
    pub certified: bool,
    pub ranks: Vec<usize>,
    pub best_point: Option<usize>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BitPoly::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BitPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BitPoly) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &BitPoly) {
        self.entries[r * self.cols + c].add_assign(v);
    }

    /// Substitutes `t = point`.
    pub fn eval(&self, point: &FieldElem) -> GFMatrix {
        let ctx = point.ctx();
        let maxdeg = self.entries.iter().filter_map(BitPoly::degree).max().unwrap_or(0);
        let mut powers = vec![ctx.one()];
        for k in 1..=maxdeg {
            let next = &powers[k - 1] * point;
            powers.push(next);
        }
        let mut m = GFMatrix::zeros(ctx, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = self.get(r, c);
                if e.is_zero() {
                    continue;
                }
                let mut acc = BitPoly::zero();
                for k in e.exponents() {
                    acc.add_assign(powers[k].bits());
                }
                m.set_bits(r, c, &acc);
            }
        }
        m
    }

    /// Ranks at each point; stops early once full rank is reached.
    pub fn generic_rank(&self, points: &[FieldElem]) -> GenericRank {
        let full = self.rows.min(self.cols);
        let mut out = GenericRank { lower_bound: 0, certified: full == 0, ranks: vec![], best_point: None };
        for (i, p) in points.iter().enumerate() {
            if out.certified {
                break;
            }
            let r = self.eval(p).rank();
            out.ranks.push(r);
            if r > out.lower_bound || out.best_point.is_none() {
                out.lower_bound = out.lower_bound.max(r);
                out.best_point = Some(i);
            }
            out.certified = out.lower_bound == full;
        }
        out
    }

    /// Like [`generic_rank`](Self::generic_rank) but fails unless certified.
    pub fn certified_rank(&self, points: &[FieldElem]) -> Result<GenericRank> {
        let g = self.generic_rank(points);
        if g.certified {
            Ok(g)
        } else {
            Err(Error::NotCertified(format!("best rank {} of {}", g.lower_bound, self.rows.min(self.cols))))
        }
    }

    /// Exact rank over F_2(t) by fraction-free (Bareiss) elimination.
    #[allow(clippy::needless_range_loop)]
    pub fn exact_rank(&self) -> usize {
        let mut m: Vec<Vec<BitPoly>> = (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c).clone()).collect()).collect();
        let mut prev = BitPoly::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&p| !m[p][c].is_zero()) else { continue };
            m.swap(r, p);
            let piv = m[r][c].clone();
            for i in r + 1..self.rows {
                let f = m[i][c].clone();
                for j in c..self.cols {
                    let v = piv.mul(&m[i][j]).add(&f.mul(&m[r][j]));
                    m[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
                }
            }
            // Columns left of c in rows below are already zero.
            prev = piv;
            r += 1;
        }
        r
    }
}

/// Uniform random points of `ctx` for specialization.
pub fn sample_points<R: rand::Rng + ?Sized>(ctx: &FieldCtx, rng: &mut R, n: usize) -> Vec<FieldElem> {
    (0..n).map(|_| ctx.random(rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binaryfield::presets::preset;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_poly_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                if rng.gen_bool(0.5) {
                    m.set(i, j, BitPoly::from_u128(rng.gen_range(0..16)));
                }
            }
        }
        m
    }

    #[test]
    fn generic_matches_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let k = preset("t2-d20").unwrap();
        for _ in 0..60 {
            let (r, c) = (rng.gen_range(1..9), rng.gen_range(1..9));
            let mut m = random_poly_matrix(&mut rng, r, c);
            if rng.gen_bool(0.5) && r > 1 {
                // Force a dependency: last row = t * first row + second row.
                for j in 0..c {
                    let v = m.get(0, j).shl(1).add(m.get(1 % r, j));
                    m.set(r - 1, j, v);
                }
            }
            let exact = m.exact_rank();
            let pts = sample_points(&k, &mut rng, 4);
            let g = m.generic_rank(&pts);
            assert!(g.lower_bound <= exact);
            // Over a field of size 2^20 a random point is generic with high probability.
            assert_eq!(g.lower_bound, exact);
        }
    }

    #[test]
    fn t_minus_one_drops_rank_at_one() {
        // [[t, 1], [1, 1]] has determinant t + 1.
        let mut m = PolyMatrix::zeros(2, 2);
        m.set(0, 0, BitPoly::w());
        m.set(0, 1, BitPoly::one());
        m.set(1, 0, BitPoly::one());
        m.set(1, 1, BitPoly::one());
        let k = preset("t2-d3").unwrap();
        assert_eq!(m.eval(&k.one()).rank(), 1);
        assert_eq!(m.exact_rank(), 2);
        let g = m.generic_rank(&[k.one(), k.generator()]);
        assert!(g.certified);
        assert_eq!(g.ranks, vec![1, 2]);
        assert_eq!(g.best_point, Some(1));
        assert!(matches!(m.certified_rank(&[k.one()]), Err(Error::NotCertified(_))));
    }
}
