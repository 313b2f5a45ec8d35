//! The `T` map `u_i -> a^{Q-i} v_i + t sum_{i+j = Q/4^s} v_j + delta_{i,1} w`
//! and its companion `u_i -> t v_i + a^i sum v_j + delta_{i,1} w`.

use serde::Serialize;

use crate::binaryfield::FieldElem;
use crate::error::{Error, Result};
use crate::gflinalg::GFMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    /// `a^{Q-i} v_i + t sum v_j` (the `T` map).
    B,
    /// `t v_i + a^i sum v_j`.
    A,
}

#[derive(Clone, Debug)]
pub struct TMap {
    pub q: u64,
    pub kind: MapKind,
    pub alpha: FieldElem,
    pub t: FieldElem,
    /// `(Q/2 + 1) x (Q/2)`; row `(i-1)/2` is `v_i`, the last row is `w`.
    pub matrix: GFMatrix,
}

impl TMap {
    pub fn nullity(&self) -> usize {
        self.matrix.nullity()
    }
}

fn check(q: u64) -> Result<()> {
    if q < 2 || !q.is_power_of_two() {
        return Err(Error::BadQ(q));
    }
    Ok(())
}

/// Odd `j` in `[1, Q-1]` with `i + j = Q / 4^s`, `s >= 0`.
pub fn partners(q: u64, i: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut qs = q;
    loop {
        if qs > i {
            let j = qs - i;
            if j % 2 == 1 && j < q {
                out.push(j);
            }
        }
        if !qs.is_multiple_of(4) {
            break;
        }
        qs /= 4;
    }
    out
}

fn build(q: u64, alpha: &FieldElem, t: &FieldElem, kind: MapKind) -> Result<TMap> {
    check(q)?;
    if alpha.ctx() != t.ctx() {
        return Err(Error::CtxMismatch);
    }
    let ctx = alpha.ctx();
    let n = (q / 2) as usize;
    let mut m = GFMatrix::zeros(ctx, n + 1, n);
    let row = |i: u64| ((i - 1) / 2) as usize;
    for i in (1..q).step_by(2) {
        let col = row(i);
        let (diag, off) = match kind {
            MapKind::B => (alpha.pow(u128::from(q - i)), t.clone()),
            MapKind::A => (t.clone(), alpha.pow(u128::from(i))),
        };
        let mut entry = |r: usize, v: &FieldElem| {
            let cur = m.get(r, col);
            m.set(r, col, &(&cur + v)).expect("same field");
        };
        entry(col, &diag);
        for j in partners(q, i) {
            entry(row(j), &off);
        }
        if i == 1 {
            entry(n, &ctx.one());
        }
    }
    Ok(TMap { q, kind, alpha: alpha.clone(), t: t.clone(), matrix: m })
}

pub fn t_matrix(q: u64, alpha: &FieldElem, t: &FieldElem) -> Result<TMap> {
    build(q, alpha, t, MapKind::B)
}

pub fn a_matrix(q: u64, alpha: &FieldElem, t: &FieldElem) -> Result<TMap> {
    build(q, alpha, t, MapKind::A)
}

/// `N_a^+(Q, t)`.
pub fn nullity(q: u64, alpha: &FieldElem, t: &FieldElem) -> Result<usize> {
    Ok(t_matrix(q, alpha, t)?.nullity())
}

/// `t* = t + a^Q / t`, or `None` when `t = 0`.
pub fn t_star(q: u64, alpha: &FieldElem, t: &FieldElem) -> Option<FieldElem> {
    let inv = t.inv().ok()?;
    Some(t + &(&alpha.pow(u128::from(q)) * &inv))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceCheck {
    pub q: u64,
    pub before: usize,
    pub after: usize,
}

impl InvarianceCheck {
    pub fn holds(&self) -> bool {
        self.before == self.after
    }
}

/// Compares `N(Q, t)` with `N(Q/4, t*)`; `None` unless `Q >= 8` and `t, t* != 0`.
pub fn invariance(q: u64, alpha: &FieldElem, t: &FieldElem) -> Result<Option<InvarianceCheck>> {
    check(q)?;
    if q < 8 || t.is_zero() {
        return Ok(None);
    }
    let Some(ts) = t_star(q, alpha, t) else { return Ok(None) };
    if ts.is_zero() {
        return Ok(None);
    }
    Ok(Some(InvarianceCheck { q, before: nullity(q, alpha, t)?, after: nullity(q / 4, alpha, &ts)? }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binaryfield::presets::preset;
    use crate::binaryfield::FieldCtx;
    use crate::dynamics::escape_elements;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn base_case() {
        let one = FieldCtx::f2().one();
        let m = t_matrix(2, &one, &one).unwrap();
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (2, 1));
        // alpha + t = 0 at alpha = t = 1, the w entry keeps the column nonzero.
        assert!(m.matrix.get(0, 0).is_zero());
        assert!(m.matrix.get(1, 0).is_one());
        assert_eq!(m.nullity(), 0);
        let k = preset("t2-d3").unwrap();
        let (a, t) = (k.generator(), k.from_u64(0b110));
        let m = t_matrix(2, &a, &t).unwrap();
        assert_eq!(m.matrix.get(0, 0), &a + &t);
    }

    #[test]
    fn q8_columns() {
        let k = preset("t2-d5").unwrap();
        let (a, t) = (k.generator(), k.from_u64(0b10110));
        let m = t_matrix(8, &a, &t).unwrap().matrix;
        // u_3: a^5 at v_3, t at v_5.
        let col3: Vec<FieldElem> = (0..5).map(|r| m.get(r, 1)).collect();
        assert_eq!(col3, vec![k.zero(), a.pow(5), t.clone(), k.zero(), k.zero()]);
        // u_1: a^7 + t at v_1, t at v_7, 1 at w.
        let col1: Vec<FieldElem> = (0..5).map(|r| m.get(r, 0)).collect();
        assert_eq!(col1, vec![&a.pow(7) + &t, k.zero(), k.zero(), t.clone(), k.one()]);
        assert_eq!(partners(8, 1), vec![7, 1]);
        assert_eq!(partners(8, 3), vec![5]);
    }

    #[test]
    fn witnesses_have_nullity_zero() {
        for ell in 1..=4u32 {
            let q = 1u64 << (2 * ell - 1);
            for (k, a) in escape_elements(ell).unwrap() {
                assert_eq!(nullity(q, &a, &k.one()).unwrap(), 0, "ell = {ell}, alpha = {a}");
            }
        }
    }

    #[test]
    fn alpha_zero() {
        let k = preset("t2-d7").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for q in [2, 8, 32] {
            for _ in 0..10 {
                let t = k.random(&mut rng);
                if !t.is_zero() {
                    assert_eq!(nullity(q, &k.zero(), &t).unwrap(), 0);
                }
            }
        }
    }

    #[test]
    fn invariance_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        let fields = ["t2-d2", "t2-d3", "t2-d5", "t2-d7", "t2-d13"];
        let mut positive = 0;
        for q in [8u64, 32, 128] {
            let mut done = 0;
            while done < 100 {
                let k = preset(fields[rng.gen_range(0..fields.len())]).unwrap();
                let (a, t) = (k.random(&mut rng), k.random(&mut rng));
                if let Some(c) = invariance(q, &a, &t).unwrap() {
                    assert!(c.holds(), "Q = {q}, alpha = {a}, t = {t}: {c:?}");
                    positive += usize::from(c.before > 0);
                    done += 1;
                }
            }
        }
        // Small fields make singular instances common enough to matter.
        assert!(positive > 0);
    }

    #[test]
    fn a_and_b_same_nullity() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let mut positive = 0;
        for q in [8u64, 32] {
            for _ in 0..200 {
                let k = preset(["t2-d2", "t2-d3", "t2-d5"][rng.gen_range(0..3)]).unwrap();
                let (a, t) = (k.random(&mut rng), k.random(&mut rng));
                let nb = t_matrix(q, &a, &t).unwrap().nullity();
                assert_eq!(a_matrix(q, &a, &t).unwrap().nullity(), nb, "Q = {q}, alpha = {a}, t = {t}");
                positive += usize::from(nb > 0);
            }
        }
        assert!(positive > 0);
    }
}
