//! Escape-time dynamics of `phi_a(t) = t^4 + a t^-4` and of the two-parameter
//! system `(Q, t) -> (Q/4, t + a^Q / t)`, plus the G_n/H_n recursion whose
//! roots are exactly the elements of escape time n.

mod tables;

use std::collections::HashMap;

use serde::Serialize;

pub use tables::{Table2Row, GAMMA, TABLE1, TABLE2};

use crate::binaryfield::{parse_elem, presets, Dyadic, FieldCtx, FieldElem};
use crate::error::{Error, Result};
use crate::unipoly::{factor, BitPoly};

/// A point of `F ∪ {∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjPoint {
    Finite(FieldElem),
    Infinity,
}

impl ProjPoint {
    pub fn is_zero(&self) -> bool {
        matches!(self, ProjPoint::Finite(t) if t.is_zero())
    }
}

/// How an orbit ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Escape {
    /// Reached 0 after exactly this many steps.
    Finite { steps: u64 },
    /// Reached ∞ at this step without passing through 0.
    ReachedInfinity { step: u64 },
    /// Entered a cycle avoiding 0.
    Cycle { period: u64 },
}

impl Escape {
    pub fn finite(self) -> Option<u64> {
        match self {
            Escape::Finite { steps } => Some(steps),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EscapeRecord {
    pub element: FieldElem,
    pub result: Escape,
}

impl EscapeRecord {
    pub fn field_spec(&self) -> String {
        self.element.ctx().spec()
    }
}

fn same_ctx(alpha: &FieldElem, t: &ProjPoint) -> Result<()> {
    match t {
        ProjPoint::Finite(t) if t.ctx() != alpha.ctx() => Err(Error::CtxMismatch),
        _ => Ok(()),
    }
}

/// One step of `phi_a`. `0 -> ∞` for `a != 0`, `∞ -> ∞`, and `0 -> 0` for `a = 0`.
pub fn phi_step(alpha: &FieldElem, t: &ProjPoint) -> Result<ProjPoint> {
    same_ctx(alpha, t)?;
    let ProjPoint::Finite(t) = t else {
        return Ok(ProjPoint::Infinity);
    };
    if t.is_zero() {
        return Ok(if alpha.is_zero() { ProjPoint::Finite(t.clone()) } else { ProjPoint::Infinity });
    }
    let t4 = t.square().square();
    if alpha.is_zero() {
        return Ok(ProjPoint::Finite(t4));
    }
    let inv4 = t4.inv()?;
    Ok(ProjPoint::Finite(&t4 + &(alpha * &inv4)))
}

/// Escape time of `alpha` starting from `t = 1`.
pub fn escape_time(alpha: &FieldElem) -> EscapeRecord {
    let result = escape_from(alpha, ProjPoint::Finite(alpha.ctx().one()));
    EscapeRecord { element: alpha.clone(), result }
}

/// Runs `phi_a` from an arbitrary start until 0, ∞ or a repeated state.
pub fn escape_from(alpha: &FieldElem, start: ProjPoint) -> Escape {
    escape_from_bounded(alpha, start, u64::MAX).expect("unbounded run always ends")
}

/// [`escape_from`] giving up (`None`) after `max_steps` applications of `phi_a`.
/// Brent's cycle finding keeps memory constant; orbits in large fields can be long.
pub fn escape_from_bounded(alpha: &FieldElem, start: ProjPoint, max_steps: u64) -> Option<Escape> {
    let mut hare = start;
    let mut tortoise = hare.clone();
    let (mut power, mut lam) = (1u64, 0u64);
    let mut step = 0u64;
    loop {
        if hare.is_zero() {
            return Some(Escape::Finite { steps: step });
        }
        if hare == ProjPoint::Infinity {
            return Some(Escape::ReachedInfinity { step });
        }
        if step > 0 && hare == tortoise {
            return Some(Escape::Cycle { period: lam });
        }
        if step == max_steps {
            return None;
        }
        if lam == power {
            tortoise = hare.clone();
            power *= 2;
            lam = 0;
        }
        hare = phi_step(alpha, &hare).expect("orbit stays in the field of alpha");
        step += 1;
        lam += 1;
    }
}

/// State `(Q, t)` of the two-parameter system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicState {
    pub q: Dyadic,
    pub t: ProjPoint,
}

/// `(Q, t) -> (Q/4, t + a^Q t^-1)`.
pub fn phi2_step(alpha: &FieldElem, s: &DyadicState) -> Result<DyadicState> {
    same_ctx(alpha, &s.t)?;
    let q = s.q.quarter();
    let t = match &s.t {
        ProjPoint::Infinity => ProjPoint::Infinity,
        ProjPoint::Finite(t) if t.is_zero() => {
            if alpha.is_zero() {
                s.t.clone()
            } else {
                ProjPoint::Infinity
            }
        }
        ProjPoint::Finite(t) => {
            if alpha.is_zero() {
                s.t.clone()
            } else {
                let aq = alpha.pow_dyadic(s.q)?;
                ProjPoint::Finite(t + &(&aq * &t.inv()?))
            }
        }
    };
    Ok(DyadicState { q, t })
}

/// Escape time `L_a(Q0, t0)` of the two-parameter system.
pub fn escape_time2(alpha: &FieldElem, q0: Dyadic, t0: ProjPoint) -> Escape {
    let mut seen: HashMap<(ProjPoint, FieldElem), u64> = HashMap::new();
    let mut s = DyadicState { q: q0, t: t0 };
    let mut step = 0u64;
    loop {
        if s.t.is_zero() {
            return Escape::Finite { steps: step };
        }
        if s.t == ProjPoint::Infinity {
            return Escape::ReachedInfinity { step };
        }
        let aq = if alpha.is_zero() { alpha.clone() } else { alpha.pow_dyadic(s.q).expect("nonzero") };
        if let Some(first) = seen.insert((s.t.clone(), aq), step) {
            return Escape::Cycle { period: step - first };
        }
        s = phi2_step(alpha, &s).expect("orbit stays in the field of alpha");
        step += 1;
    }
}

/// `L_a(4^l / 2, 1)` next to `l_a`; they agree whenever `l_a` is finite.
pub fn bridge_check(alpha: &FieldElem) -> (Escape, Option<Escape>) {
    let one = escape_time(alpha).result;
    let two = one.finite().map(|l| {
        escape_time2(alpha, Dyadic::pow2(2 * l as i32 - 1), ProjPoint::Finite(alpha.ctx().one()))
    });
    (one, two)
}

/// `(G_n, H_n)` from `G_1 = w + 1, H_1 = 1`, `G_{n+1} = G_n^8 + w H_n^8`, `H_{n+1} = G_n^4 H_n^4`.
pub fn gn_hn(n: u32) -> (BitPoly, BitPoly) {
    assert!(n >= 1, "gn_hn needs n >= 1");
    let mut g = BitPoly::from_exponents(&[1, 0]);
    let mut h = BitPoly::one();
    for _ in 1..n {
        let g4 = g.square().square();
        let h4 = h.square().square();
        g = g4.square().add(&h4.square().shl(1));
        h = g4.mul(&h4);
    }
    (g, h)
}

/// Largest n accepted by [`escape_elements`] without the explicit override.
pub const ESCAPE_ELEMENTS_MAX_N: u32 = 6;

/// One representative of escape time `n` per irreducible factor of `G_n`: the
/// numerically least conjugate of `w` in `F_2[w]/(p)`. Each is re-verified.
pub fn escape_elements(n: u32) -> Result<Vec<(FieldCtx, FieldElem)>> {
    escape_elements_with(n, false)
}

pub fn escape_elements_with(n: u32, allow_large: bool) -> Result<Vec<(FieldCtx, FieldElem)>> {
    if n == 0 || (n > ESCAPE_ELEMENTS_MAX_N && !allow_large) {
        return Err(Error::TooLarge(format!("escape_elements({n}) needs 1 <= n <= {ESCAPE_ELEMENTS_MAX_N}")));
    }
    let (g, _) = gn_hn(n);
    let fz = factor(&g)?;
    let mut out = Vec::with_capacity(fz.factors.len());
    for (p, _) in fz.factors {
        let (ctx, root) = least_root(&p)?;
        let got = escape_time(&root).result;
        if got.finite() != Some(n as u64) {
            return Err(Error::CrossCheckMismatch(format!(
                "root of a degree-{} factor of G_{n} has escape {:?}",
                p.degree().unwrap(),
                got
            )));
        }
        out.push((ctx, root));
    }
    Ok(out)
}

/// `F_2[w]/(p)` and the least of the conjugates `w^(2^i)` of its generator.
pub fn least_root(p: &BitPoly) -> Result<(FieldCtx, FieldElem)> {
    let k = p.degree().unwrap_or(0);
    let ctx = FieldCtx::new(k, p.clone())?;
    let mut best = ctx.generator();
    let mut c = best.clone();
    for _ in 1..k {
        c = c.square();
        if c.bits() < best.bits() {
            best = c.clone();
        }
    }
    Ok((ctx, best))
}

/// Outcome of one Table 2 row.
#[derive(Clone, Debug)]
pub struct Table2Check {
    pub row: Table2Row,
    pub record: EscapeRecord,
}

impl Table2Check {
    pub fn matches(&self) -> bool {
        self.record.result.finite() == self.row.expected
    }
}

/// Recomputes every Table 2 row.
pub fn check_table2() -> Vec<Table2Check> {
    use rayon::prelude::*;
    TABLE2
        .par_iter()
        .map(|row| {
            let ctx = presets::preset(row.field).expect("table fields are presets");
            let beta = parse_elem(row.beta, &ctx).expect("table entries parse");
            Table2Check { row: *row, record: escape_time(&beta) }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binaryfield::presets::preset;
    use crate::unipoly::eval;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fin(a: &FieldElem) -> ProjPoint {
        ProjPoint::Finite(a.clone())
    }

    /// Visited-set orbit walk, the obvious oracle for Brent's method.
    fn escape_naive(alpha: &FieldElem, start: ProjPoint) -> Escape {
        let mut seen = HashMap::new();
        let (mut t, mut step) = (start, 0u64);
        loop {
            if t.is_zero() {
                return Escape::Finite { steps: step };
            }
            if t == ProjPoint::Infinity {
                return Escape::ReachedInfinity { step };
            }
            if let Some(first) = seen.insert(t.clone(), step) {
                return Escape::Cycle { period: step - first };
            }
            t = phi_step(alpha, &t).unwrap();
            step += 1;
        }
    }

    #[test]
    fn brent_matches_visited_set() {
        for name in ["f2", "t2-d2", "t2-d3", "t2-d5", "t2-d7"] {
            let k = preset(name).unwrap();
            for a in k.elements() {
                for t in k.elements().take(16) {
                    assert_eq!(escape_from(&a, fin(&t)), escape_naive(&a, fin(&t)), "{name} a={a} t={t}");
                }
            }
        }
        let k = preset("t2-d20").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = k.random(&mut rng);
            let full = escape_from(&a, fin(&k.one()));
            assert_eq!(full, escape_naive(&a, fin(&k.one())));
            assert_eq!(escape_from_bounded(&a, fin(&k.one()), 1 << 30), Some(full));
        }
        assert_eq!(escape_from_bounded(&k.one(), fin(&k.one()), 0), None);
    }

    #[test]
    fn phi_step_examples() {
        let f2 = FieldCtx::f2();
        let one = f2.one();
        assert!(phi_step(&one, &fin(&one)).unwrap().is_zero());
        assert_eq!(phi_step(&one, &fin(&f2.zero())).unwrap(), ProjPoint::Infinity);
        assert_eq!(phi_step(&one, &ProjPoint::Infinity).unwrap(), ProjPoint::Infinity);
        assert!(phi_step(&f2.zero(), &fin(&f2.zero())).unwrap().is_zero());
        let k4 = preset("t2-d2").unwrap();
        let a = k4.generator();
        let a1 = &a + &k4.one();
        assert_eq!(phi_step(&a, &fin(&k4.one())).unwrap(), fin(&a1));
        assert!(phi_step(&a, &fin(&a1)).unwrap().is_zero());
        assert_eq!(phi_step(&a, &fin(&f2.one())), Err(Error::CtxMismatch));
    }

    #[test]
    fn escape_examples() {
        let f2 = FieldCtx::f2();
        assert_eq!(escape_time(&f2.zero()).result, Escape::Cycle { period: 1 });
        assert_eq!(escape_time(&f2.one()).result.finite(), Some(1));
        // After 0 the orbit goes to ∞ and stays.
        let one = f2.one();
        assert_eq!(escape_from(&one, fin(&f2.zero())), Escape::Finite { steps: 0 });
        assert_eq!(escape_from(&one, ProjPoint::Infinity), Escape::ReachedInfinity { step: 0 });
    }

    #[test]
    fn phi2_examples() {
        let f2 = FieldCtx::f2();
        let one = f2.one();
        let s = phi2_step(&one, &DyadicState { q: Dyadic::pow2(1), t: fin(&one) }).unwrap();
        assert_eq!(s.q, Dyadic::pow2(-1));
        assert!(s.t.is_zero());
        let s = phi2_step(&one, &DyadicState { q: Dyadic::pow2(3), t: ProjPoint::Infinity }).unwrap();
        assert_eq!(s, DyadicState { q: Dyadic::pow2(1), t: ProjPoint::Infinity });
        let zero = f2.zero();
        let s = phi2_step(&zero, &DyadicState { q: Dyadic::pow2(3), t: fin(&one) }).unwrap();
        assert_eq!(s.t, fin(&one));
        assert_eq!(escape_time2(&one, Dyadic::pow2(1), fin(&one)), Escape::Finite { steps: 1 });
        assert_eq!(
            escape_time2(&one, Dyadic::pow2(1), ProjPoint::Infinity),
            Escape::ReachedInfinity { step: 0 }
        );
        let k4 = preset("t2-d2").unwrap();
        let a = k4.generator();
        assert_eq!(escape_time2(&a, Dyadic::pow2(3), fin(&k4.one())), Escape::Finite { steps: 2 });
    }

    #[test]
    fn gn_examples() {
        let (g1, h1) = gn_hn(1);
        assert_eq!(g1, BitPoly::parse("1,0").unwrap());
        assert!(h1.is_one());
        assert_eq!(gn_hn(2).0, BitPoly::parse("8,1,0").unwrap());
        for n in 1..=5 {
            assert_eq!(gn_hn(n).0.degree(), Some(8usize.pow(n - 1)));
        }
    }

    #[test]
    fn escape_elements_small() {
        let e1 = escape_elements(1).unwrap();
        assert_eq!(e1.len(), 1);
        assert!(e1[0].1.is_one());
        let e2 = escape_elements(2).unwrap();
        let degs: Vec<usize> = e2.iter().map(|(k, _)| k.degree()).collect();
        assert_eq!(degs, vec![2, 6]);
        assert!(matches!(escape_elements(7), Err(Error::TooLarge(_))));
    }

    #[test]
    fn exhaustive_criterion_small_fields() {
        // l_a = n < ∞ implies G_n(a) = 0, and conversely, over all of F_{2^d}, d <= 8.
        let gs: Vec<BitPoly> = (1..=4).map(|n| gn_hn(n).0).collect();
        for spec in ["d:1;mod:1,0", "d:2;mod:2,1,0", "d:3;mod:3,1,0", "d:4;mod:4,1,0", "d:6;mod:6,1,0", "d:8;mod:8,4,3,1,0"] {
            let k = FieldCtx::parse_spec(spec).unwrap();
            for a in k.elements() {
                let l = escape_time(&a).result.finite();
                for (i, g) in gs.iter().enumerate() {
                    let n = i as u64 + 1;
                    assert_eq!(eval(g, &a).is_zero(), l == Some(n), "{a:?}");
                }
                // The bridge between the one- and two-parameter systems.
                let (one, two) = bridge_check(&a);
                if one.finite().is_some() {
                    assert_eq!(two, Some(one));
                }
            }
        }
    }

    #[test]
    fn fourth_power_conjugacy() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let k = preset("t2-d13").unwrap();
        for _ in 0..1000 {
            let a = k.random(&mut rng);
            let t = k.random(&mut rng);
            if a.is_zero() || t.is_zero() {
                continue;
            }
            let lhs = phi_step(&a, &fin(&t)).unwrap();
            let q = a.pow_dyadic(Dyadic::pow2(-2)).unwrap();
            let inner = &t + &(&q * &t.inv().unwrap());
            assert_eq!(lhs, fin(&inner.square().square()));
        }
    }
}
