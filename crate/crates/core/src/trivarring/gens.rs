use std::sync::OnceLock;

use serde::Serialize;

use super::{ax, ay, Mono, TriPoly};
use crate::binaryfield::FieldCtx;
use crate::error::{Error, Result};

/// `[i, j] z^k` at a given `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BracketSpec {
    pub i: u64,
    pub j: u64,
    pub k: u64,
    pub q: u64,
}

impl BracketSpec {
    pub fn degree(&self) -> u64 {
        2 * self.i + 2 * self.j + self.k
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Generator {
    pub spec: BracketSpec,
    /// The extra `z^{4Q-1}` generator listed ahead of the bracket family.
    pub special: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    W,
    W0,
    WPrime,
}

/// Returns `l` when `Q = 2^(2l-1)`.
pub fn check_q(q: u64) -> Result<u32> {
    if q.is_power_of_two() && q.trailing_zeros() % 2 == 1 {
        Ok(q.trailing_zeros().div_ceil(2))
    } else {
        Err(Error::BadQ(q))
    }
}

fn enumerate(q: u64, family: Family) -> Result<Vec<Generator>> {
    check_q(q)?;
    let target = match family {
        Family::W | Family::W0 => 6 * q - 5,
        Family::WPrime => 6 * q - 1,
    };
    let special = match family {
        Family::W | Family::W0 => BracketSpec { i: 0, j: q - 2, k: 4 * q - 1, q },
        Family::WPrime => BracketSpec { i: 1, j: q - 1, k: 4 * q - 1, q },
    };
    let mut out = vec![Generator { spec: special, special: true }];
    for i in 0..2 * q {
        for j in i + 1..2 * q {
            if 2 * (i + j) >= target {
                break;
            }
            let k = target - 2 * (i + j);
            if k < 4 * q && k % 4 == 1 && !(family == Family::W0 && j == 2 * q - 1) {
                out.push(Generator { spec: BracketSpec { i, j, k, q }, special: false });
            }
        }
    }
    for g in &out {
        assert_eq!(g.spec.degree(), target, "generator {g:?} has the wrong degree");
    }
    Ok(out)
}

/// Generators of `W`: the special `[0, Q-2] z^{4Q-1}` then `[i, j] z^k` with
/// `i < j < 2Q`, `k < 4Q`, `k = 1 mod 4`, `2i + 2j + k = 6Q - 5`.
pub fn w_generators(q: u64) -> Result<Vec<Generator>> {
    enumerate(q, Family::W)
}

/// `W` generators with `j != 2Q - 1`.
pub fn w0_generators(q: u64) -> Result<Vec<Generator>> {
    enumerate(q, Family::W0)
}

/// Generators of `W'`: the special `[1, Q-1] z^{4Q-1}` then the degree `6Q - 1` brackets.
pub fn wprime_generators(q: u64) -> Result<Vec<Generator>> {
    enumerate(q, Family::WPrime)
}

/// Cached powers of `A_x` and `A_y` in `F[x,y,z]/(x^B, y^B, z^B)`.
pub struct BracketCache {
    ctx: FieldCtx,
    bound: u32,
    ax: Vec<OnceLock<TriPoly>>,
    ay: Vec<OnceLock<TriPoly>>,
}

impl BracketCache {
    /// Powers up to exponent `max_exp` inclusive.
    pub fn new(ctx: &FieldCtx, bound: u32, max_exp: usize) -> Self {
        Self {
            ctx: ctx.clone(),
            bound,
            ax: (0..=max_exp).map(|_| OnceLock::new()).collect(),
            ay: (0..=max_exp).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn ax_pow(&self, i: u64) -> &TriPoly {
        self.ax[i as usize].get_or_init(|| ax(&self.ctx).pow(i, Some(self.bound)))
    }

    pub fn ay_pow(&self, i: u64) -> &TriPoly {
        self.ay[i as usize].get_or_init(|| ay(&self.ctx).pow(i, Some(self.bound)))
    }

    /// `[i, j] = A_x^i A_y^j + A_x^j A_y^i`, truncated.
    pub fn bracket(&self, i: u64, j: u64) -> TriPoly {
        let b = Some(self.bound);
        let left = self.ax_pow(i).tmul(self.ay_pow(j), b).unwrap();
        let right = self.ax_pow(j).tmul(self.ay_pow(i), b).unwrap();
        left.try_add(&right).unwrap()
    }

    pub fn bracket_z(&self, i: u64, j: u64, k: u64) -> TriPoly {
        let zk = TriPoly::monomial(&self.ctx.one(), Mono::new(0, 0, k as u32));
        self.bracket(i, j).tmul(&zk, Some(self.bound)).unwrap()
    }

    pub fn generator(&self, g: &Generator) -> TriPoly {
        self.bracket_z(g.spec.i, g.spec.j, g.spec.k)
    }
}

/// `[i, j]` over `ctx`, optionally truncated at `bound`.
pub fn bracket(ctx: &FieldCtx, i: u64, j: u64, bound: Option<u32>) -> TriPoly {
    let (ax, ay) = (ax(ctx), ay(ctx));
    let left = ax.pow(i, bound).tmul(&ay.pow(j, bound), bound).unwrap();
    let right = ax.pow(j, bound).tmul(&ay.pow(i, bound), bound).unwrap();
    left.try_add(&right).unwrap()
}

/// `[i, j] z^k`.
pub fn bracket_z(ctx: &FieldCtx, i: u64, j: u64, k: u64, bound: Option<u32>) -> TriPoly {
    let zk = TriPoly::monomial(&ctx.one(), Mono::new(0, 0, k as u32));
    bracket(ctx, i, j, bound).tmul(&zk, bound).unwrap()
}

/// `u_i = [Q - i - 1, 2Q - 1] z^{2i - 1}` in `F[x,y,z]/(x^{4Q}, y^{4Q}, z^{4Q})`, odd `1 <= i <= Q - 1`.
pub fn u_basis(ctx: &FieldCtx, q: u64, i: u64) -> Result<TriPoly> {
    if !q.is_power_of_two() || q < 2 {
        return Err(Error::BadQ(q));
    }
    if i.is_multiple_of(2) || i == 0 || i >= q {
        return Err(Error::BadIndex { q, index: i });
    }
    Ok(bracket_z(ctx, q - i - 1, 2 * q - 1, 2 * i - 1, Some(4 * q as u32)))
}
