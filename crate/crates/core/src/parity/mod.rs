//! Binomial parity by Lucas's rule and brute-force checks of the Sierpiński
//! tiling argument showing `C(i,a) C(j,b)` is even on the (i, a) region
//!
//! `2^{2l} - 2 - 3a <= i <= 3a + 1`, `a <= 2^{2l-2} - 1`, `i = a (mod 2)`,
//!
//! with `j = (6Q - 6 - 3a - i)/2`, `b = (4Q - 2 + a - i)/2`, `Q = 2^{2l-1}`.

use rayon::prelude::*;
use serde::Serialize;

/// `C(n, r)` is odd iff every binary digit of `r` is at most that of `n`.
pub fn binom_odd(n: u64, r: u64) -> bool {
    r <= n && r & n == r
}

/// Signed variant: `C(n, r)` with a negative argument or `r > n` counts as zero (even).
pub fn binom_odd_i(n: i64, r: i64) -> bool {
    n >= 0 && r >= 0 && binom_odd(n as u64, r as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RegionPoint {
    pub i: i64,
    pub a: i64,
    pub j: i64,
    pub b: i64,
    pub k: i64,
}

impl RegionPoint {
    /// Completes `(i, a)` with `j`, `b` and `k = 6Q - 5 - 2i - 2j`; needs `i = a (mod 2)`.
    pub fn new(ell: u32, i: i64, a: i64) -> Self {
        let q = q_of(ell);
        debug_assert_eq!((i - a).rem_euclid(2), 0);
        let j = (6 * q - 6 - 3 * a - i) / 2;
        let b = (4 * q - 2 + a - i) / 2;
        Self { i, a, j, b, k: 6 * q - 5 - 2 * i - 2 * j }
    }

    pub fn product_odd(&self) -> bool {
        binom_odd_i(self.i, self.a) && binom_odd_i(self.j, self.b)
    }

    /// Whether `[i, j] z^k` is an actual generator of `W_0` (`i < j <= 2Q - 2`, `k = 1 mod 4`).
    pub fn is_w0_generator(&self, ell: u32) -> bool {
        let q = q_of(ell);
        self.i < self.j && self.j <= 2 * q - 2 && self.k >= 0 && self.k.rem_euclid(4) == 1
    }
}

pub fn q_of(ell: u32) -> i64 {
    1i64 << (2 * ell - 1)
}

/// Largest `a` in the region.
fn a_max(ell: u32) -> i64 {
    (1i64 << (2 * ell - 2)) - 1
}

/// `i` range for one `a`, before the parity filter.
fn i_range(ell: u32, a: i64) -> (i64, i64) {
    (((1i64 << (2 * ell)) - 2 - 3 * a).max(0), 3 * a + 1)
}

fn strip(ell: u32, a: i64) -> impl Iterator<Item = RegionPoint> {
    let (lo, hi) = i_range(ell, a);
    let lo = if (lo - a).rem_euclid(2) == 0 { lo } else { lo + 1 };
    (lo..=hi).step_by(2).map(move |i| RegionPoint::new(ell, i, a))
}

/// Region points with `a` ascending, then `i` ascending.
pub fn region_points(ell: u32) -> impl Iterator<Item = RegionPoint> {
    assert!(ell >= 1);
    (0..=a_max(ell)).flat_map(move |a| strip(ell, a))
}

/// Point count without enumeration: per `a`, the number of integers of the parity of `a` in the `i` range.
pub fn region_count(ell: u32) -> u64 {
    (0..=a_max(ell))
        .map(|a| {
            let (lo, hi) = i_range(ell, a);
            if hi < lo {
                return 0;
            }
            // Values of the parity of a in [lo, hi].
            let first = lo + (lo - a).rem_euclid(2);
            if first > hi {
                0
            } else {
                ((hi - first) / 2 + 1) as u64
            }
        })
        .sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct TilingReport {
    pub ell: u32,
    pub points_checked: u64,
    /// Region points with `C(i,a) C(j,b)` odd.
    pub violations: Vec<RegionPoint>,
    /// The violations that are actual `W_0` generators.
    pub generator_violations: Vec<RegionPoint>,
}

/// Brute-force check over the region, parallel over `a`-strips.
pub fn tiling_check(ell: u32) -> TilingReport {
    tiling_check_mutated(ell, Mutation::None)
}

/// Deliberate falsifications of the region, used as negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    None,
    /// `a` runs up to `4 * 2^{2l-2}` instead of `2^{2l-2} - 1`.
    DropABound,
    /// The lower bound `2^{2l} - 2 - 3a <= i` is replaced by `0 <= i`.
    DropIFloor,
}

pub fn tiling_check_mutated(ell: u32, mutation: Mutation) -> TilingReport {
    assert!(ell >= 1);
    let amax = if mutation == Mutation::DropABound { 4 * (a_max(ell) + 1) } else { a_max(ell) };
    let (count, mut violations) = (0..=amax)
        .into_par_iter()
        .map(|a| {
            let mut n = 0u64;
            let mut bad = Vec::new();
            let pts: Box<dyn Iterator<Item = RegionPoint>> = if mutation == Mutation::DropIFloor {
                let first = a.rem_euclid(2);
                Box::new((first..=3 * a + 1).step_by(2).map(move |i| RegionPoint::new(ell, i, a)))
            } else {
                Box::new(strip(ell, a))
            };
            for p in pts {
                n += 1;
                if p.product_odd() {
                    bad.push(p);
                }
            }
            (n, bad)
        })
        .reduce(|| (0, Vec::new()), |(n1, mut v1), (n2, v2)| {
            v1.extend(v2);
            (n1 + n2, v1)
        });
    violations.sort_by_key(|p| (p.a, p.i));
    let generator_violations = violations.iter().copied().filter(|p| p.is_w0_generator(ell)).collect();
    TilingReport { ell, points_checked: count, violations, generator_violations }
}

/// Hypothesis of the triangle lemma:
/// `s 2^t <= n < (s+1) 2^t - 1` and `n + 1 - (s-u) 2^t <= r < (u+1) 2^t`.
pub fn triangle_pred(s: i64, t: u32, u: i64, n: i64, r: i64) -> bool {
    let p = 1i128 << t;
    let (s, u, n, r) = (s as i128, u as i128, n as i128, r as i128);
    s * p <= n && n < (s + 1) * p - 1 && n + 1 - (s - u) * p <= r && r < (u + 1) * p
}

fn p4(e: u32) -> i64 {
    1i64 << e
}

/// Membership in `Q_n` (binomial `C(i, a)` claimed even).
pub fn in_q(ell: u32, n: u32, i: i64, a: i64) -> bool {
    let s = p4(2 * (ell - n));
    i >= (p4(2 * n - 1) - 1) * s && 3 * (i + 1) - (p4(2 * n) - 1) * s <= 3 * a && 3 * a < (p4(2 * n - 1) + 1) * s
}

/// Membership in `Q'_n` (binomial `C(j, b)` claimed even).
pub fn in_q_prime(ell: u32, n: u32, i: i64, a: i64) -> bool {
    let s = p4(2 * (ell - n));
    let s1 = p4(2 * (ell - n - 1));
    i <= (p4(2 * n) + 1) * s - 3 * a - 6
        && (p4(2 * n + 1) + 1) * s1 <= 3 * a
        && 3 * a < 3 * (i + 2) - (p4(2 * n) - 1) * s
}

/// Membership in the trapezoid union `T`.
pub fn in_t(ell: u32, i: i64, a: i64) -> bool {
    p4(2 * ell) - 2 - 3 * a <= i && i <= p4(2 * ell - 1) - 2 && p4(2 * ell - 1) - 1 <= 3 * a && a <= a_max(ell)
}

/// Membership in `T'`.
pub fn in_t_prime(ell: u32, i: i64, a: i64) -> bool {
    p4(2 * ell - 1) <= i && i <= 3 * a + 1 && a <= a_max(ell)
}

#[derive(Clone, Debug, Serialize)]
pub struct LineReport {
    pub line_i: i64,
    pub points: u64,
    /// Points on the line with `C(j, b)` odd.
    pub odd_jb: Vec<RegionPoint>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub ell: u32,
    /// Points of some `Q_n` with `C(i, a)` odd.
    pub q_failures: Vec<(u32, i64, i64)>,
    /// Points of some `Q'_n` (with `i = a mod 2`) with `C(j, b)` odd.
    pub q_prime_failures: Vec<(u32, i64, i64)>,
    /// Points of `T` in no `Q_n` or `Q'_n`.
    pub t_gaps: Vec<(i64, i64)>,
    /// Region points outside `T`, `T'` and both candidate lines.
    pub uncovered_points: Vec<(i64, i64)>,
    /// Region points outside `T` and `T'` (what the extra line has to handle).
    pub outside_tiles: Vec<(i64, i64)>,
    /// The lines `i = Q - 1` and `i = 2^{2l-2} - 1`.
    pub lines: Vec<LineReport>,
}

/// Checks every piece of the tiling argument and reports gaps instead of failing.
pub fn cover_check(ell: u32) -> CoverReport {
    assert!(ell >= 1);
    let imax = p4(2 * ell);
    let amax_box = p4(2 * ell - 1);
    let mut q_failures = Vec::new();
    let mut q_prime_failures = Vec::new();
    for n in 1..ell {
        for i in 0..imax {
            for a in 0..amax_box {
                if in_q(ell, n, i, a) && binom_odd_i(i, a) {
                    q_failures.push((n, i, a));
                }
                if (i - a).rem_euclid(2) == 0 && in_q_prime(ell, n, i, a) {
                    let p = RegionPoint::new(ell, i, a);
                    if binom_odd_i(p.j, p.b) {
                        q_prime_failures.push((n, i, a));
                    }
                }
            }
        }
    }
    let q = q_of(ell);
    let lines_i = [q - 1, p4(2 * ell - 2) - 1];
    let mut t_gaps = Vec::new();
    let mut uncovered_points = Vec::new();
    let mut outside_tiles = Vec::new();
    let mut lines: Vec<LineReport> =
        lines_i.iter().map(|&l| LineReport { line_i: l, points: 0, odd_jb: Vec::new() }).collect();
    for p in region_points(ell) {
        let (i, a) = (p.i, p.a);
        let t = in_t(ell, i, a);
        if t && !(1..ell).any(|n| in_q(ell, n, i, a) || in_q_prime(ell, n, i, a)) {
            t_gaps.push((i, a));
        }
        let tiles = t || in_t_prime(ell, i, a);
        if !tiles {
            outside_tiles.push((i, a));
            if !lines_i.contains(&i) {
                uncovered_points.push((i, a));
            }
        }
        for line in lines.iter_mut() {
            if i == line.line_i {
                line.points += 1;
                if binom_odd_i(p.j, p.b) {
                    line.odd_jb.push(p);
                }
            }
        }
    }
    CoverReport { ell, q_failures, q_prime_failures, t_gaps, uncovered_points, outside_tiles, lines }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lucas_examples() {
        for q in [2u64, 8, 32, 128] {
            for a in 0..2 * q {
                assert!(binom_odd(2 * q - 1, a));
            }
        }
        assert!(!binom_odd(4, 2));
        assert!(!binom_odd(3, 4));
        assert!(binom_odd(0, 0));
        assert!(!binom_odd_i(-1, 0));
    }

    #[test]
    fn region_examples() {
        assert_eq!(region_points(1).count(), 0);
        assert_eq!(tiling_check(1).points_checked, 0);
        for ell in 1..=6 {
            assert_eq!(region_points(ell).count() as u64, region_count(ell));
            assert!(region_points(ell).all(|p| (p.i - p.a) % 2 == 0 && p.j >= 0 && p.b >= 0));
        }
        // Frozen brute-force counts from an independent enumeration.
        let want = [0u64, 3, 45, 693, 10965, 174933];
        for (ell, w) in (1..=6).zip(want) {
            assert_eq!(region_count(ell), w);
        }
    }

    #[test]
    fn literal_region_has_off_generator_violations() {
        // The literal region carries l - 1 odd products, all on i = Q - 1 with
        // k = 3 mod 4; none of them is a W_0 generator.
        for ell in 1..=6 {
            let r = tiling_check(ell);
            assert_eq!(r.violations.len() as u32, ell - 1);
            assert!(r.generator_violations.is_empty());
            for p in &r.violations {
                assert_eq!(p.i, q_of(ell) - 1);
                assert_eq!(p.k.rem_euclid(4), 3);
            }
        }
        let p = tiling_check(2).violations[0];
        assert_eq!((p.i, p.a, p.j, p.b, p.k), (7, 3, 13, 13, 3));
    }

    #[test]
    fn negative_control() {
        for ell in 2..=4 {
            let base = tiling_check(ell).violations.len();
            assert!(tiling_check_mutated(ell, Mutation::DropIFloor).violations.len() > base);
            // Past the a bound one of the binomials has r > n, so nothing new appears.
            assert_eq!(tiling_check_mutated(ell, Mutation::DropABound).violations.len(), base);
        }
    }

    #[test]
    fn triangle_lemma_holds() {
        // t = 0 is vacuous.
        for n in 0..20 {
            for r in 0..20 {
                assert!(!triangle_pred(n, 0, 0, n, r) || !binom_odd_i(n, r));
            }
        }
        for t in 0..5u32 {
            for s in 0..6 {
                for u in 0..6 {
                    for n in 0..200 {
                        for r in 0..200 {
                            if triangle_pred(s, t, u, n, r) {
                                assert!(!binom_odd_i(n, r), "s={s} t={t} u={u} n={n} r={r}");
                            }
                        }
                    }
                }
            }
        }
        assert!((0..20).all(|n| (0..20).all(|r| !triangle_pred(0, 0, 0, n, r))));
    }

    #[test]
    fn cover_pieces() {
        for ell in 1..=5 {
            let c = cover_check(ell);
            assert!(c.q_failures.is_empty(), "l={ell}");
            assert!(c.q_prime_failures.is_empty(), "l={ell}");
            assert!(c.t_gaps.is_empty(), "l={ell}");
            // Everything the tiles miss sits on i = Q - 1.
            assert!(c.uncovered_points.is_empty(), "l={ell}");
            assert!(c.outside_tiles.iter().all(|&(i, _)| i == q_of(ell) - 1));
            // On i = Q - 1, C(j, b) is odd exactly at the l - 1 points with k = 3 mod 4;
            // the other candidate line meets no region point.
            let [main, other] = [&c.lines[0], &c.lines[1]];
            assert_eq!(main.odd_jb.len() as u32, ell - 1);
            assert!(main.odd_jb.iter().all(|p| p.k.rem_euclid(4) == 3));
            assert_eq!(other.points, 0);
        }
    }
}
