use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tclab::binaryfield::presets::preset;
use tclab::binaryfield::{FieldCtx, FieldElem};
use tclab::gflinalg::{reference, GFMatrix};
use tclab::parity::binom_odd;
use tclab::unipoly::{factor, is_irreducible, BitPoly};

#[test]
fn lucas_matches_bigint_pascal() {
    let mut row = vec![BigUint::from(1u32)];
    for n in 0..=1024u64 {
        for (r, c) in row.iter().enumerate() {
            assert_eq!(binom_odd(n, r as u64), c.bit(0), "C({n}, {r})");
        }
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigUint::from(1u32));
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigUint::from(1u32));
        row = next;
    }
}

fn field() -> impl Strategy<Value = FieldCtx> {
    prop::sample::select(vec!["f2", "t2-d2", "t2-d5", "t2-d13", "t2-d20", "hk-d16", "t2-d74"])
        .prop_map(|n| preset(n).unwrap())
}

fn elem(k: &FieldCtx, seed: u64) -> FieldElem {
    k.random(&mut ChaCha8Rng::seed_from_u64(seed))
}

fn random_matrix(k: &FieldCtx, rng: &mut ChaCha8Rng, r: usize, c: usize) -> GFMatrix {
    let mut m = GFMatrix::zeros(k, r, c);
    let density = rng.gen_range(0.05..0.9);
    for i in 0..r {
        for j in 0..c {
            if rng.gen_bool(density) {
                m.set(i, j, &k.random(rng)).unwrap();
            }
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn frobenius_and_sqrt(k in field(), s1: u64, s2: u64) {
        let (x, y) = (elem(&k, s1), elem(&k, s2));
        prop_assert_eq!(x.frobenius(k.degree()), x.clone());
        prop_assert_eq!(x.sqrt().square(), x.clone());
        prop_assert_eq!((&x + &y).square(), &x.square() + &y.square());
        prop_assert_eq!(x.frobenius(1), x.square());
    }

    #[test]
    fn factor_round_trip(seed: u64, deg in 1usize..=512) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut exps: Vec<usize> = (0..deg).filter(|_| rng.gen_bool(0.5)).collect();
        exps.push(deg);
        let f = BitPoly::from_exponents(&exps);
        let fz = factor(&f).unwrap();
        prop_assert_eq!(fz.product(), f);
        for (p, _) in &fz.factors {
            prop_assert!(is_irreducible(p));
        }
    }

    #[test]
    fn rank_kernel_certificates(k in field(), seed: u64, r in 1usize..30, c in 1usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&k, &mut rng, r, c);
        let rank = m.rank();
        prop_assert_eq!(rank, m.transpose().rank());
        let ker = m.kernel();
        prop_assert_eq!(ker.len() + rank, c);
        for v in &ker {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(FieldElem::is_zero));
        }
        let b: Vec<FieldElem> = (0..r).map(|_| k.random(&mut rng)).collect();
        let cert = m.in_image(&b).unwrap();
        prop_assert!(m.verify_membership(&b, &cert).unwrap());
    }
}

/// F_2 packed elimination against the same matrix read into F_8 (rank is
/// stable under field extension) and, for small sizes, the element-wise path.
#[test]
fn f2_fast_path_agrees_with_generic() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xf2);
    let f2 = FieldCtx::f2();
    let f8 = preset("t2-d3").unwrap();
    for t in 0..1000 {
        let big = t % 50 == 0;
        let (r, c) = if big {
            (rng.gen_range(256..=512), rng.gen_range(256..=512))
        } else {
            (rng.gen_range(1..=96), rng.gen_range(1..=96))
        };
        let m = random_matrix(&f2, &mut rng, r, c);
        let rank = m.rank();
        let mut lifted = GFMatrix::zeros(&f8, r, c);
        for i in 0..r {
            for j in 0..c {
                if m.get(i, j).is_one() {
                    lifted.set(i, j, &f8.one()).unwrap();
                }
            }
        }
        assert_eq!(rank, lifted.rank(), "trial {t}");
        if r * c <= 2500 {
            let rows: Vec<Vec<FieldElem>> = (0..r).map(|i| (0..c).map(|j| m.get(i, j)).collect()).collect();
            assert_eq!(rank, reference::rank(&rows), "trial {t}");
        }
    }
}
