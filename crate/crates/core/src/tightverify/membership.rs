//! Membership in `h O` decided by elimination, with certificates.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use super::{
    basis_claim, bound_of, span_check, v_annihilates_w0, v_poly, v_times_u_all, BasisReport, SpanReport, VTimesU,
    W0Report, Witness,
};
use crate::binaryfield::{format_elem, FieldElem};
use crate::error::{Error, Result};
use crate::gflinalg::{GenericRank, Membership};
use crate::hilbertkunz::{check_generic_point, h_t_poly_matrix, mult_matrix};
use crate::trivarring::{check_q, h_poly, GradedBasis, Mono, TriPoly};

/// Direct elimination is on by default up to this escape time.
pub const DIRECT_MAX_ELL: u32 = 3;

#[derive(Clone, Debug, Serialize)]
pub struct DirectBlock {
    pub class: u32,
    pub rows: usize,
    pub cols: usize,
    pub member: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectReport {
    pub degree_from: u32,
    pub degree_to: u32,
    pub blocks: Vec<DirectBlock>,
    pub member: bool,
    /// The preimage or functional was re-checked against the sparse map.
    pub certificate_verified: bool,
    /// Nonzero entries of the separating functional.
    pub functional_support: Option<usize>,
    /// The functional itself as (monomial exponents, coefficient) pairs.
    pub functional: Option<Vec<([u32; 3], String)>>,
    #[serde(skip)]
    pub preimage: Option<TriPoly>,
}

/// Decides `target in h_a O`, `O` truncated at `B = 4Q`. The target must be
/// homogeneous; each `e_x + 2e_y mod 3` class is its own block.
pub fn direct_membership(alpha: &FieldElem, q: u64, target: &TriPoly) -> Result<DirectReport> {
    let ctx = alpha.ctx();
    if target.ctx() != ctx {
        return Err(Error::CtxMismatch);
    }
    let deg = match target.homogeneous_degree()? {
        Some(d) if d >= 4 => d,
        other => return Err(Error::DegreeMismatch { expected: 4, found: other.unwrap_or(0) as usize }),
    };
    let bound = bound_of(q);
    let h = h_poly(alpha);
    let mut parts: BTreeMap<u32, TriPoly> = BTreeMap::new();
    for (m, c) in target.raw_terms() {
        parts.entry(m.class3()).or_insert_with(|| TriPoly::zero(ctx)).add_term(*m, c);
    }
    let mut report = DirectReport {
        degree_from: deg - 4,
        degree_to: deg,
        blocks: vec![],
        member: true,
        certificate_verified: false,
        functional_support: None,
        functional: None,
        preimage: None,
    };
    let mut preimage = TriPoly::zero(ctx);
    for (class, part) in &parts {
        let dom = GradedBasis::with_class(deg - 4, bound, *class);
        let cod = GradedBasis::with_class(deg, bound, *class);
        let m = mult_matrix(&h, &dom, &cod);
        let b = cod.to_vector(part)?;
        let cert = m.in_image(&b)?;
        let member = cert.is_member();
        report.blocks.push(DirectBlock { class: *class, rows: cod.len(), cols: dom.len(), member });
        match cert {
            Membership::InImage { preimage: x } => {
                if !dom.is_empty() {
                    preimage = preimage.try_add(&dom.from_vector(&x)?)?;
                }
            }
            Membership::NotInImage { functional } => {
                report.member = false;
                let support: Vec<([u32; 3], String)> = cod
                    .monos()
                    .iter()
                    .zip(&functional)
                    .filter(|(_, e)| !e.is_zero())
                    .map(|(m, e)| (m.triple(), format_elem(e)))
                    .collect();
                report.functional_support = Some(support.len());
                report.functional = Some(support);
                report.certificate_verified = functional_separates(&h, deg, bound, &cod, &functional, &b);
                return Ok(report);
            }
        }
    }
    report.certificate_verified = h.tmul(&preimage, Some(bound))? == *target;
    report.preimage = Some(preimage);
    Ok(report)
}

/// `phi` kills `h m` for every monomial `m` of degree `deg - 4` (all classes)
/// and `phi(b) != 0`. `phi` lives on `cod` and is zero elsewhere.
fn functional_separates(h: &TriPoly, deg: u32, bound: u32, cod: &GradedBasis, phi: &[FieldElem], b: &[FieldElem]) -> bool {
    let ctx = h.ctx();
    let terms = h.terms();
    let kills = GradedBasis::new(deg - 4, bound).monos().iter().all(|m| {
        let mut acc = ctx.zero();
        for (t, c) in &terms {
            if let Some(r) = cod.index_of(m.mul(*t)) {
                acc = &acc + &(c * &phi[r]);
            }
        }
        acc.is_zero()
    });
    let pb = phi.iter().zip(b).fold(ctx.zero(), |acc, (p, x)| &acc + &(p * x));
    kills && !pb.is_zero()
}

/// `h_a g` for a random `g` of degree `6Q - 2`: must come back as a member.
pub fn negative_control<R: Rng + ?Sized>(w: &Witness, rng: &mut R, terms: usize) -> Result<DirectReport> {
    let ctx = w.ctx();
    let basis = GradedBasis::new((6 * w.q - 2) as u32, bound_of(w.q));
    let mut g = TriPoly::zero(ctx);
    for _ in 0..terms {
        let m = basis.monos()[rng.gen_range(0..basis.len())];
        g.add_term(m, ctx.random(rng).bits());
    }
    let target = h_poly(&w.alpha).tmul(&g, Some(bound_of(w.q)))?;
    if target.is_zero() {
        return Err(Error::CrossCheckMismatch("negative control produced zero".into()));
    }
    direct_membership(&w.alpha, w.q, &target)
}

#[derive(Clone, Debug, Serialize)]
pub struct NoncontainmentReport {
    pub ell: u32,
    pub q: u64,
    pub field: String,
    pub alpha: String,
    pub direct: Option<DirectReport>,
    pub v_times_u: Vec<VTimesU>,
    pub v_u1_is_one: bool,
    pub v_ui_vanish: bool,
    pub nullity: usize,
    pub w0: W0Report,
    pub span: SpanReport,
    pub basis: BasisReport,
    pub basis_route: bool,
    /// Both routes say `v` is not in `h_a O`.
    pub agree: bool,
}

/// Both routes for one witness. Direct elimination beyond
/// [`DIRECT_MAX_ELL`] needs `force`.
pub fn noncontainment(w: &Witness, force: bool) -> Result<NoncontainmentReport> {
    if w.ell > DIRECT_MAX_ELL && !force {
        return Err(Error::TooLarge(format!("direct mode at l = {} needs force", w.ell)));
    }
    let ctx = w.ctx();
    let direct = direct_membership(&w.alpha, w.q, &v_poly(w.q, ctx))?;
    let v_times_u = v_times_u_all(w.q, ctx)?;
    let v_u1_is_one = v_times_u[0].value.is_one();
    let v_ui_vanish = v_times_u[1..].iter().all(|r| r.value.is_zero());
    let nullity = super::nullity(w.q, &w.alpha, &ctx.one())?;
    let w0 = v_annihilates_w0(w.q, ctx)?;
    let span = span_check(w.q, &w.alpha)?;
    let basis = basis_claim(w.q)?;
    let basis_route = v_u1_is_one && v_ui_vanish && nullity == 0 && w0.passes() && span.contained() && basis.holds();
    let agree = basis_route && !direct.member && direct.certificate_verified;
    Ok(NoncontainmentReport {
        ell: w.ell,
        q: w.q,
        field: ctx.spec(),
        alpha: format_elem(&w.alpha),
        direct: Some(direct),
        v_times_u,
        v_u1_is_one,
        v_ui_vanish,
        nullity,
        w0,
        span,
        basis,
        basis_route,
        agree,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ContainmentReport {
    pub q: u64,
    pub degree_from: u32,
    pub degree_to: u32,
    pub rows: usize,
    pub cols: usize,
    pub generic: GenericRank,
    /// Full row rank: the degree `6Q + 1` piece of the quotient is zero.
    pub surjective: bool,
    pub point: String,
    pub field: String,
    pub preimage_terms: usize,
    pub preimage_verified: bool,
    pub preimage: String,
}

/// Certifies `y f^Q = y^{3Q+1} z^{3Q}` is in `(x^{4Q}, y^{4Q}, z^{4Q}, h_t)`
/// for generic `t`, by a full-rank specialization.
pub fn containment_generic(q: u64, points: &[FieldElem]) -> Result<ContainmentReport> {
    check_q(q)?;
    if q > 8 {
        return Err(Error::TooLarge(format!("containment at Q = {q}")));
    }
    for p in points {
        check_generic_point(p)?;
    }
    let bound = bound_of(q);
    let (from, to) = ((6 * q - 3) as u32, (6 * q + 1) as u32);
    let dom = GradedBasis::new(from, bound);
    let cod = GradedBasis::new(to, bound);
    let pm = h_t_poly_matrix(&dom, &cod);
    let generic = pm.certified_rank(points)?;
    let surjective = generic.lower_bound == cod.len();
    let best = &points[generic.best_point.expect("certified rank has a point")];
    let ctx = best.ctx();
    let e = (3 * q) as u32;
    let target = TriPoly::monomial(&ctx.one(), Mono::new(0, e + 1, e));
    let cert = pm.eval(best).in_image(&cod.to_vector(&target)?)?;
    let Membership::InImage { preimage } = cert else {
        return Err(Error::CrossCheckMismatch("full-rank specialization missed y f^Q".into()));
    };
    let g = dom.from_vector(&preimage)?;
    let preimage_verified = h_poly(best).tmul(&g, Some(bound))? == target;
    Ok(ContainmentReport {
        q,
        degree_from: from,
        degree_to: to,
        rows: cod.len(),
        cols: dom.len(),
        generic,
        surjective,
        point: format_elem(best),
        field: ctx.spec(),
        preimage_terms: g.len(),
        preimage_verified,
        preimage: g.dump(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbertkunz::generic_points;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_witnesses() {
        for ell in 1..=2 {
            let w = Witness::canonical(ell).unwrap();
            let r = noncontainment(&w, false).unwrap();
            let d = r.direct.as_ref().unwrap();
            assert!(!d.member && d.certificate_verified, "{r:?}");
            assert!(r.basis_route && r.agree, "{r:?}");
            assert_eq!((d.degree_from, d.degree_to), (6 * w.q as u32 - 2, 6 * w.q as u32 + 2));
        }
        assert!(matches!(noncontainment(&Witness::canonical(4).unwrap(), false), Err(Error::TooLarge(_))));
    }

    #[test]
    fn negative_controls() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for ell in 1..=2 {
            let w = Witness::canonical(ell).unwrap();
            for _ in 0..5 {
                let r = negative_control(&w, &mut rng, 6).unwrap();
                assert!(r.member && r.certificate_verified, "{r:?}");
            }
        }
    }

    #[test]
    fn containment_q2() {
        let mut rng = ChaCha8Rng::seed_from_u64(72);
        let pts = generic_points(&mut rng, 3);
        let r = containment_generic(2, &pts).unwrap();
        assert!(r.generic.certified && r.surjective && r.preimage_verified, "{r:?}");
        assert_eq!((r.degree_from, r.degree_to), (9, 13));
        let one = crate::binaryfield::FieldCtx::f2().one();
        assert_eq!(containment_generic(2, &[one]).unwrap_err(), Error::BadPoint(1));
        assert!(matches!(containment_generic(32, &pts), Err(Error::TooLarge(_))));
    }
}
