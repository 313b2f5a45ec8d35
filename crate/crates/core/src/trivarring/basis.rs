use rustc_hash::FxHashMap;

use super::{Mono, TriPoly};
use crate::binaryfield::FieldElem;
use crate::error::{Error, Result};
use crate::unipoly::BitPoly;

/// Monomials of one degree in `F[x,y,z]/(x^B, y^B, z^B)`, lexicographic in
/// `(e_x, e_y, e_z)`; optionally only those of one weight class mod 3.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    degree: u32,
    bound: u32,
    class: Option<u32>,
    monos: Vec<Mono>,
    index: FxHashMap<Mono, usize>,
}

impl GradedBasis {
    pub fn new(degree: u32, bound: u32) -> Self {
        Self::build(degree, bound, None)
    }

    /// Only monomials with `e_x + 2 e_y == class (mod 3)`.
    pub fn with_class(degree: u32, bound: u32, class: u32) -> Self {
        Self::build(degree, bound, Some(class % 3))
    }

    fn build(degree: u32, bound: u32, class: Option<u32>) -> Self {
        let mut monos = Vec::new();
        if bound > 0 {
            for a in 0..bound.min(degree + 1) {
                for b in 0..bound.min(degree - a + 1) {
                    let c = degree - a - b;
                    if c < bound {
                        let m = Mono::new(a, b, c);
                        if class.is_none_or(|k| m.class3() == k) {
                            monos.push(m);
                        }
                    }
                }
            }
        }
        let index = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Self { degree, bound, class, monos, index }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn class(&self) -> Option<u32> {
        self.class
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monos(&self) -> &[Mono] {
        &self.monos
    }

    pub fn index_of(&self, m: Mono) -> Option<usize> {
        self.index.get(&m).copied()
    }

    /// Coordinates of a homogeneous `p` of this degree; every term must lie in the basis.
    pub fn to_vector(&self, p: &TriPoly) -> Result<Vec<FieldElem>> {
        Ok(self.to_bits(p)?.into_iter().map(|c| p.ctx().elem(c)).collect())
    }

    pub(crate) fn to_bits(&self, p: &TriPoly) -> Result<Vec<BitPoly>> {
        let mut v = vec![BitPoly::zero(); self.len()];
        for (m, c) in p.raw_terms() {
            if m.degree() != self.degree {
                return Err(Error::DegreeMismatch { expected: self.degree as usize, found: m.degree() as usize });
            }
            let k = self.index_of(*m).ok_or_else(|| {
                Error::DimensionMismatch(format!("monomial {:?} outside the basis", m.triple()))
            })?;
            v[k] = c.clone();
        }
        Ok(v)
    }

    /// Inverse of [`to_vector`](Self::to_vector).
    pub fn from_vector(&self, v: &[FieldElem]) -> Result<TriPoly> {
        let ctx = v.first().map(|c| c.ctx().clone()).ok_or_else(|| Error::DimensionMismatch("empty vector".into()))?;
        if v.len() != self.len() {
            return Err(Error::DimensionMismatch(format!("{} coordinates for a basis of {}", v.len(), self.len())));
        }
        let mut p = TriPoly::zero(&ctx);
        for (m, c) in self.monos.iter().zip(v) {
            p.add_term(*m, c.bits());
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binaryfield::presets::preset;
    use crate::trivarring::h_poly;

    #[test]
    fn sizes() {
        assert_eq!(GradedBasis::new(0, 5).len(), 1);
        let top = GradedBasis::new(21, 8);
        assert_eq!(top.len(), 1);
        assert_eq!(top.monos()[0].triple(), [7, 7, 7]);
        assert!(GradedBasis::new(22, 8).is_empty());
        // Unbounded count of degree d is C(d+2, 2).
        assert_eq!(GradedBasis::new(6, 100).len(), 28);
        let m = GradedBasis::new(6, 100).monos().to_vec();
        assert!(m.windows(2).all(|w| w[0] < w[1]));
        let split: usize = (0..3).map(|c| GradedBasis::with_class(190, 128, c).len()).sum();
        assert_eq!(split, GradedBasis::new(190, 128).len());
    }

    #[test]
    fn vector_roundtrip() {
        let k = preset("t2-d13").unwrap();
        let h = h_poly(&k.generator());
        let b = GradedBasis::new(4, 8);
        let v = b.to_vector(&h).unwrap();
        for (m, c) in h.terms() {
            assert_eq!(v[b.index_of(m).unwrap()], c);
        }
        assert_eq!(b.from_vector(&v).unwrap(), h);
        assert!(matches!(GradedBasis::new(5, 8).to_vector(&h), Err(Error::DegreeMismatch { .. })));
    }
}
