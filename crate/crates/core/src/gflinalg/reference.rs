//! Element-by-element Gaussian elimination. Slow and obvious; used as an
//! oracle for the bitsliced kernels.

use crate::binaryfield::FieldElem;

pub fn rank(rows: &[Vec<FieldElem>]) -> usize {
    let mut m: Vec<Vec<FieldElem>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&p| !m[p][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        let pivot: Vec<FieldElem> = m[r].iter().map(|e| e * &inv).collect();
        for row in m.iter_mut().skip(r + 1) {
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x = &*x + &(&f * p);
            }
        }
        m[r] = pivot;
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}
