//! Named field presentations used by the escape-time table and the
//! Hilbert–Kunz sampling field.

use super::FieldCtx;
use crate::unipoly::BitPoly;

/// `(name, degree, modulus exponents)`.
pub const PRESETS: &[(&str, usize, &[usize])] = &[
    ("f2", 1, &[1, 0]),
    ("t2-d2", 2, &[2, 1, 0]),
    ("t2-d3", 3, &[3, 1, 0]),
    ("t2-d5", 5, &[5, 2, 0]),
    ("t2-d7", 7, &[7, 1, 0]),
    ("t2-d10", 10, &[10, 6, 5, 3, 2, 1, 0]),
    ("t2-d11", 11, &[11, 2, 0]),
    ("t2-d12", 12, &[12, 7, 6, 5, 3, 1, 0]),
    ("t2-d13", 13, &[13, 4, 3, 1, 0]),
    ("t2-d14", 14, &[14, 7, 5, 3, 0]),
    ("t2-d15", 15, &[15, 5, 4, 2, 0]),
    // The printed relation has a bare "+^{5}"; it is read as a^5.
    ("t2-d20", 20, &[20, 10, 9, 7, 6, 5, 4, 1, 0]),
    (
        "t2-d74",
        74,
        &[
            74, 37, 36, 35, 34, 33, 32, 31, 30, 29, 28, 27, 26, 24, 21, 17, 16, 13, 12, 11, 8, 3, 0,
        ],
    ),
    // Sampling field for generic Hilbert–Kunz points.
    ("hk-d16", 16, &[16, 5, 3, 2, 0]),
];

/// Looks up a preset; `F_2` and `t2-d1` are aliases of `f2`.
pub fn preset(name: &str) -> Option<FieldCtx> {
    let name = match name {
        "F_2" | "F2" | "t2-d1" => "f2",
        other => other,
    };
    let &(n, d, exps) = PRESETS.iter().find(|(n, _, _)| *n == name)?;
    Some(FieldCtx::named(d, BitPoly::from_exponents(exps), n).expect("preset moduli are irreducible"))
}

pub fn names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(n, _, _)| *n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_build() {
        for name in names() {
            let k = preset(name).unwrap();
            assert_eq!(k.name(), Some(name));
            assert_eq!(FieldCtx::parse_spec(&k.spec()).unwrap(), k);
        }
        assert_eq!(preset("F_2").unwrap().degree(), 1);
        assert!(preset("nope").is_none());
    }
}
