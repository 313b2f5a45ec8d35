//! Element text formats.
//!
//! Symbolic: a `+`-separated sum of `1`, `0`, `g` or `g^k` where the generator
//! symbol `g` is one of `a`, `α`, `alpha`, `\alpha` and `k` may be braced.
//! Exponents at or above the degree are reduced by the modulus.
//! Exponent list: `11,9,7,6,5,4,3` (the polynomial in the generator).
//! Hex: `0x...`, the coordinate bits directly.

use super::{FieldCtx, FieldElem};
use crate::error::{Error, Result};
use crate::unipoly::BitPoly;

const SYMBOLS: [&str; 4] = ["\\alpha", "alpha", "α", "a"];

pub fn parse_elem(expr: &str, ctx: &FieldCtx) -> Result<FieldElem> {
    let s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Syntax("empty element".into()));
    }
    if s.contains(',') || s.starts_with("0x") {
        return parse_elem_exponents(&s, ctx);
    }
    let mut acc = ctx.zero();
    for term in s.split('+') {
        acc = &acc + &parse_term(term, ctx)?;
    }
    Ok(acc)
}

/// Parses the exponent-list or hex form.
pub fn parse_elem_exponents(expr: &str, ctx: &FieldCtx) -> Result<FieldElem> {
    Ok(ctx.elem(BitPoly::parse(expr)?))
}

fn parse_term(term: &str, ctx: &FieldCtx) -> Result<FieldElem> {
    match term {
        "" => return Err(Error::Syntax("empty term".into())),
        "0" => return Ok(ctx.zero()),
        "1" => return Ok(ctx.one()),
        _ => {}
    }
    let rest = SYMBOLS
        .iter()
        .find_map(|sym| term.strip_prefix(sym))
        .ok_or_else(|| Error::Syntax(format!("unknown term {term:?}")))?;
    if rest.is_empty() {
        return Ok(ctx.generator());
    }
    let exp = rest
        .strip_prefix('^')
        .ok_or_else(|| Error::Syntax(format!("unknown term {term:?}")))?;
    let exp = match exp.strip_prefix('{') {
        Some(inner) => inner
            .strip_suffix('}')
            .ok_or_else(|| Error::Syntax(format!("unbalanced brace in {term:?}")))?,
        None => exp,
    };
    if exp.is_empty() || !exp.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Syntax(format!("bad exponent in {term:?}")));
    }
    let k: u128 = exp.parse().map_err(|_| Error::ExponentOutOfRange(exp.to_string()))?;
    Ok(ctx.generator().pow(k))
}

/// Symbolic form, highest power first: `a^3+a+1`.
pub fn format_elem(a: &FieldElem) -> String {
    let exps = a.bits().exponents();
    if exps.is_empty() {
        return "0".into();
    }
    exps.iter()
        .map(|&e| match e {
            0 => "1".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{e}"),
        })
        .collect::<Vec<_>>()
        .join("+")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binaryfield::presets::preset;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn symbolic_forms() {
        let k = preset("t2-d20").unwrap();
        let a = parse_elem("a^3+a", &k).unwrap();
        assert_eq!(a.bits(), &BitPoly::parse("3,1").unwrap());
        assert_eq!(parse_elem("α^{3} + α", &k).unwrap(), a);
        assert_eq!(parse_elem("\\alpha^{3}+\\alpha", &k).unwrap(), a);
        assert_eq!(parse_elem("3,1", &k).unwrap(), a);
        assert!(parse_elem("1", &k).unwrap().is_one());
        assert!(parse_elem("a+a", &k).unwrap().is_zero());
        assert!(matches!(parse_elem("a+b", &k), Err(Error::Syntax(_))));
        assert!(matches!(parse_elem("a^", &k), Err(Error::Syntax(_))));
        assert!(matches!(parse_elem("a^{2", &k), Err(Error::Syntax(_))));
        assert!(matches!(parse_elem("", &k), Err(Error::Syntax(_))));
        assert!(matches!(
            parse_elem("a^999999999999999999999999999999999999999999", &k),
            Err(Error::ExponentOutOfRange(_))
        ));
        // Exponents beyond the degree reduce by the relation.
        let k4 = preset("t2-d2").unwrap();
        assert_eq!(parse_elem("a^2", &k4).unwrap(), parse_elem("a+1", &k4).unwrap());
    }

    #[test]
    fn format_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for name in ["t2-d2", "t2-d13", "t2-d74"] {
            let k = preset(name).unwrap();
            for _ in 0..100 {
                let a = k.random(&mut rng);
                assert_eq!(parse_elem(&format_elem(&a), &k).unwrap(), a);
            }
        }
        assert_eq!(format_elem(&preset("t2-d3").unwrap().zero()), "0");
    }
}
