use std::fmt;

/// A dyadic rational `m * 2^e`, kept with `m` odd (or zero, with `e = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: i64,
    exp: i32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    pub fn new(num: i64, exp: i32) -> Self {
        if num == 0 {
            return Self::ZERO;
        }
        let tz = num.trailing_zeros();
        Self { num: num >> tz, exp: exp + tz as i32 }
    }

    /// `2^e`.
    pub fn pow2(e: i32) -> Self {
        Self { num: 1, exp: e }
    }

    pub fn mantissa(self) -> i64 {
        self.num
    }

    pub fn exp(self) -> i32 {
        self.exp
    }

    pub fn is_integral(self) -> bool {
        self.exp >= 0
    }

    /// Multiplies by `2^k` (negative `k` divides).
    pub fn shift(self, k: i32) -> Self {
        if self.num == 0 {
            self
        } else {
            Self { num: self.num, exp: self.exp + k }
        }
    }

    /// `Q / 4`, the Q-update of the two-parameter system.
    pub fn quarter(self) -> Self {
        self.shift(-2)
    }

    /// Parses `m`, `m/2^s`, `m/<power of two>` or `2^e`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some(e) = s.strip_prefix("2^") {
            return e.trim_matches(|c| c == '{' || c == '}').parse().ok().map(Self::pow2);
        }
        match s.split_once('/') {
            None => s.parse().ok().map(|m| Self::new(m, 0)),
            Some((m, den)) => {
                let m: i64 = m.trim().parse().ok()?;
                let den = den.trim();
                let shift = if let Some(e) = den.strip_prefix("2^") {
                    e.parse::<i32>().ok()?
                } else {
                    let d: u64 = den.parse().ok()?;
                    if !d.is_power_of_two() {
                        return None;
                    }
                    d.trailing_zeros() as i32
                };
                Some(Self::new(m, -shift))
            }
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp >= 0 && self.exp < 62 - (64 - self.num.unsigned_abs().leading_zeros() as i32) {
            write!(f, "{}", self.num << self.exp)
        } else if self.exp >= 0 {
            write!(f, "{}*2^{}", self.num, self.exp)
        } else if -self.exp < 63 {
            write!(f, "{}/{}", self.num, 1u64 << -self.exp)
        } else {
            write!(f, "{}/2^{}", self.num, -self.exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_and_prints() {
        assert_eq!(Dyadic::new(8, 0), Dyadic::pow2(3));
        assert_eq!(Dyadic::new(12, -2), Dyadic::new(3, 0));
        assert_eq!(Dyadic::pow2(-2).to_string(), "1/4");
        assert_eq!(Dyadic::new(32, 0).quarter().to_string(), "8");
        assert_eq!(Dyadic::parse("1/4"), Some(Dyadic::pow2(-2)));
        assert_eq!(Dyadic::parse("2^-3"), Some(Dyadic::pow2(-3)));
        assert_eq!(Dyadic::parse("32"), Some(Dyadic::pow2(5)));
        assert_eq!(Dyadic::parse("1/3"), None);
        assert!(Dyadic::pow2(-1).quarter().exp() == -3);
    }
}
