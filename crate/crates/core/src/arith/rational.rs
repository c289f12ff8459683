//! Integer and rational helpers shared by every module.

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

/// Exact rational number in canonical form (positive denominator, reduced).
pub type Rational = num_rational::BigRational;

/// Builds `num/den` from machine integers. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "square root of a negative integer");
    n.sqrt()
}

/// True iff `n = m²` for some integer `m`. Negative inputs are never squares.
pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

pub fn is_perfect_square_u64(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

/// Square root of a rational when it is itself rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

/// `⌊n / d⌋` for `d > 0`.
pub fn floor_div(n: &BigInt, d: &BigInt) -> BigInt {
    n.div_floor(d)
}

/// Renders `n / 10^digits` with exactly `digits` fractional digits.
pub(crate) fn render_scaled(n: &BigInt, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let (q, r) = n.abs().div_rem(&scale);
    let sign = if n.sign() == Sign::Minus { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{q}");
    }
    format!("{sign}{q}.{:0>width$}", r.to_string(), width = digits)
}

/// Decimal rendering rounded half-up to `digits` fractional digits.
pub fn rational_decimal(q: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let scaled = (q * Rational::from_integer(scale) + half).floor().to_integer();
    render_scaled(&scaled, digits)
}

/// `p/q` form, or just `p` for integers.
pub fn rational_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `p/q` or a finite decimal such as `1.25`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = ip.starts_with('-');
        let ip_val: BigInt = if ip.is_empty() || ip == "-" || ip == "+" {
            BigInt::zero()
        } else {
            ip.parse().ok()?
        };
        let fp_val: BigInt = fp.parse().ok()?;
        let scale = BigInt::from(10u32).pow(fp.len() as u32);
        let frac = Rational::new(fp_val, scale);
        let whole = Rational::from_integer(ip_val.abs());
        let mag = whole + frac;
        return Some(if negative { -mag } else { mag });
    }
    s.parse::<BigInt>().ok().map(Rational::from_integer)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_squares() {
        assert!(is_perfect_square(&BigInt::from(4)));
        assert!(!is_perfect_square(&BigInt::from(7)));
        assert!(is_perfect_square(&BigInt::from(0)));
        assert!(!is_perfect_square(&BigInt::from(-4)));
        assert!(is_perfect_square_u64(1));
        assert!(!is_perfect_square_u64(2));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rational_decimal(&rat(1, 8), 12), "0.125000000000");
        assert_eq!(rational_decimal(&rat(-1, 3), 4), "-0.3333");
        assert_eq!(rational_decimal(&rat(2, 3), 4), "0.6667");
        assert_eq!(rational_decimal(&rat(-1, 100000), 3), "0.000");
        assert_eq!(rational_decimal(&int(5), 2), "5.00");
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("3/4"), Some(rat(3, 4)));
        assert_eq!(parse_rational("-6/8"), Some(rat(-3, 4)));
        assert_eq!(parse_rational("1.25"), Some(rat(5, 4)));
        assert_eq!(parse_rational("-0.5"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("2"), Some(int(2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&rat(1, 16)), Some(rat(1, 4)));
        assert_eq!(rational_sqrt(&rat(1, 2)), None);
        assert_eq!(rational_sqrt(&rat(-1, 4)), None);
    }
}
