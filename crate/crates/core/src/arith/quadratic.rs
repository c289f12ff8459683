//! Elements `a + b·√d` of ℚ(√d) with the radicand kept explicit.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};

use super::rational::{floor_div, int, render_scaled, Rational};
use super::ArithError;

/// `a + b·√d`. When `d` is a perfect square the value is folded into `a` and
/// `b` is zero, so structural equality is value equality within one radicand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadraticNumber {
    /// Panics if `d == 0`.
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        assert!(d > 0, "radicand must be positive");
        let root = d.sqrt();
        if root * root == d {
            let a = a + b * int(root);
            return Self { a, b: Rational::zero(), d };
        }
        Self { a, b, d }
    }

    pub fn from_rational(a: Rational, d: u64) -> Self {
        Self::new(a, Rational::zero(), d)
    }

    /// `√d / d`.
    pub fn inverse_sqrt(d: u64) -> Self {
        Self::new(Rational::zero(), Rational::new(BigInt::one(), BigInt::from(d)), d)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt_coefficient(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of the real value, squaring only when the two terms have
    /// opposite signs.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        match (sa, sb) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (x, y) if x == y => x,
            (sa, _) => {
                // |a| vs |b|·√d, compared through a² vs b²·d
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * int(self.d);
                match lhs.cmp(&rhs) {
                    Ordering::Equal => Ordering::Equal,
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                }
            }
        }
    }

    fn check_context(&self, other: &Self) -> Result<(), ArithError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(ArithError::RadicandMismatch { left: self.d, right: other.d })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_context(other)?;
        Ok(Self::new(&self.a + &other.a, &self.b + &other.b, self.d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_context(other)?;
        Ok(Self::new(&self.a - &other.a, &self.b - &other.b, self.d))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_context(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * int(self.d);
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::new(a, b, self.d))
    }

    pub fn add_rational(&self, q: &Rational) -> Self {
        Self::new(&self.a + q, self.b.clone(), self.d)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(&self.a * q, &self.b * q, self.d)
    }

    /// `⌊value · scale⌋` for a positive integer `scale`, computed exactly.
    pub fn floor_scaled(&self, scale: &BigInt) -> BigInt {
        let sa = &self.a * Rational::from_integer(scale.clone());
        let sb = &self.b * Rational::from_integer(scale.clone());
        // common denominator q: value·scale = (p + r√d) / q
        let q = num_integer::Integer::lcm(sa.denom(), sb.denom());
        let p = sa.numer() * (&q / sa.denom());
        let r = sb.numer() * (&q / sb.denom());
        let r2d = &r * &r * BigInt::from(self.d);
        let root = r2d.sqrt();
        let exact = &root * &root == r2d;
        let floor_rsqrt = if !r.is_negative() {
            root
        } else if exact {
            -root
        } else {
            -root - BigInt::one()
        };
        floor_div(&(p + floor_rsqrt), &q)
    }

    /// Largest rational `k / scale` not exceeding the value.
    pub fn rational_below(&self, scale: &BigInt) -> Rational {
        Rational::new(self.floor_scaled(scale), scale.clone())
    }

    /// Decimal rendering rounded half-up to `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let half = Rational::new(BigInt::one(), BigInt::from(2) * &scale);
        render_scaled(&self.add_rational(&half).floor_scaled(&scale), digits)
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }
}

/// Exact comparison of two elements of the same ℚ(√d).
pub fn qn_compare(p: &QuadraticNumber, q: &QuadraticNumber) -> Result<Ordering, ArithError> {
    Ok(p.checked_sub(q)?.signum())
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        qn_compare(self, other).ok()
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber::new(-&self.a, -&self.b, self.d)
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for &QuadraticNumber {
            type Output = QuadraticNumber;
            /// Panics on mismatched radicands; use the `checked_*` form to recover.
            fn $method(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                self.$checked(rhs).expect("radicand mismatch")
            }
        }
        impl $tr for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl fmt::Display for QuadraticNumber {
    /// `a`, `b*sqrt(d)` or `a+b*sqrt(d)` with rationals as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use super::rational::rational_string;
        if self.b.is_zero() {
            return write!(f, "{}", rational_string(&self.a));
        }
        let surd = format!("{}*sqrt({})", rational_string(&self.b.abs()), self.d);
        match (self.a.is_zero(), self.b.is_negative()) {
            (true, false) => write!(f, "{surd}"),
            (true, true) => write!(f, "-{surd}"),
            (false, false) => write!(f, "{}+{surd}", rational_string(&self.a)),
            (false, true) => write!(f, "{}-{surd}", rational_string(&self.a)),
        }
    }
}
