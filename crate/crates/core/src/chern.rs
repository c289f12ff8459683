//! Numerical classes `v = (l²·ch₀, l·ch₁, ch₂)` on a `(1, d)`-polarized
//! abelian surface and the slope functions built from them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{int, Rational};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ChernError {
    #[error("tilt slope is undefined: real and imaginary parts of the central charge both vanish")]
    Degenerate,
    #[error("t = alpha^2 must be nonnegative")]
    NegativeAlphaSquared,
}

/// `(v0, v1, v2)` with `v0 = l²·ch₀`, `v1 = l·ch₁` and `v2 = ch₂`, where `l² = 2d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChernVector {
    pub v0: BigInt,
    pub v1: BigInt,
    pub v2: Rational,
    pub d: u64,
}

impl ChernVector {
    pub fn new(v0: impl Into<BigInt>, v1: impl Into<BigInt>, v2: Rational, d: u64) -> Self {
        Self { v0: v0.into(), v1: v1.into(), v2, d }
    }

    pub fn from_ints(v0: i64, v1: i64, v2: i64, d: u64) -> Self {
        Self::new(v0, v1, int(v2), d)
    }

    /// `l² = 2d` divides both `v0` and `v1`.
    pub fn satisfies_divisibility(&self) -> bool {
        let l2 = BigInt::from(2 * self.d);
        self.v0.is_multiple_of(&l2) && self.v1.is_multiple_of(&l2)
    }

    pub fn v2_is_integral(&self) -> bool {
        self.v2.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.v0.is_zero() && self.v1.is_zero() && self.v2.is_zero()
    }

    /// True iff one class is a rational multiple of the other.
    pub fn is_proportional_to(&self, other: &Self) -> bool {
        let (a0, a1, a2) = (int(self.v0.clone()), int(self.v1.clone()), self.v2.clone());
        let (b0, b1, b2) = (int(other.v0.clone()), int(other.v1.clone()), other.v2.clone());
        &a0 * &b1 == &a1 * &b0 && &a0 * &b2 == &a2 * &b0 && &a1 * &b2 == &a2 * &b1
    }
}

impl fmt::Display for ChernVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.v0, self.v1, crate::arith::rational_string(&self.v2))
    }
}

impl Add for &ChernVector {
    type Output = ChernVector;
    fn add(self, rhs: &ChernVector) -> ChernVector {
        assert_eq!(self.d, rhs.d, "polarization mismatch");
        ChernVector::new(&self.v0 + &rhs.v0, &self.v1 + &rhs.v1, &self.v2 + &rhs.v2, self.d)
    }
}

impl Sub for &ChernVector {
    type Output = ChernVector;
    fn sub(self, rhs: &ChernVector) -> ChernVector {
        self + &(-rhs)
    }
}

impl Neg for &ChernVector {
    type Output = ChernVector;
    fn neg(self) -> ChernVector {
        ChernVector::new(-&self.v0, -&self.v1, -&self.v2, self.d)
    }
}

impl Mul<&ChernVector> for &BigInt {
    type Output = ChernVector;
    fn mul(self, rhs: &ChernVector) -> ChernVector {
        ChernVector::new(self * &rhs.v0, self * &rhs.v1, int(self.clone()) * &rhs.v2, rhs.d)
    }
}

/// A slope that may be `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SlopeValue {
    Finite(Rational),
    PlusInfinity,
}

impl SlopeValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            SlopeValue::Finite(q) => Some(q),
            SlopeValue::PlusInfinity => None,
        }
    }
}

/// `Δ(v) = v1² − 2·v0·v2`.
pub fn discriminant(v: &ChernVector) -> Rational {
    int(&v.v1 * &v.v1) - int(BigInt::from(2) * &v.v0) * &v.v2
}

/// `v = (2d, 0, −1)`: `ch = (1, 0, −1)` with `l² = 2d`.
pub fn ideal_point_class(d: u64) -> ChernVector {
    ChernVector::from_ints(2 * d as i64, 0, -1, d)
}

/// `μ_l = v1 / v0`, or `+∞` for rank-zero classes.
pub fn slope(v: &ChernVector) -> SlopeValue {
    if v.v0.is_zero() {
        SlopeValue::PlusInfinity
    } else {
        SlopeValue::Finite(Rational::new(v.v1.clone(), v.v0.clone()))
    }
}

/// Riemann–Roch on an abelian surface: `χ(v ⊗ xl) = (x²/2)·v0 + x·v1 + v2`.
pub fn chi_twist(v: &ChernVector, x: &Rational) -> Rational {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    half * x * x * int(v.v0.clone()) + x * int(v.v1.clone()) + &v.v2
}

/// Which central-charge convention to evaluate the tilt slope with.
///
/// Only [`TiltConvention::Standard`] reproduces the wall endpoints of the
/// ideal-point class; the other variants exist so that the wall-endpoint
/// check can be shown to reject them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TiltConvention {
    #[default]
    Standard,
    /// `β ↦ −β` inside the twist.
    FlippedBeta,
    /// `(β² + t)/2` instead of `(β² − t)/2`.
    FlippedAlphaSquared,
}

impl TiltConvention {
    /// Real-part numerator `N(β, t)` and imaginary part `D(β)`.
    pub(crate) fn parts(
        self,
        v: &ChernVector,
        beta: &Rational,
        t: &Rational,
    ) -> (Rational, Rational) {
        let (v0, v1) = (int(v.v0.clone()), int(v.v1.clone()));
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let (b, tt) = match self {
            TiltConvention::Standard => (beta.clone(), t.clone()),
            TiltConvention::FlippedBeta => (-beta, t.clone()),
            TiltConvention::FlippedAlphaSquared => (beta.clone(), -t),
        };
        let num = &v.v2 - &b * &v1 + half * (&b * &b - tt) * &v0;
        let den = v1 - b * v0;
        (num, den)
    }
}

/// `ν_{α,β}(v) = [v2 − β·v1 + ((β² − t)/2)·v0] / (v1 − β·v0)` with `t = α²`.
pub fn tilt_nu(v: &ChernVector, beta: &Rational, t: &Rational) -> Result<SlopeValue, ChernError> {
    tilt_nu_with(TiltConvention::Standard, v, beta, t)
}

pub fn tilt_nu_with(
    convention: TiltConvention,
    v: &ChernVector,
    beta: &Rational,
    t: &Rational,
) -> Result<SlopeValue, ChernError> {
    if t.is_negative() {
        return Err(ChernError::NegativeAlphaSquared);
    }
    let (num, den) = convention.parts(v, beta, t);
    match (num.is_zero(), den.is_zero()) {
        (true, true) => Err(ChernError::Degenerate),
        (false, true) => Ok(SlopeValue::PlusInfinity),
        _ => Ok(SlopeValue::Finite(num / den)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn cv(v0: i64, v1: i64, v2: i64, d: u64) -> ChernVector {
        ChernVector::from_ints(v0, v1, v2, d)
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&cv(4, 0, -1, 2)), int(8));
        assert_eq!(discriminant(&cv(8, -4, 1, 2)), int(0));
        assert_eq!(discriminant(&cv(0, 0, 1, 2)), int(0));
        assert_eq!(discriminant(&ideal_point_class(7)), int(28));
    }

    #[test]
    fn ideal_point_examples() {
        assert_eq!(ideal_point_class(2), cv(4, 0, -1, 2));
        assert_eq!(ideal_point_class(1), cv(2, 0, -1, 1));
        assert_eq!(ideal_point_class(7), cv(14, 0, -1, 7));
        assert!(ideal_point_class(5).satisfies_divisibility());
    }

    #[test]
    fn slope_examples() {
        assert_eq!(slope(&cv(8, -4, 1, 2)), SlopeValue::Finite(rat(-1, 2)));
        assert_eq!(slope(&cv(4, 0, -1, 2)), SlopeValue::Finite(int(0)));
        assert_eq!(slope(&cv(0, 4, -2, 2)), SlopeValue::PlusInfinity);
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi_twist(&cv(4, 0, -1, 2), &int(1)), int(1));
        assert_eq!(chi_twist(&cv(4, 0, -1, 2), &int(0)), int(-1));
        assert_eq!(chi_twist(&cv(8, -4, 1, 2), &rat(1, 2)), int(0));
    }

    #[test]
    fn tilt_examples() {
        let (beta, t) = (rat(-3, 4), rat(1, 16));
        assert_eq!(tilt_nu(&cv(4, 0, -1, 2), &beta, &t), Ok(SlopeValue::Finite(int(0))));
        assert_eq!(tilt_nu(&cv(8, -4, 1, 2), &beta, &t), Ok(SlopeValue::Finite(int(0))));
        assert_eq!(tilt_nu(&cv(8, -4, 1, 2), &rat(-1, 2), &int(0)), Err(ChernError::Degenerate));
        assert_eq!(tilt_nu(&cv(4, 0, -1, 2), &int(0), &int(0)), Ok(SlopeValue::PlusInfinity));
        assert_eq!(
            tilt_nu(&cv(4, 0, -1, 2), &int(0), &int(-1)),
            Err(ChernError::NegativeAlphaSquared)
        );
    }

    #[test]
    fn chi_of_ideal_point_is_dx2_minus_1() {
        // compare coefficients by evaluating at three points
        for d in 1..=30u64 {
            let v = ideal_point_class(d);
            let f = |x: &Rational| chi_twist(&v, x);
            let c0 = f(&int(0));
            let c_sum = f(&int(1));
            let c_alt = f(&int(-1));
            let a2 = (&c_sum + &c_alt) / int(2) - &c0;
            let a1 = (&c_sum - &c_alt) / int(2);
            assert_eq!((a2, a1, c0), (int(d as i64), int(0), int(-1)));
        }
    }

    proptest! {
        #[test]
        fn discriminant_is_quadratic(v0 in -200i64..200, v1 in -200i64..200, v2n in -200i64..200, v2d in 1i64..4, k in -20i64..20) {
            let v = ChernVector::new(v0, v1, rat(v2n, v2d), 3);
            let kv = &BigInt::from(k) * &v;
            prop_assert_eq!(discriminant(&kv), int(k * k) * discriminant(&v));
        }

        #[test]
        fn nu_at_own_slope_and_zero_alpha(v0 in 1i64..100, v1 in -100i64..100, v2n in -100i64..100, v2d in 1i64..3) {
            let v = ChernVector::new(v0, v1, rat(v2n, v2d), 2);
            let beta = rat(v1, v0);
            let got = tilt_nu(&v, &beta, &int(0));
            if discriminant(&v).is_zero() {
                prop_assert_eq!(got, Err(ChernError::Degenerate));
            } else {
                prop_assert_eq!(got, Ok(SlopeValue::PlusInfinity));
            }
        }
    }
}
