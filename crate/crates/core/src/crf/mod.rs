//! Candidate cohomological rank functions `h⁰` and `h¹` of the ideal sheaf of
//! a point, their threshold `ε₁`, and the narrowing of the candidate set.
//!
//! Every function here is continuous and piecewise quadratic on `x ≥ 0`, with
//! `h⁰ ≡ 0` near the origin and `h⁰(x) = d·x² − 1` past the last breakpoint.

mod piecewise;

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{
    int, pell_minimal, pell_solutions, prime_factors, ArithError, Factorization, PellSolution,
    QuadraticNumber, Rational,
};

pub use piecewise::{PiecewisePolynomial, QuadraticPolynomial};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CrfError {
    #[error("{0} is not a breakpoint")]
    NotABreakpoint(String),
    #[error("{pieces} pieces do not fit {breakpoints} breakpoints")]
    PieceCount { breakpoints: usize, pieces: usize },
    #[error("breakpoints must be positive and strictly increasing")]
    BreakpointsNotIncreasing,
    #[error("adjacent pieces disagree at {0}")]
    Discontinuous(String),
    #[error("expected radicand {expected}, found {found}")]
    RadicandMismatch { expected: u64, found: u64 },
    #[error("argument lies outside x >= 0")]
    OutsideDomain,
    #[error("the trivial solution does not define a Pell-shaped candidate")]
    TrivialSolution,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Which of the admissible function tables a candidate follows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    PerfectSquare,
    Trivial,
    Pell(PellSolution),
}

impl Shape {
    pub fn label(&self) -> &'static str {
        match self {
            Shape::PerfectSquare => "perfect_square",
            Shape::Trivial => "trivial",
            Shape::Pell(_) => "pell",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrfCandidate {
    pub d: u64,
    pub shape: Shape,
    pub h0: PiecewisePolynomial,
}

impl CrfCandidate {
    pub fn h1(&self) -> PiecewisePolynomial {
        h1_of(self)
    }

    pub fn epsilon1(&self) -> QuadraticNumber {
        epsilon1_of(self)
    }
}

/// `χ(I_p ⊗ xl) = d·x² − 1`.
pub fn chi_polynomial(d: u64) -> QuadraticPolynomial {
    QuadraticPolynomial::new(int(d), Rational::zero(), int(-1))
}

fn square_like(d: u64, shape: Shape) -> CrfCandidate {
    let h0 = PiecewisePolynomial::new(
        d,
        vec![QuadraticNumber::inverse_sqrt(d)],
        vec![QuadraticPolynomial::zero(), chi_polynomial(d)],
    )
    .expect("d·x² − 1 vanishes at 1/√d");
    CrfCandidate { d, shape, h0 }
}

/// `0` on `[0, √d/d]`, `d·x² − 1` beyond. For non-square `d` this is the
/// trivial-shape candidate.
pub fn h0_square_shape(d: u64) -> CrfCandidate {
    assert!(d >= 1, "d must be positive");
    let r = num_integer::Roots::sqrt(&d);
    let shape = if r * r == d { Shape::PerfectSquare } else { Shape::Trivial };
    square_like(d, shape)
}

/// `0`, then `d(x+1)/2·t² − 2dy·t + (x−1)/2`, then `d·t² − 1`, with
/// breakpoints `2y/(x+1) < 2y/(x−1)`.
pub fn h0_pell_shape(d: u64, s: &PellSolution) -> Result<CrfCandidate, CrfError> {
    if s.d() != d {
        return Err(CrfError::RadicandMismatch { expected: d, found: s.d() });
    }
    if s.is_trivial() {
        return Err(CrfError::TrivialSolution);
    }
    let (x, y) = (int(s.x().clone()), int(s.y().clone()));
    let dd = int(d);
    let two = int(2);
    let middle = QuadraticPolynomial::new(
        &dd * (&x + int(1)) / &two,
        -(&two * &dd * &y),
        (&x - int(1)) / &two,
    );
    let lo = &two * &y / (&x + int(1));
    let hi = &two * &y / (&x - int(1));
    let h0 = PiecewisePolynomial::new(
        d,
        vec![QuadraticNumber::from_rational(lo, d), QuadraticNumber::from_rational(hi, d)],
        vec![QuadraticPolynomial::zero(), middle, chi_polynomial(d)],
    )?;
    Ok(CrfCandidate { d, shape: Shape::Pell(s.clone()), h0 })
}

/// `h¹ = h⁰ − χ` on `x ≥ 0`.
pub fn h1_of(c: &CrfCandidate) -> PiecewisePolynomial {
    c.h0.minus(&chi_polynomial(c.d))
}

/// The last breakpoint, from which `h¹` vanishes identically.
pub fn epsilon1_of(c: &CrfCandidate) -> QuadraticNumber {
    c.h0.breakpoints().last().expect("every candidate has a breakpoint").clone()
}

pub fn is_c1_at(f: &PiecewisePolynomial, x0: &QuadraticNumber) -> Result<bool, CrfError> {
    f.is_c1_at(x0)
}

/// Perfect squares admit only the square shape. Otherwise the trivial shape
/// and the first `n_solutions` Pell shapes, or with narrowing exactly the
/// shapes of the two smallest solutions.
pub fn candidates(d: u64, n_solutions: usize, apply_char_narrowing: bool) -> Vec<CrfCandidate> {
    let Some(solutions) = pell_solutions(d) else {
        return vec![h0_square_shape(d)];
    };
    let pell = |s: PellSolution| h0_pell_shape(d, &s).expect("nontrivial solution for this d");
    if apply_char_narrowing {
        solutions.take(2).map(pell).collect()
    } else {
        std::iter::once(h0_square_shape(d)).chain(solutions.take(n_solutions).map(pell)).collect()
    }
}

/// Primes dividing `x₀` or `x₀² − 1`, with `x₀` from the minimal solution.
pub fn excluded_characteristics(d: u64) -> Result<Factorization, CrfError> {
    let s0 = pell_minimal(d).ok_or(ArithError::SquareRadicand(d))?;
    let x0 = s0.x().to_biguint().expect("x₀ > 0");
    let mut out = Factorization::default();
    for n in [&x0 - BigUint::one(), x0.clone(), &x0 + BigUint::one()] {
        let f = prime_factors(&n);
        out.primes.extend(f.primes);
        out.unfactored.extend(f.unfactored);
    }
    Ok(out)
}

pub fn excluded_primes(d: u64) -> Result<BTreeSet<BigUint>, CrfError> {
    Ok(excluded_characteristics(d)?.primes)
}

/// `d·x₀²·(t − 2y₀/x₀)²` expanded, which is the middle piece of the
/// candidate for the second solution.
pub fn completed_square_form(s0: &PellSolution) -> QuadraticPolynomial {
    let d = BigInt::from(s0.d());
    let (x, y) = (s0.x(), s0.y());
    QuadraticPolynomial::new(
        int(&d * x * x),
        int(-BigInt::from(4) * &d * x * y),
        int(BigInt::from(4) * &d * y * y),
    )
}
