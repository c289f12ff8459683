//! Exact scalars and the Pell equation engine.

mod factor;
mod pell;
mod quadratic;
mod rational;

use num_bigint::BigInt;
use thiserror::Error;

pub use factor::{is_prime, prime_factors, Factorization};
pub use pell::{
    certify_minimal, has_pell_parity, pell_bruteforce_oracle, pell_minimal, pell_next,
    pell_solutions, Minimality, PellSolution, PellSolutions, CERTIFY_Y_BOUND,
};
pub use quadratic::{qn_compare, QuadraticNumber};
pub use rational::{
    floor_div, int, is_perfect_square, is_perfect_square_u64, isqrt, parse_rational, rat,
    rational_decimal, rational_sqrt, rational_string, Rational,
};


#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("radicand mismatch: {left} vs {right}")]
    RadicandMismatch { left: u64, right: u64 },
    #[error("d = {0} is a perfect square: the Pell equation has only trivial solutions")]
    SquareRadicand(u64),
    #[error("Pell solutions need x > 0 and y >= 0")]
    NotPositive,
    #[error("({x}, {y}) does not solve x^2 - 4*{d}*y^2 = 1")]
    NotAPellSolution { x: BigInt, y: BigInt, d: u64 },
}
