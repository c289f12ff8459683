//! The Pell equation `x² − 4d·y² = 1`.
//!
//! The fundamental solution comes from the continued fraction of `√(4d)`;
//! [`pell_bruteforce_oracle`] scans `y` directly and shares no code with it.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::is_perfect_square_u64;
use super::ArithError;

/// Oracle certification is attempted for fundamental solutions up to this `y`.
pub const CERTIFY_Y_BOUND: u64 = 1_000_000;

/// A solution of `x² − 4d·y² = 1` with `x ≥ 1`, `y ≥ 0` and `d` not a square.
/// `y = 0` only for the identity `(1, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PellSolution {
    x: BigInt,
    y: BigInt,
    d: u64,
}

impl PellSolution {
    pub fn new(x: BigInt, y: BigInt, d: u64) -> Result<Self, ArithError> {
        if d == 0 || is_perfect_square_u64(d) {
            return Err(ArithError::SquareRadicand(d));
        }
        if !x.is_positive() || y.is_negative() {
            return Err(ArithError::NotPositive);
        }
        if &x * &x - BigInt::from(4) * BigInt::from(d) * &y * &y != BigInt::one() {
            return Err(ArithError::NotAPellSolution { x, y, d });
        }
        Ok(Self { x, y, d })
    }

    /// The identity `(1, 0)`.
    pub fn trivial(d: u64) -> Result<Self, ArithError> {
        Self::new(BigInt::one(), BigInt::zero(), d)
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_trivial(&self) -> bool {
        self.y.is_zero()
    }

    /// Brahmagupta composition `(x, y)·(x', y') = (xx' + 4d·yy', xy' + x'y)`.
    pub fn compose(&self, other: &Self) -> Result<Self, ArithError> {
        if self.d != other.d {
            return Err(ArithError::RadicandMismatch { left: self.d, right: other.d });
        }
        let four_d = BigInt::from(4u64) * BigInt::from(self.d);
        let x = &self.x * &other.x + four_d * &self.y * &other.y;
        let y = &self.x * &other.y + &other.x * &self.y;
        Ok(Self { x, y, d: self.d })
    }
}

/// Continued-fraction expansion of `√(4d)`, stopping at the first convergent
/// `h/k` with `h² − 4d·k² = 1`.
fn fundamental_by_continued_fraction(d: u64) -> (BigInt, BigInt) {
    let radicand = 4u128 * d as u128;
    let a0 = radicand.sqrt();
    let (mut m, mut q, mut a) = (0u128, 1u128, a0);
    let (mut h_prev, mut h) = (BigInt::one(), BigInt::from(a0));
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    let big_rad = BigInt::from(radicand);
    loop {
        if &h * &h - &big_rad * &k * &k == BigInt::one() {
            return (h, k);
        }
        m = q * a - m;
        q = (radicand - m * m) / q;
        a = (a0 + m) / q;
        let h_next = BigInt::from(a) * &h + &h_prev;
        let k_next = BigInt::from(a) * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// Minimal positive solution, or `None` when `d` is a perfect square.
pub fn pell_minimal(d: u64) -> Option<PellSolution> {
    if d == 0 || is_perfect_square_u64(d) {
        return None;
    }
    let (x, y) = fundamental_by_continued_fraction(d);
    Some(PellSolution { x, y, d })
}

/// Composition with the minimal solution; from the identity this enumerates
/// every positive solution in increasing order.
pub fn pell_next(s: &PellSolution) -> Result<PellSolution, ArithError> {
    let minimal = pell_minimal(s.d).ok_or(ArithError::SquareRadicand(s.d))?;
    minimal.compose(s)
}

/// Iterator over the positive solutions, smallest first.
#[derive(Clone, Debug)]
pub struct PellSolutions {
    minimal: PellSolution,
    current: PellSolution,
}

impl Iterator for PellSolutions {
    type Item = PellSolution;

    fn next(&mut self) -> Option<PellSolution> {
        let next = self.minimal.compose(&self.current).expect("same radicand");
        self.current = next.clone();
        Some(next)
    }
}

/// All positive solutions in increasing order; `None` for square `d`.
pub fn pell_solutions(d: u64) -> Option<PellSolutions> {
    let minimal = pell_minimal(d)?;
    let current = PellSolution::trivial(d).ok()?;
    Some(PellSolutions { minimal, current })
}

fn square_root_if_square(n: u128) -> Option<u128> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// Every solution with `1 ≤ y ≤ y_bound`, by testing whether `4d·y² + 1` is a
/// perfect square.
pub fn pell_bruteforce_oracle(d: u64, y_bound: u64) -> Vec<PellSolution> {
    let four_d = 4u128 * d as u128;
    let mut out = Vec::new();
    for y in 1..=y_bound {
        let y = y as u128;
        let x = match y.checked_mul(y).and_then(|s| s.checked_mul(four_d)) {
            Some(v) if v < u128::MAX => square_root_if_square(v + 1).map(BigInt::from),
            _ => {
                let n: BigInt = BigInt::from(four_d) * BigInt::from(y) * BigInt::from(y) + 1u32;
                let r = n.sqrt();
                (&r * &r == n).then_some(r)
            }
        };
        if let Some(x) = x {
            out.push(PellSolution { x, y: BigInt::from(y), d });
        }
    }
    out
}

/// Outcome of checking minimality against the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Minimality {
    /// The oracle's first solution equals the candidate.
    Certified,
    /// `y₀` exceeds [`CERTIFY_Y_BOUND`]; only the equation itself was checked.
    BeyondBound,
    Refuted,
}

pub fn certify_minimal(s: &PellSolution) -> Minimality {
    match s.y.to_u64() {
        Some(y) if y <= CERTIFY_Y_BOUND => {
            match pell_bruteforce_oracle(s.d, y).first() {
                Some(first) if first == s => Minimality::Certified,
                _ => Minimality::Refuted,
            }
        }
        _ => Minimality::BeyondBound,
    }
}

/// `x` odd and `gcd(x, 2y) = 1`, both forced by the equation.
pub fn has_pell_parity(s: &PellSolution) -> bool {
    s.x.is_odd() && s.x.gcd(&(BigInt::from(2) * &s.y)).is_one() && s.x.gcd(&s.y).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sol(x: i64, y: i64, d: u64) -> PellSolution {
        PellSolution::new(BigInt::from(x), BigInt::from(y), d).unwrap()
    }

    #[test]
    fn minimal_examples() {
        assert_eq!(pell_minimal(2), Some(sol(3, 1, 2)));
        assert_eq!(pell_minimal(7), Some(sol(127, 24, 7)));
        assert_eq!(pell_minimal(3), Some(sol(7, 2, 3)));
        assert_eq!(pell_minimal(4), None);
        assert_eq!(pell_minimal(1), None);
    }

    #[test]
    fn large_fundamental_solution() {
        // x² − 172y² = 1; the fundamental solution of x² − 43Y² = 1 has odd Y
        let s = pell_minimal(43).unwrap();
        assert_eq!(s.x(), &BigInt::from(24_248_647u64));
        assert_eq!(s.y(), &BigInt::from(1_848_942u64));
        assert_eq!(certify_minimal(&s), Minimality::BeyondBound);
    }

    #[test]
    fn next_examples() {
        assert_eq!(pell_next(&sol(3, 1, 2)).unwrap(), sol(17, 6, 2));
        assert_eq!(pell_next(&sol(17, 6, 2)).unwrap(), sol(99, 35, 2));
        assert_eq!(pell_next(&PellSolution::trivial(2).unwrap()).unwrap(), sol(3, 1, 2));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(pell_bruteforce_oracle(2, 10), vec![sol(3, 1, 2), sol(17, 6, 2)]);
        assert_eq!(pell_bruteforce_oracle(3, 2), vec![sol(7, 2, 3)]);
        assert!(pell_bruteforce_oracle(2, 0).is_empty());
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            PellSolution::new(BigInt::from(3), BigInt::from(2), 2),
            Err(ArithError::NotAPellSolution { .. })
        ));
        assert_eq!(
            PellSolution::new(BigInt::from(1), BigInt::from(0), 9),
            Err(ArithError::SquareRadicand(9))
        );
        assert_eq!(PellSolution::trivial(4), Err(ArithError::SquareRadicand(4)));
    }

    #[test]
    fn minimal_matches_oracle_and_iterates() {
        for d in (2..=50u64).filter(|&d| !is_perfect_square_u64(d)) {
            let s = pell_minimal(d).unwrap();
            assert!(has_pell_parity(&s), "d={d}");
            assert_ne!(certify_minimal(&s), Minimality::Refuted, "d={d}");
            let mut prev = s.clone();
            for next in pell_solutions(d).unwrap().skip(1).take(5) {
                assert!(next.x() > prev.x() && next.y() > prev.y());
                assert!(has_pell_parity(&next));
                prev = next;
            }
        }
    }
}
