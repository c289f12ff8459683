//! Exact piecewise quadratics on `x ≥ 0` with breakpoints in ℚ(√d).

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::CrfError;
use crate::arith::{int, QuadraticNumber, Rational};

/// `a2·x² + a1·x + a0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticPolynomial {
    pub a2: Rational,
    pub a1: Rational,
    pub a0: Rational,
}

impl QuadraticPolynomial {
    pub fn new(a2: Rational, a1: Rational, a0: Rational) -> Self {
        Self { a2, a1, a0 }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a2.is_zero() && self.a1.is_zero() && self.a0.is_zero()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        (&self.a2 * x + &self.a1) * x + &self.a0
    }

    pub fn eval_qn(&self, x: &QuadraticNumber) -> QuadraticNumber {
        let lead = x.scale(&self.a2).add_rational(&self.a1);
        (&lead * x).add_rational(&self.a0)
    }

    pub fn derivative(&self) -> QuadraticPolynomial {
        Self::new(Rational::zero(), &self.a2 * int(2), self.a1.clone())
    }

    /// Critical point `−a1 / (2·a2)` of a genuine quadratic.
    pub fn vertex(&self) -> Option<Rational> {
        (!self.a2.is_zero()).then(|| -&self.a1 / (&self.a2 * int(2)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.a2 - &other.a2, &self.a1 - &other.a1, &self.a0 - &other.a0)
    }
}

/// Pieces `p_0, …, p_n` on `[0, b_1), [b_1, b_2), …, [b_n, ∞)`.
///
/// Breakpoints are strictly increasing and positive; adjacent pieces agree
/// at each breakpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewisePolynomial {
    d: u64,
    breakpoints: Vec<QuadraticNumber>,
    pieces: Vec<QuadraticPolynomial>,
}

impl PiecewisePolynomial {
    pub fn new(
        d: u64,
        breakpoints: Vec<QuadraticNumber>,
        pieces: Vec<QuadraticPolynomial>,
    ) -> Result<Self, CrfError> {
        if pieces.len() != breakpoints.len() + 1 {
            return Err(CrfError::PieceCount { breakpoints: breakpoints.len(), pieces: pieces.len() });
        }
        if let Some(b) = breakpoints.iter().find(|b| b.radicand() != d) {
            return Err(CrfError::RadicandMismatch { expected: d, found: b.radicand() });
        }
        let zero = QuadraticNumber::from_rational(Rational::zero(), d);
        let mut prev = &zero;
        for b in &breakpoints {
            if b.partial_cmp(prev) != Some(Ordering::Greater) {
                return Err(CrfError::BreakpointsNotIncreasing);
            }
            prev = b;
        }
        let f = Self { d, breakpoints, pieces };
        if let Some(i) = (0..f.breakpoints.len()).find(|&i| !f.is_continuous_at_index(i)) {
            return Err(CrfError::Discontinuous(f.breakpoints[i].to_string()));
        }
        Ok(f)
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn breakpoints(&self) -> &[QuadraticNumber] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[QuadraticPolynomial] {
        &self.pieces
    }

    fn qn(&self, x: &Rational) -> QuadraticNumber {
        QuadraticNumber::from_rational(x.clone(), self.d)
    }

    /// Index of the piece owning `x` under the half-open convention.
    pub fn piece_index(&self, x: &QuadraticNumber) -> usize {
        self.breakpoints
            .iter()
            .take_while(|b| b.partial_cmp(&x) != Some(Ordering::Greater))
            .count()
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, CrfError> {
        if x.is_negative() {
            return Err(CrfError::OutsideDomain);
        }
        Ok(self.pieces[self.piece_index(&self.qn(x))].eval(x))
    }

    pub fn eval_qn(&self, x: &QuadraticNumber) -> Result<QuadraticNumber, CrfError> {
        if x.radicand() != self.d {
            return Err(CrfError::RadicandMismatch { expected: self.d, found: x.radicand() });
        }
        if x.signum() == Ordering::Less {
            return Err(CrfError::OutsideDomain);
        }
        Ok(self.pieces[self.piece_index(x)].eval_qn(x))
    }

    pub fn breakpoint_index(&self, x: &QuadraticNumber) -> Option<usize> {
        self.breakpoints.iter().position(|b| b == x)
    }

    fn is_continuous_at_index(&self, i: usize) -> bool {
        let b = &self.breakpoints[i];
        self.pieces[i].eval_qn(b) == self.pieces[i + 1].eval_qn(b)
    }

    pub fn is_continuous(&self) -> bool {
        (0..self.breakpoints.len()).all(|i| self.is_continuous_at_index(i))
    }

    /// Left and right derivatives at a breakpoint.
    pub fn one_sided_derivatives(
        &self,
        x0: &QuadraticNumber,
    ) -> Result<(QuadraticNumber, QuadraticNumber), CrfError> {
        let i = self.breakpoint_index(x0).ok_or_else(|| CrfError::NotABreakpoint(x0.to_string()))?;
        Ok((self.pieces[i].derivative().eval_qn(x0), self.pieces[i + 1].derivative().eval_qn(x0)))
    }

    /// Values and first derivatives of the adjacent pieces agree at `x0`.
    pub fn is_c1_at(&self, x0: &QuadraticNumber) -> Result<bool, CrfError> {
        let i = self.breakpoint_index(x0).ok_or_else(|| CrfError::NotABreakpoint(x0.to_string()))?;
        let (left, right) = self.one_sided_derivatives(x0)?;
        Ok(self.is_continuous_at_index(i) && left == right)
    }

    /// Pointwise `self − p`.
    pub fn minus(&self, p: &QuadraticPolynomial) -> Self {
        Self {
            d: self.d,
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|q| q.sub(p)).collect(),
        }
    }

    /// Domain of piece `i`: `[lo, hi)` with `hi = None` for the last piece.
    pub fn piece_bounds(&self, i: usize) -> (QuadraticNumber, Option<QuadraticNumber>) {
        let lo = if i == 0 { self.qn(&Rational::zero()) } else { self.breakpoints[i - 1].clone() };
        (lo, self.breakpoints.get(i).cloned())
    }

    /// Vertex of piece `i` when it lies strictly inside the piece's domain.
    fn interior_vertex(&self, i: usize) -> Option<QuadraticNumber> {
        let v = self.qn(&self.pieces[i].vertex()?);
        let (lo, hi) = self.piece_bounds(i);
        let above_lo = v > lo;
        let below_hi = hi.map_or(true, |h| v < h);
        (above_lo && below_hi).then_some(v)
    }

    /// Bounded below by `0` on the unbounded last piece, given its value at `lo`.
    fn tail_stays_nonnegative(p: &QuadraticPolynomial) -> bool {
        p.a2.is_positive() || (p.a2.is_zero() && !p.a1.is_negative())
    }

    /// `f ≥ 0` on all of `x ≥ 0`, by endpoint and vertex analysis per piece.
    pub fn is_nonnegative(&self) -> bool {
        (0..self.pieces.len()).all(|i| {
            let p = &self.pieces[i];
            let (lo, hi) = self.piece_bounds(i);
            let nonneg = |x: &QuadraticNumber| p.eval_qn(x).signum() != Ordering::Less;
            nonneg(&lo)
                && hi.as_ref().map_or_else(|| Self::tail_stays_nonnegative(p), nonneg)
                && self.interior_vertex(i).as_ref().map_or(true, nonneg)
        })
    }

    /// `f > 0` on `[0, x0)` and `f ≡ 0` on `[x0, ∞)`, where `x0` is the last breakpoint.
    pub fn vanishes_exactly_from_last_breakpoint(&self) -> bool {
        let last = self.pieces.len() - 1;
        if !self.pieces[last].is_zero() {
            return false;
        }
        (0..last).all(|i| {
            let p = &self.pieces[i];
            let (lo, hi) = self.piece_bounds(i);
            let hi = hi.expect("not the last piece");
            p.eval_qn(&lo).signum() == Ordering::Greater
                && p.eval_qn(&hi).signum() != Ordering::Less
                && self
                    .interior_vertex(i)
                    .map_or(true, |v| p.eval_qn(&v).signum() == Ordering::Greater)
        })
    }

    /// `f' ≥ 0` everywhere on `x ≥ 0`.
    pub fn is_nondecreasing(&self) -> bool {
        (0..self.pieces.len()).all(|i| {
            let dp = self.pieces[i].derivative();
            let (lo, hi) = self.piece_bounds(i);
            let nonneg = |x: &QuadraticNumber| dp.eval_qn(x).signum() != Ordering::Less;
            nonneg(&lo) && hi.as_ref().map_or(!self.pieces[i].a2.is_negative(), nonneg)
        })
    }

    /// Each piece convex and no downward kink at any breakpoint.
    pub fn is_convex(&self) -> bool {
        self.pieces.iter().all(|p| !p.a2.is_negative())
            && self.breakpoints.iter().all(|b| {
                let (l, r) = self.one_sided_derivatives(b).expect("own breakpoint");
                l.partial_cmp(&r) != Some(Ordering::Greater)
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn poly(a2: i64, a1: i64, a0: i64) -> QuadraticPolynomial {
        QuadraticPolynomial::new(int(a2), int(a1), int(a0))
    }

    fn q(x: Rational, d: u64) -> QuadraticNumber {
        QuadraticNumber::from_rational(x, d)
    }

    #[test]
    fn rejects_malformed_functions() {
        assert!(matches!(
            PiecewisePolynomial::new(2, vec![], vec![poly(0, 0, 0), poly(1, 0, 0)]),
            Err(CrfError::PieceCount { .. })
        ));
        assert_eq!(
            PiecewisePolynomial::new(
                2,
                vec![q(int(1), 2), q(rat(1, 2), 2)],
                vec![poly(0, 0, 0), poly(0, 0, 0), poly(0, 0, 0)]
            ),
            Err(CrfError::BreakpointsNotIncreasing)
        );
        assert!(matches!(
            PiecewisePolynomial::new(2, vec![q(int(1), 2)], vec![poly(0, 0, 0), poly(0, 0, 1)]),
            Err(CrfError::Discontinuous(_))
        ));
    }

    #[test]
    fn half_open_evaluation() {
        // |x − 1| style kink: 0 then x − 1
        let f = PiecewisePolynomial::new(3, vec![q(int(1), 3)], vec![poly(0, 0, 0), poly(0, 1, -1)])
            .unwrap();
        assert_eq!(f.piece_index(&q(int(1), 3)), 1);
        assert_eq!(f.piece_index(&q(rat(1, 2), 3)), 0);
        assert_eq!(f.eval(&int(3)).unwrap(), int(2));
        assert_eq!(f.eval(&int(-1)), Err(CrfError::OutsideDomain));
        assert_eq!(f.is_c1_at(&q(int(1), 3)), Ok(false));
        assert!(matches!(f.is_c1_at(&q(int(2), 3)), Err(CrfError::NotABreakpoint(_))));
    }

    #[test]
    fn shape_predicates() {
        // 1 − x² on [0, 1) then 0: nonnegative, not nondecreasing, not convex
        let f = PiecewisePolynomial::new(2, vec![q(int(1), 2)], vec![poly(-1, 0, 1), poly(0, 0, 0)])
            .unwrap();
        assert!(f.is_nonnegative());
        assert!(!f.is_nondecreasing());
        assert!(!f.is_convex());
        assert!(f.vanishes_exactly_from_last_breakpoint());

        // (x − 1)² on [0, 2) then 2x − 3: dips to zero inside the first piece
        let g = PiecewisePolynomial::new(2, vec![q(int(2), 2)], vec![poly(1, -2, 1), poly(0, 2, -3)])
            .unwrap();
        assert!(g.is_nonnegative());
        assert!(!g.vanishes_exactly_from_last_breakpoint());

        // x² − 1 is negative near 0
        let h = PiecewisePolynomial::new(2, vec![], vec![poly(1, 0, -1)]).unwrap();
        assert!(!h.is_nonnegative());
        assert!(h.is_nondecreasing() && h.is_convex());
    }
}
