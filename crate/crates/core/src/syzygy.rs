//! Regularity of `I_p⟨xl⟩` read off from a candidate `h¹`, and the syzygy
//! verdicts that follow from the candidate thresholds.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::arith::{int, pell_minimal, QuadraticNumber, Rational};
use crate::crf::{candidates, CrfCandidate, CrfError, Shape};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SyzygyError {
    #[error("twist must be positive")]
    NonPositiveTwist,
    #[error("d = {0} is a perfect square")]
    SquareRadicand(u64),
    #[error("d must be positive")]
    ZeroRadicand,
    #[error("hard-coded threshold and candidate cross-check disagree for d = {0}: {1}")]
    CrossCheck(u64, String),
    #[error(transparent)]
    Crf(#[from] CrfError),
}

/// Ordered from weakest to strongest; exactly one holds at a given twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RegularityStatus {
    NotGV,
    GVNotMRegular,
    MRegularNotIT0,
    IT0,
}

impl RegularityStatus {
    pub fn label(self) -> &'static str {
        match self {
            RegularityStatus::NotGV => "not_gv",
            RegularityStatus::GVNotMRegular => "gv_not_m_regular",
            RegularityStatus::MRegularNotIT0 => "m_regular_not_it0",
            RegularityStatus::IT0 => "it0",
        }
    }
}

/// GV iff `h¹(x) = 0`; M-regular iff moreover `h¹` is C¹ at `x`; IT(0) iff
/// `h¹` also vanishes on a left neighbourhood, i.e. `x > ε₁`.
pub fn status_at(c: &CrfCandidate, x: &Rational) -> Result<RegularityStatus, SyzygyError> {
    if !x.is_positive() {
        return Err(SyzygyError::NonPositiveTwist);
    }
    let h1 = c.h1();
    if h1.eval(x)?.is_positive() {
        return Ok(RegularityStatus::NotGV);
    }
    let xq = QuadraticNumber::from_rational(x.clone(), c.d);
    let eps = c.epsilon1();
    Ok(match xq.partial_cmp(&eps) {
        Some(Ordering::Greater) => RegularityStatus::IT0,
        Some(Ordering::Equal) if h1.is_c1_at(&eps)? => RegularityStatus::MRegularNotIT0,
        _ => RegularityStatus::GVNotMRegular,
    })
}

/// `m² < d`, i.e. `m < √d`.
pub fn mregular_fraction_test(d: u64, m: u64) -> bool {
    (m as u128) * (m as u128) < d as u128
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TriState {
    Yes,
    /// The available criteria do not apply.
    No,
    /// Holds for some admissible candidates and not for others.
    CandidateDependent,
}

impl TriState {
    pub fn label(self) -> &'static str {
        match self {
            TriState::Yes => "yes",
            TriState::No => "no",
            TriState::CandidateDependent => "candidate_dependent",
        }
    }

    fn from_counts(holding: usize, total: usize) -> Self {
        match holding {
            0 => TriState::No,
            h if h == total => TriState::Yes,
            _ => TriState::CandidateDependent,
        }
    }
}

pub const NS_HYPOTHESIS: &str =
    "assumes D.l is a multiple of l^2 for every divisor class D on the surface";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyVerdict {
    pub d: u64,
    pub basepoint_free: TriState,
    pub projectively_normal: TriState,
    /// Largest `p ≥ 1` for which property `(N_p)` is guaranteed.
    pub np_guaranteed: Option<u64>,
    pub caveats: Vec<String>,
}

/// Projective normality holds from this `d` on.
pub const PROJECTIVE_NORMALITY_FROM: u64 = 7;

/// Largest `p ≥ 1` with `(p + 2)² < d`.
pub fn np_bound(d: u64) -> Option<u64> {
    let mut p = None;
    let mut q = 1u64;
    while ((q + 2) as u128).pow(2) < d as u128 {
        p = Some(q);
        q += 1;
    }
    p
}

fn count_below(cs: &[CrfCandidate], bound: &Rational) -> usize {
    let b = |d| QuadraticNumber::from_rational(bound.clone(), d);
    cs.iter().filter(|c| c.epsilon1() < b(c.d)).count()
}

/// Verdicts over the narrowed candidate set. The hard-coded thresholds are
/// re-derived from the candidates and any disagreement is an error.
pub fn verdict(d: u64) -> Result<SyzygyVerdict, SyzygyError> {
    if d == 0 {
        return Err(SyzygyError::ZeroRadicand);
    }
    let cs = candidates(d, 0, true);
    let n = cs.len();
    let one = int(1);
    let basepoint_free = TriState::from_counts(count_below(&cs, &one), n);

    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let derived_pn = TriState::from_counts(count_below(&cs, &half), n);
    let projectively_normal = if d >= PROJECTIVE_NORMALITY_FROM { TriState::Yes } else { derived_pn };
    if (d >= PROJECTIVE_NORMALITY_FROM) != (derived_pn == TriState::Yes) {
        return Err(SyzygyError::CrossCheck(d, format!("epsilon_1 < 1/2 gives {derived_pn:?}")));
    }

    let np_guaranteed = np_bound(d);
    if let Some(p) = np_guaranteed {
        let x = Rational::new(BigInt::one(), BigInt::from(p + 2));
        for c in &cs {
            if status_at(c, &x)? < RegularityStatus::MRegularNotIT0 {
                return Err(SyzygyError::CrossCheck(d, format!("not M-regular at 1/{}", p + 2)));
            }
        }
    }

    let mut caveats = vec![NS_HYPOTHESIS.to_string()];
    if let Some(s0) = pell_minimal(d) {
        caveats.push(format!(
            "candidate set narrowed to the two smallest Pell solutions; valid in characteristic 0 or p not dividing x0*(x0^2 - 1) with x0 = {}",
            s0.x()
        ));
    }
    if [basepoint_free, projectively_normal].contains(&TriState::CandidateDependent) {
        caveats.push("which epsilon_1 candidate occurs is not determined".to_string());
    }
    if projectively_normal == TriState::No {
        caveats.push("projective normality: no candidate satisfies epsilon_1 < 1/2".to_string());
    }
    Ok(SyzygyVerdict { d, basepoint_free, projectively_normal, np_guaranteed, caveats })
}

/// The arithmetic behind `ε₁ ≤ 1/⌊√d⌋` for non-square `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloorSqrtRecord {
    pub d: u64,
    pub m: u64,
    pub k: u64,
    pub x0: BigInt,
    pub y0: BigInt,
    /// `k·y₀ ≥ m`.
    pub ky0_at_least_m: bool,
    /// `2y₀/(x₀ − 1) ≤ 1/m`.
    pub threshold_at_most_inverse_m: bool,
}

impl FloorSqrtRecord {
    pub fn holds(&self) -> bool {
        self.ky0_at_least_m && self.threshold_at_most_inverse_m
    }
}

pub fn verify_floor_sqrt_inequality(d: u64) -> Result<FloorSqrtRecord, SyzygyError> {
    let s = pell_minimal(d).ok_or(SyzygyError::SquareRadicand(d))?;
    let m = d.sqrt();
    let k = d - m * m;
    let (x0, y0) = (s.x().clone(), s.y().clone());
    let ky0_at_least_m = BigInt::from(k) * &y0 >= BigInt::from(m);
    let threshold = Rational::new(BigInt::from(2) * &y0, &x0 - BigInt::one());
    let threshold_at_most_inverse_m = threshold <= Rational::new(BigInt::one(), BigInt::from(m));
    Ok(FloorSqrtRecord { d, m, k, x0, y0, ky0_at_least_m, threshold_at_most_inverse_m })
}

/// Status at `x` of every narrowed candidate for `d`.
pub fn statuses_at(d: u64, x: &Rational) -> Result<Vec<(Shape, RegularityStatus)>, SyzygyError> {
    candidates(d, 0, true)
        .into_iter()
        .map(|c| Ok((c.shape.clone(), status_at(&c, x)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, PellSolution};
    use crate::crf::{h0_pell_shape, h0_square_shape};

    fn sol(x: i64, y: i64, d: u64) -> PellSolution {
        PellSolution::new(BigInt::from(x), BigInt::from(y), d).unwrap()
    }

    #[test]
    fn status_examples() {
        use RegularityStatus::*;
        assert_eq!(status_at(&h0_square_shape(4), &rat(1, 2)), Ok(GVNotMRegular));
        let c = h0_pell_shape(2, &sol(3, 1, 2)).unwrap();
        assert_eq!(status_at(&c, &int(1)), Ok(MRegularNotIT0));
        assert_eq!(status_at(&c, &rat(3, 4)), Ok(NotGV));
        assert_eq!(status_at(&c, &rat(5, 4)), Ok(IT0));
        let c = h0_pell_shape(7, &sol(127, 24, 7)).unwrap();
        assert_eq!(status_at(&c, &rat(1, 2)), Ok(IT0));
        assert_eq!(status_at(&h0_square_shape(9), &rat(1, 3)), Ok(GVNotMRegular));
        assert_eq!(status_at(&c, &int(0)), Err(SyzygyError::NonPositiveTwist));
        // irrational threshold: never attained by a rational twist
        let t = h0_square_shape(2);
        assert_eq!(status_at(&t, &rat(707, 1000)), Ok(NotGV));
        assert_eq!(status_at(&t, &rat(708, 1000)), Ok(IT0));
    }

    #[test]
    fn fraction_test_examples() {
        assert!(mregular_fraction_test(10, 3));
        assert!(!mregular_fraction_test(9, 3));
        assert!(mregular_fraction_test(50, 7));
    }

    #[test]
    fn square_twists_match_fraction_test() {
        for r in 1..=8u64 {
            let d = r * r;
            let c = h0_square_shape(d);
            for m in 1..=12u64 {
                let s = status_at(&c, &rat(1, m as i64)).unwrap();
                assert_eq!(s >= RegularityStatus::MRegularNotIT0, mregular_fraction_test(d, m));
            }
        }
    }

    #[test]
    fn verdict_examples() {
        let v = verdict(7).unwrap();
        assert_eq!(v.projectively_normal, TriState::Yes);
        assert_eq!(v.np_guaranteed, None);
        assert_eq!(verdict(10).unwrap().np_guaranteed, Some(1));
        assert_eq!(verdict(17).unwrap().np_guaranteed, Some(2));
        assert_eq!(verdict(26).unwrap().np_guaranteed, Some(3));
        assert_eq!(verdict(25).unwrap().np_guaranteed, Some(2));
        let v = verdict(2).unwrap();
        assert_eq!(v.basepoint_free, TriState::CandidateDependent);
        assert_eq!(v.projectively_normal, TriState::No);
        assert_eq!(verdict(1).unwrap().basepoint_free, TriState::No);
        assert_eq!(verdict(4).unwrap().basepoint_free, TriState::Yes);
        assert_eq!(verdict(5).unwrap().projectively_normal, TriState::CandidateDependent);
        assert!(verdict(3).unwrap().caveats.iter().any(|c| c.ends_with("x0 = 7")));
        assert_eq!(verdict(0), Err(SyzygyError::ZeroRadicand));
    }

    #[test]
    fn verdict_cross_checks_hold() {
        let half = rat(1, 2);
        for d in 1..=300u64 {
            let v = verdict(d).unwrap();
            if v.projectively_normal == TriState::Yes {
                for (_, s) in statuses_at(d, &half).unwrap() {
                    assert_eq!(s, RegularityStatus::IT0, "d={d}");
                }
            }
        }
    }

    #[test]
    fn floor_sqrt_examples() {
        let r = verify_floor_sqrt_inequality(7).unwrap();
        assert_eq!((r.m, r.k, r.y0.clone()), (2, 3, BigInt::from(24)));
        assert!(r.holds());
        let r = verify_floor_sqrt_inequality(2).unwrap();
        assert_eq!((r.m, r.k, r.y0.clone()), (1, 1, BigInt::from(1)));
        assert!(r.holds());
        let r = verify_floor_sqrt_inequality(5).unwrap();
        assert_eq!((r.m, r.k, r.x0.clone(), r.y0.clone()), (2, 1, BigInt::from(9), BigInt::from(2)));
        assert!(r.holds());
        assert_eq!(verify_floor_sqrt_inequality(16), Err(SyzygyError::SquareRadicand(16)));
    }

    #[test]
    fn status_is_monotone_on_a_grid() {
        for d in [2u64, 3, 4, 5, 7, 13] {
            for c in candidates(d, 3, false) {
                let mut prev = RegularityStatus::NotGV;
                for i in 1..=400 {
                    let s = status_at(&c, &rat(i, 200)).unwrap();
                    assert!(s >= prev, "d={d} x={i}/200");
                    prev = s;
                }
                assert_eq!(prev, RegularityStatus::IT0);
            }
        }
    }
}
