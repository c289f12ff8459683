//! Batch verification over ranges of `d`: every oracle and invariant suite,
//! fanned out in parallel and aggregated in a fixed order.

use std::cmp::Ordering;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith::{
    certify_minimal, has_pell_parity, int, is_perfect_square_u64, pell_bruteforce_oracle,
    pell_solutions, Minimality, QuadraticNumber,
};
use crate::chern::{ideal_point_class, TiltConvention};
use crate::crf::{candidates, completed_square_form, h0_pell_shape, CrfCandidate, Shape};
use crate::syzygy::{verdict, verify_floor_sqrt_inequality};
use crate::theta::{lower_bound_certificate, ThetaContext, ENUMERATION_CAP};
use crate::walls::{
    accumulation_point, enumerate_walls_with, pell_to_pair, scan_agrees_with_pell,
    wall_between_with, wall_endpoints_formula,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Inclusive upper bound on `d` for every suite.
    pub dmax: u64,
    /// Raise the per-suite ceilings.
    pub deep: bool,
    /// Tilt-slope convention used by the wall-geometry suite.
    pub convention: TiltConvention,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { dmax: 1000, deep: false, convention: TiltConvention::Standard }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    PellOracle,
    WallGeometry,
    WallScan,
    CandidateStructure,
    CompletedSquare,
    FloorSqrt,
    SyzygyCrossCheck,
    Theta,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::PellOracle,
        Suite::WallGeometry,
        Suite::WallScan,
        Suite::CandidateStructure,
        Suite::CompletedSquare,
        Suite::FloorSqrt,
        Suite::SyzygyCrossCheck,
        Suite::Theta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PellOracle => "pell-oracle",
            Suite::WallGeometry => "wall-geometry",
            Suite::WallScan => "wall-scan",
            Suite::CandidateStructure => "candidate-structure",
            Suite::CompletedSquare => "completed-square",
            Suite::FloorSqrt => "floor-sqrt",
            Suite::SyzygyCrossCheck => "syzygy-cross-check",
            Suite::Theta => "theta",
        }
    }

    /// Largest `d` the suite visits before `dmax` is applied.
    pub fn ceiling(self, deep: bool) -> u64 {
        match (self, deep) {
            (Suite::PellOracle, false) => 50,
            (Suite::PellOracle, true) => 200,
            (Suite::WallGeometry, false) => 50,
            (Suite::WallGeometry, true) => 200,
            (Suite::WallScan, false) => 10,
            (Suite::WallScan, true) => 30,
            (Suite::CandidateStructure, false) => 50,
            (Suite::CandidateStructure, true) => 200,
            (Suite::CompletedSquare, false) => 200,
            (Suite::CompletedSquare, true) => 1000,
            (Suite::FloorSqrt, false) => u64::MAX,
            (Suite::FloorSqrt, true) => u64::MAX,
            (Suite::SyzygyCrossCheck, false) => 300,
            (Suite::SyzygyCrossCheck, true) => 2000,
            (Suite::Theta, false) => 30,
            (Suite::Theta, true) => 60,
        }
    }
}

/// Solutions per `d` in the wall and candidate suites.
pub const SOLUTIONS_PER_D: usize = 5;
/// `|c|` bound of the exhaustive wall scan.
pub const WALL_SCAN_C_BOUND: u64 = 50;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub suite: Suite,
    pub cases: usize,
    /// First failure in increasing `d`.
    pub first_failure: Option<(u64, String)>,
    pub failures: usize,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    pub fn first_failure(&self) -> Option<(Suite, u64, &str)> {
        self.suites
            .iter()
            .find_map(|s| s.first_failure.as_ref().map(|(d, m)| (s.suite, *d, m.as_str())))
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let status = if s.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{:<20} {status} ({} cases", s.suite.name(), s.cases));
            if s.failures > 0 {
                out.push_str(&format!(", {} failed", s.failures));
            }
            out.push_str(")\n");
        }
        out
    }
}

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn check_pell_oracle(d: u64) -> Outcome {
    let Some(mut sols) = pell_solutions(d) else {
        return ensure(pell_bruteforce_oracle(d, 1000).is_empty(), || {
            "square d has a nontrivial solution".into()
        });
    };
    let s0 = sols.next().expect("infinite");
    ensure(certify_minimal(&s0) != Minimality::Refuted, || format!("oracle refutes {s0:?}"))?;
    ensure(has_pell_parity(&s0), || format!("parity fails for {s0:?}"))?;
    let s1 = sols.next().expect("infinite");
    let (x0, y0, dd) = (s0.x(), s0.y(), BigInt::from(d));
    ensure(s1.x() == &(x0 * x0 + BigInt::from(4) * &dd * y0 * y0), || "x1 mismatch".into())?;
    ensure(s1.y() == &(BigInt::from(2) * x0 * y0), || "y1 mismatch".into())
}

/// Endpoints from the wall computation match `(−2y/(x−1), −2y/(x+1))`, walls
/// nest strictly, and each straddles `−√d/d`.
pub fn check_wall_geometry(d: u64, convention: TiltConvention) -> Outcome {
    let Some(sols) = pell_solutions(d) else {
        return Ok(());
    };
    let ideal = ideal_point_class(d);
    for s in sols.take(SOLUTIONS_PER_D) {
        let pair = pell_to_pair(d, &s).map_err(|e| e.to_string())?;
        let wall = wall_between_with(convention, &ideal, pair.sub())
            .map_err(|e| format!("wall for ({}, {}): {e}", s.x(), s.y()))?;
        let (q, p) = wall.endpoints();
        let (fq, fp) = wall_endpoints_formula(&s);
        ensure((q, p) == (&fq, &fp), || {
            format!("wall for ({}, {}) has endpoints ({q}, {p}), expected ({fq}, {fp})", s.x(), s.y())
        })?;
    }
    let walls = enumerate_walls_with(convention, d, SOLUTIONS_PER_D).map_err(|e| e.to_string())?;
    let limit = accumulation_point(d);
    for pair in walls.windows(2) {
        ensure(pair[1].1.is_strictly_inside(&pair[0].1), || "walls not nested".into())?;
    }
    ensure(walls.iter().all(|(_, w)| w.straddles(&limit)), || "accumulation point outside".into())
}

pub fn check_wall_scan(d: u64) -> Outcome {
    match scan_agrees_with_pell(d, WALL_SCAN_C_BOUND) {
        Ok(true) => Ok(()),
        Ok(false) => Err("scan disagrees with the Pell parametrization".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn check_one_candidate(c: &CrfCandidate) -> Outcome {
    let h0 = &c.h0;
    let h1 = c.h1();
    let what = || format!("{} candidate", c.shape.label());
    ensure(h0.is_continuous(), || format!("{} is discontinuous", what()))?;
    ensure(h0.is_convex() && h0.is_nondecreasing() && h0.is_nonnegative(), || {
        format!("{} fails convexity or monotonicity", what())
    })?;
    ensure(h1.is_nonnegative() && h1.vanishes_exactly_from_last_breakpoint(), || {
        format!("{}: h1 does not vanish exactly from epsilon_1", what())
    })?;
    let pell = matches!(c.shape, Shape::Pell(_));
    for b in h0.breakpoints() {
        let c1 = h0.is_c1_at(b).map_err(|e| e.to_string())?;
        ensure(c1 == pell, || format!("{}: C1 at {b} is {c1}", what()))?;
    }
    Ok(())
}

pub fn check_candidate_structure(d: u64) -> Outcome {
    let cs = candidates(d, SOLUTIONS_PER_D, false);
    if is_perfect_square_u64(d) {
        ensure(cs.len() == 1 && cs[0].epsilon1() == QuadraticNumber::inverse_sqrt(d), || {
            "square d must give the single square shape".into()
        })?;
    }
    cs.iter().try_for_each(check_one_candidate)
}

pub fn check_completed_square(d: u64) -> Outcome {
    let Some(mut sols) = pell_solutions(d) else {
        return Ok(());
    };
    let (s0, s1) = (sols.next().expect("infinite"), sols.next().expect("infinite"));
    let two = int(2);
    let lhs = &two * int(s0.y().clone()) / int(s0.x().clone());
    let rhs = &two * int(s1.y().clone()) / (int(s1.x().clone()) + int(1));
    ensure(lhs == rhs, || format!("2y0/x0 = {lhs} but 2y1/(x1+1) = {rhs}"))?;
    let c1 = h0_pell_shape(d, &s1).map_err(|e| e.to_string())?;
    ensure(c1.h0.pieces()[1] == completed_square_form(&s0), || {
        "middle piece is not d*x0^2*(x - 2y0/x0)^2".into()
    })?;
    let c0 = h0_pell_shape(d, &s0).map_err(|e| e.to_string())?;
    let (e0, e1) = (c0.epsilon1(), c1.epsilon1());
    ensure(
        e1.partial_cmp(&e0) == Some(Ordering::Less)
            && e1.partial_cmp(&QuadraticNumber::inverse_sqrt(d)) == Some(Ordering::Greater),
        || "thresholds are not ordered".into(),
    )
}

pub fn check_floor_sqrt(d: u64) -> Outcome {
    if is_perfect_square_u64(d) {
        return Ok(());
    }
    let r = verify_floor_sqrt_inequality(d).map_err(|e| e.to_string())?;
    ensure(r.holds(), || format!("k*y0 >= m: {}, 2y0/(x0-1) <= 1/m: {}", r.ky0_at_least_m, r.threshold_at_most_inverse_m))
}

pub fn check_syzygy(d: u64) -> Outcome {
    verdict(d).map(|_| ()).map_err(|e| e.to_string())
}

pub fn check_theta(d: u64) -> Outcome {
    if is_perfect_square_u64(d) {
        return Ok(());
    }
    let cert = lower_bound_certificate(d, ENUMERATION_CAP).map_err(|e| e.to_string())?;
    let ctx = ThetaContext::minimal(d).map_err(|e| e.to_string())?;
    let x0_sq = &ctx.x0 * &ctx.x0;
    let two = BigInt::from(2);
    let expected = (
        (&two * &ctx.y0) % &ctx.x0,
        (&two * BigInt::from(d) * &ctx.y0) % &ctx.x0,
    );
    ensure(cert.holds(), || "certificate inequalities fail".into())?;
    ensure(cert.eigenspace_dimension == &x0_sq - 1, || "eigenspace dimension".into())?;
    ensure(cert.commutator_phases == expected, || "commutator phases".into())?;
    ensure(cert.h0_lower_bound == x0_sq, || "lower bound".into())
}

fn run_case(suite: Suite, d: u64, opts: &VerifyOptions) -> Outcome {
    match suite {
        Suite::PellOracle => check_pell_oracle(d),
        Suite::WallGeometry => check_wall_geometry(d, opts.convention),
        Suite::WallScan => check_wall_scan(d),
        Suite::CandidateStructure => check_candidate_structure(d),
        Suite::CompletedSquare => check_completed_square(d),
        Suite::FloorSqrt => check_floor_sqrt(d),
        Suite::SyzygyCrossCheck => check_syzygy(d),
        Suite::Theta => check_theta(d),
    }
}

/// Every suite over `1 ≤ d ≤ min(dmax, ceiling)`. Results do not depend on
/// scheduling.
pub fn run(opts: &VerifyOptions) -> VerifyReport {
    let jobs: Vec<(Suite, u64)> = Suite::ALL
        .iter()
        .flat_map(|&s| (1..=opts.dmax.min(s.ceiling(opts.deep))).map(move |d| (s, d)))
        .collect();
    let outcomes: Vec<Outcome> = jobs.par_iter().map(|&(s, d)| run_case(s, d, opts)).collect();
    let suites = Suite::ALL
        .iter()
        .map(|&suite| {
            let mine: Vec<(u64, &Outcome)> = jobs
                .iter()
                .zip(&outcomes)
                .filter(|((s, _), _)| *s == suite)
                .map(|((_, d), o)| (*d, o))
                .collect();
            let first_failure =
                mine.iter().find_map(|(d, o)| o.as_ref().err().map(|m| (*d, m.clone())));
            SuiteResult {
                suite,
                cases: mine.len(),
                failures: mine.iter().filter(|(_, o)| o.is_err()).count(),
                first_failure,
            }
        })
        .collect();
    VerifyReport { suites }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn desk_scale_run_passes() {
        let r = run(&VerifyOptions { dmax: 50, ..Default::default() });
        assert!(r.passed(), "{}", r.summary());
        let floor = r.suites.iter().find(|s| s.suite == Suite::FloorSqrt).unwrap();
        assert_eq!(floor.cases, 50);
    }

    #[test]
    fn small_range() {
        let r = run(&VerifyOptions { dmax: 2, ..Default::default() });
        assert!(r.passed());
        assert!(r.suites.iter().all(|s| s.cases == 2));
    }

    #[test]
    fn sign_flipped_convention_is_caught() {
        for convention in [TiltConvention::FlippedBeta, TiltConvention::FlippedAlphaSquared] {
            let r = run(&VerifyOptions { dmax: 10, deep: false, convention });
            assert!(!r.passed());
            let (suite, d, _) = r.first_failure().unwrap();
            assert_eq!((suite, d), (Suite::WallGeometry, 2));
        }
    }
}
