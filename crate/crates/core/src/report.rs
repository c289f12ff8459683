//! Per-`d` report in a serializable wire form. Rationals travel as
//! `{"num", "den"}` strings and elements of ℚ(√d) as `{"a", "b", "rad"}`, so
//! the JSON round-trips without loss.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{
    certify_minimal, pell_solutions, rational_string, Minimality, PellSolution, QuadraticNumber,
    Rational,
};
use crate::crf::{candidates, excluded_characteristics, CrfCandidate, CrfError, QuadraticPolynomial, Shape};
use crate::syzygy::{verdict, SyzygyError, SyzygyVerdict};
use crate::theta::{lower_bound_certificate, LowerBoundCertificate, ThetaError, ENUMERATION_CAP};
use crate::walls::{accumulation_point, enumerate_walls, Wall, WallError};

/// Digits after the decimal point in every decimal rendering.
pub const DECIMAL_DIGITS: usize = 12;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ReportError {
    #[error("d must be a positive integer")]
    ZeroRadicand,
    #[error("malformed wire value: {0}")]
    Wire(String),
    #[error(transparent)]
    Crf(#[from] CrfError),
    #[error(transparent)]
    Walls(#[from] WallError),
    #[error(transparent)]
    Syzygy(#[from] SyzygyError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireRational {
    pub num: String,
    pub den: String,
}

impl WireRational {
    pub fn to_rational(&self) -> Result<Rational, ReportError> {
        let parse = |s: &str| s.parse::<BigInt>().map_err(|_| ReportError::Wire(s.to_string()));
        let (n, d) = (parse(&self.num)?, parse(&self.den)?);
        if d <= BigInt::from(0) {
            return Err(ReportError::Wire(format!("denominator {d}")));
        }
        Ok(Rational::new(n, d))
    }
}

impl From<&Rational> for WireRational {
    fn from(q: &Rational) -> Self {
        Self { num: q.numer().to_string(), den: q.denom().to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireQuadratic {
    pub a: WireRational,
    pub b: WireRational,
    pub rad: u64,
    /// Human-readable form, e.g. `1/2*sqrt(2)`.
    pub exact: String,
    pub decimal: String,
}

impl WireQuadratic {
    pub fn to_quadratic(&self) -> Result<QuadraticNumber, ReportError> {
        if self.rad == 0 {
            return Err(ReportError::Wire("radicand 0".to_string()));
        }
        Ok(QuadraticNumber::new(self.a.to_rational()?, self.b.to_rational()?, self.rad))
    }
}

impl From<&QuadraticNumber> for WireQuadratic {
    fn from(x: &QuadraticNumber) -> Self {
        Self {
            a: x.rational_part().into(),
            b: x.sqrt_coefficient().into(),
            rad: x.radicand(),
            exact: x.to_string(),
            decimal: x.to_decimal(DECIMAL_DIGITS),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireSolution {
    pub x: String,
    pub y: String,
}

impl From<&PellSolution> for WireSolution {
    fn from(s: &PellSolution) -> Self {
        Self { x: s.x().to_string(), y: s.y().to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WirePell {
    pub minimal: WireSolution,
    pub next: WireSolution,
    /// `certified`, or `beyond_bound` when `y₀` is too large for the oracle.
    pub minimality: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireWall {
    pub solution: WireSolution,
    pub center_beta: WireRational,
    pub radius_sq: WireRational,
    pub p_quot: WireRational,
    pub p_sub: WireRational,
}

impl WireWall {
    fn new(s: &PellSolution, w: &Wall) -> Self {
        let (q, p) = w.endpoints();
        Self {
            solution: s.into(),
            center_beta: w.center_beta().into(),
            radius_sq: w.radius_sq().into(),
            p_quot: q.into(),
            p_sub: p.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireWalls {
    pub walls: Vec<WireWall>,
    pub accumulation_point: WireQuadratic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WirePolynomial {
    pub a2: WireRational,
    pub a1: WireRational,
    pub a0: WireRational,
}

impl From<&QuadraticPolynomial> for WirePolynomial {
    fn from(p: &QuadraticPolynomial) -> Self {
        Self { a2: (&p.a2).into(), a1: (&p.a1).into(), a0: (&p.a0).into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireCandidate {
    pub index: usize,
    pub shape: String,
    pub solution: Option<WireSolution>,
    pub breakpoints: Vec<WireQuadratic>,
    pub h0_pieces: Vec<WirePolynomial>,
    pub h1_pieces: Vec<WirePolynomial>,
    pub epsilon1: WireQuadratic,
    pub c1_at_breakpoints: Vec<bool>,
}

impl WireCandidate {
    fn new(index: usize, c: &CrfCandidate) -> Result<Self, ReportError> {
        let h1 = c.h1();
        let c1 = c.h0.breakpoints().iter().map(|b| c.h0.is_c1_at(b)).collect::<Result<_, _>>()?;
        Ok(Self {
            index,
            shape: c.shape.label().to_string(),
            solution: match &c.shape {
                Shape::Pell(s) => Some(s.into()),
                _ => None,
            },
            breakpoints: c.h0.breakpoints().iter().map(Into::into).collect(),
            h0_pieces: c.h0.pieces().iter().map(Into::into).collect(),
            h1_pieces: h1.pieces().iter().map(Into::into).collect(),
            epsilon1: (&c.epsilon1()).into(),
            c1_at_breakpoints: c1,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireVerdict {
    pub basepoint_free: String,
    pub projectively_normal: String,
    pub np_guaranteed: Option<u64>,
    pub caveats: Vec<String>,
}

impl From<&SyzygyVerdict> for WireVerdict {
    fn from(v: &SyzygyVerdict) -> Self {
        Self {
            basepoint_free: v.basepoint_free.label().to_string(),
            projectively_normal: v.projectively_normal.label().to_string(),
            np_guaranteed: v.np_guaranteed,
            caveats: v.caveats.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireCertificate {
    pub x0: String,
    pub y0: String,
    pub eigenspace_dimension: String,
    pub invariant_dimension: String,
    pub conditions: String,
    pub commutator_phases: [String; 2],
    pub phases_are_units: bool,
    pub labels_transitive: bool,
    pub h0_lower_bound: String,
    pub holds: bool,
    pub enumerated: bool,
    pub strengthening_proved: bool,
}

impl From<&LowerBoundCertificate> for WireCertificate {
    fn from(c: &LowerBoundCertificate) -> Self {
        Self {
            x0: c.x0.to_string(),
            y0: c.y0.to_string(),
            eigenspace_dimension: c.eigenspace_dimension.to_string(),
            invariant_dimension: c.invariant_dimension.to_string(),
            conditions: c.conditions.to_string(),
            commutator_phases: [c.commutator_phases.0.to_string(), c.commutator_phases.1.to_string()],
            phases_are_units: c.phases_are_units,
            labels_transitive: c.labels_transitive,
            h0_lower_bound: c.h0_lower_bound.to_string(),
            holds: c.holds(),
            enumerated: c.enumerated,
            strengthening_proved: c.strengthening_proved,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireExcluded {
    pub primes: Vec<String>,
    /// Composite cofactors the factorizer gave up on.
    pub unfactored: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub d: u64,
    pub perfect_square: bool,
    pub narrowing: bool,
    pub pell: Option<WirePell>,
    pub walls: Option<WireWalls>,
    pub candidates: Vec<WireCandidate>,
    pub verdict: WireVerdict,
    pub theta: Option<WireCertificate>,
    pub excluded_characteristics: WireExcluded,
}

impl Report {
    /// `n_solutions` walls, and with narrowing off also `n_solutions` Pell
    /// candidates after the trivial one.
    pub fn build(d: u64, n_solutions: usize, narrowing: bool) -> Result<Self, ReportError> {
        if d == 0 {
            return Err(ReportError::ZeroRadicand);
        }
        let cands = candidates(d, n_solutions, narrowing);
        let wire_cands =
            cands.iter().enumerate().map(|(i, c)| WireCandidate::new(i, c)).collect::<Result<_, _>>()?;
        let verdict = verdict(d)?;
        let mut report = Report {
            d,
            perfect_square: true,
            narrowing,
            pell: None,
            walls: None,
            candidates: wire_cands,
            verdict: (&verdict).into(),
            theta: None,
            excluded_characteristics: WireExcluded { primes: vec![], unfactored: vec![] },
        };
        let Some(mut sols) = pell_solutions(d) else {
            return Ok(report);
        };
        report.perfect_square = false;
        let (s0, s1) = (sols.next().expect("infinite"), sols.next().expect("infinite"));
        let minimality = match certify_minimal(&s0) {
            Minimality::Certified => "certified",
            Minimality::BeyondBound => "beyond_bound",
            Minimality::Refuted => "refuted",
        };
        report.pell = Some(WirePell {
            minimal: (&s0).into(),
            next: (&s1).into(),
            minimality: minimality.to_string(),
        });
        let walls = enumerate_walls(d, n_solutions)?;
        report.walls = Some(WireWalls {
            walls: walls.iter().map(|(s, w)| WireWall::new(s, w)).collect(),
            accumulation_point: (&accumulation_point(d)).into(),
        });
        report.theta = Some((&lower_bound_certificate(d, ENUMERATION_CAP)?).into());
        let f = excluded_characteristics(d)?;
        report.excluded_characteristics = WireExcluded {
            primes: f.primes.iter().map(|p| p.to_string()).collect(),
            unfactored: f.unfactored.iter().map(|p| p.to_string()).collect(),
        };
        Ok(report)
    }

    /// JSON with object keys in sorted order.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("plain data");
        let mut s = serde_json::to_string_pretty(&value).expect("plain data");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let rs = |w: &WireRational| match w.to_rational() {
            Ok(q) => rational_string(&q),
            Err(_) => format!("{}/{}", w.num, w.den),
        };
        let _ = writeln!(out, "d = {}", self.d);
        match &self.pell {
            Some(p) => {
                let _ = writeln!(
                    out,
                    "pell: minimal ({}, {}) [{}], next ({}, {})",
                    p.minimal.x, p.minimal.y, p.minimality, p.next.x, p.next.y
                );
            }
            None => {
                let _ = writeln!(out, "pell: perfect square, trivial solutions only");
            }
        }
        if let Some(w) = &self.walls {
            let _ = writeln!(out, "walls:");
            for wall in &w.walls {
                let _ = writeln!(
                    out,
                    "  ({}, {})  center {}  radius^2 {}  endpoints [{}, {}]",
                    wall.solution.x,
                    wall.solution.y,
                    rs(&wall.center_beta),
                    rs(&wall.radius_sq),
                    rs(&wall.p_quot),
                    rs(&wall.p_sub)
                );
            }
            let _ = writeln!(out, "  accumulation point {}", w.accumulation_point.exact);
        }
        let _ = writeln!(out, "candidates{}:", if self.narrowing { " (narrowed)" } else { "" });
        for c in &self.candidates {
            let sol = c.solution.as_ref().map(|s| format!(" ({}, {})", s.x, s.y)).unwrap_or_default();
            let _ = writeln!(
                out,
                "  [{}] {}{}  epsilon_1 = {} ~ {}",
                c.index, c.shape, sol, c.epsilon1.exact, c.epsilon1.decimal
            );
        }
        let v = &self.verdict;
        let np = v.np_guaranteed.map_or("none".to_string(), |p| format!("N_{p}"));
        let _ = writeln!(out, "basepoint free: {}", v.basepoint_free);
        let _ = writeln!(out, "projectively normal: {}", v.projectively_normal);
        let _ = writeln!(out, "property N_p guaranteed up to: {np}");
        for c in &v.caveats {
            let _ = writeln!(out, "  caveat: {c}");
        }
        if let Some(t) = &self.theta {
            let _ = writeln!(
                out,
                "theta: dim E1 = {} > {} conditions: {}; h0 >= {}",
                t.invariant_dimension, t.conditions, t.holds, t.h0_lower_bound
            );
        }
        if !self.perfect_square {
            let _ = writeln!(
                out,
                "excluded characteristics: {{{}}}",
                self.excluded_characteristics.primes.join(", ")
            );
        }
        out
    }
}
