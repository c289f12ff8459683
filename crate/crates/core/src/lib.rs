//! Exact computations for the ideal sheaf of a point on a `(1, d)`-polarized
//! abelian surface: Pell-parametrized tilt-stability walls, the candidate
//! cohomological rank functions `h⁰`, `h¹` with their basepoint-freeness
//! thresholds, syzygy verdicts, and theta-group eigenspace certificates.
//!
//! Everything is exact: rationals are arbitrary precision, irrational
//! breakpoints live in ℚ(√d), and roots of unity are tracked as exponents.

pub mod arith;
pub mod chern;
pub mod crf;
pub mod report;
pub mod syzygy;
pub mod theta;
pub mod verify;
pub mod walls;
