//! Walls for the ideal-point class in the `(β, t = α²)` half-plane.
//!
//! A wall is the locus where two classes have equal tilt slope. Solving the
//! cross-multiplied equality for `t` gives `t = −β² + c₁β + c₀`, i.e. a
//! semicircle centred on the β-axis. Destabilizing pairs for `I₀` themselves
//! come from positive Pell solutions.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{
    int, is_perfect_square_u64, pell_solutions, rational_sqrt, ArithError,
    PellSolution, QuadraticNumber, Rational,
};
use crate::chern::{discriminant, ideal_point_class, ChernVector, TiltConvention};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum WallError {
    #[error("classes are proportional: their tilt slopes agree everywhere")]
    Proportional,
    #[error("classes have equal μ-slope: the equal-slope locus is a vertical line, not a semicircle")]
    EqualSlope,
    #[error("equal-slope locus is not a semicircle centred on the beta-axis")]
    NotASemicircle,
    #[error("equal-slope locus has no point with alpha > 0 (radius^2 = {0})")]
    NoPositiveLocus(Rational),
    #[error("wall endpoints are irrational (radius^2 = {0} is not a rational square)")]
    IrrationalEndpoints(Rational),
    #[error("invalid destabilizing pair: {0}")]
    InvalidPair(String),
    #[error("wall invariant violated: {0}")]
    InvariantViolated(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A short exact sequence `0 → E → I₀ → Q → 0` at the level of classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DestabilizingPair {
    sub: ChernVector,
    quot: ChernVector,
    solution: PellSolution,
}

impl DestabilizingPair {
    /// Checks the sum rule, `Δ(E) = Δ(Q) = 0`, `v0(E) > 0` and `v1(E) < 0`.
    pub fn new(
        sub: ChernVector,
        quot: ChernVector,
        solution: PellSolution,
    ) -> Result<Self, WallError> {
        let d = solution.d();
        if &sub + &quot != ideal_point_class(d) {
            return Err(WallError::InvalidPair(format!("{sub} + {quot} is not v(I_0)")));
        }
        if !discriminant(&sub).is_zero() || !discriminant(&quot).is_zero() {
            return Err(WallError::InvalidPair("discriminants must vanish".into()));
        }
        if !sub.v0.is_positive() {
            return Err(WallError::InvalidPair("subobject must have positive rank".into()));
        }
        if !sub.v1.is_negative() {
            return Err(WallError::InvalidPair("subobject must have negative slope".into()));
        }
        Ok(Self { sub, quot, solution })
    }

    pub fn sub(&self) -> &ChernVector {
        &self.sub
    }

    pub fn quot(&self) -> &ChernVector {
        &self.quot
    }

    pub fn solution(&self) -> &PellSolution {
        &self.solution
    }
}

/// A semicircle `(β − center)² + α² = radius²` with rational endpoints
/// `p_quot < p_sub` on the β-axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    center_beta: Rational,
    radius_sq: Rational,
    p_quot: Rational,
    p_sub: Rational,
}

impl Wall {
    pub fn from_center(center_beta: Rational, radius_sq: Rational) -> Result<Self, WallError> {
        if !radius_sq.is_positive() {
            return Err(WallError::NoPositiveLocus(radius_sq));
        }
        let radius =
            rational_sqrt(&radius_sq).ok_or_else(|| WallError::IrrationalEndpoints(radius_sq.clone()))?;
        let p_quot = &center_beta - &radius;
        let p_sub = &center_beta + &radius;
        Ok(Self { center_beta, radius_sq, p_quot, p_sub })
    }

    pub fn center_beta(&self) -> &Rational {
        &self.center_beta
    }

    pub fn radius_sq(&self) -> &Rational {
        &self.radius_sq
    }

    /// `(p_quot, p_sub)`.
    pub fn endpoints(&self) -> (&Rational, &Rational) {
        (&self.p_quot, &self.p_sub)
    }

    /// Center and radius recomputed from the endpoints agree with the stored ones.
    pub fn is_consistent(&self) -> bool {
        let two = int(2);
        let c = (&self.p_quot + &self.p_sub) / &two;
        let r = (&self.p_sub - &self.p_quot) / &two;
        self.p_quot < self.p_sub && c == self.center_beta && &r * &r == self.radius_sq
    }

    pub fn lies_in_negative_beta(&self) -> bool {
        self.p_sub.is_negative()
    }

    /// `p_quot < x < p_sub`.
    pub fn straddles(&self, x: &QuadraticNumber) -> bool {
        let d = x.radicand();
        let lo = QuadraticNumber::from_rational(self.p_quot.clone(), d);
        let hi = QuadraticNumber::from_rational(self.p_sub.clone(), d);
        lo < *x && *x < hi
    }

    /// Both endpoints strictly inside `outer`'s.
    pub fn is_strictly_inside(&self, outer: &Wall) -> bool {
        outer.p_quot < self.p_quot && self.p_sub < outer.p_sub
    }
}

/// Parametrization of the pair by a positive Pell solution:
/// `v(E) = (d(x+1), −2dy, (x−1)/2)`, `v(Q) = ((1−x)d, 2dy, −(x+1)/2)`.
pub fn pell_to_pair(d: u64, s: &PellSolution) -> Result<DestabilizingPair, WallError> {
    if s.d() != d {
        return Err(ArithError::RadicandMismatch { left: d, right: s.d() }.into());
    }
    let (x, y) = (s.x(), s.y());
    if num_integer::Integer::is_even(x) {
        return Err(WallError::InvalidPair(format!("x = {x} is even")));
    }
    let bd = BigInt::from(d);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let sub = ChernVector::new(
        &bd * (x + 1u32),
        -(BigInt::from(2) * &bd * y),
        int(x - 1u32) * &half,
        d,
    );
    let quot = ChernVector::new(
        (BigInt::one() - x) * &bd,
        BigInt::from(2) * &bd * y,
        -(int(x + 1u32) * &half),
        d,
    );
    DestabilizingPair::new(sub, quot, s.clone())
}

/// Coefficients `c[0] + c[1]β + c[2]β² + c[3]β³` through the values at β = 0, 1, 2, 3.
fn interpolate_cubic(values: &[Rational; 4]) -> [Rational; 4] {
    // forward differences on unit spacing
    let [f0, f1, f2, f3] = values.clone();
    let d1 = [&f1 - &f0, &f2 - &f1, &f3 - &f2];
    let d2 = [&d1[1] - &d1[0], &d1[2] - &d1[1]];
    let d3 = &d2[1] - &d2[0];
    // Newton form f0 + d1₀·β + d2₀/2·β(β−1) + d3/6·β(β−1)(β−2), expanded
    let a3 = &d3 / int(6);
    let a2 = &d2[0] / int(2) - &d3 / int(2);
    let a1 = &d1[0] - &d2[0] / int(2) + &d3 / int(3);
    [f0, a1, a2, a3]
}

/// The wall where `u` and `w` have equal tilt slope.
pub fn wall_between(u: &ChernVector, w: &ChernVector) -> Result<Wall, WallError> {
    wall_between_with(TiltConvention::Standard, u, w)
}

pub fn wall_between_with(
    convention: TiltConvention,
    u: &ChernVector,
    w: &ChernVector,
) -> Result<Wall, WallError> {
    if u.is_proportional_to(w) {
        return Err(WallError::Proportional);
    }
    // F(β, t) = N_u·D_w − N_w·D_u = A(β) + t·B(β)
    let cross = |beta: &Rational, t: &Rational| {
        let (nu, du) = convention.parts(u, beta, t);
        let (nw, dw) = convention.parts(w, beta, t);
        nu * dw - nw * du
    };
    let betas = [int(0), int(1), int(2), int(3)];
    let at_t0: [Rational; 4] = std::array::from_fn(|i| cross(&betas[i], &int(0)));
    let at_t1: [Rational; 4] = std::array::from_fn(|i| cross(&betas[i], &int(1)));
    let a = interpolate_cubic(&at_t0);
    let b_vals: [Rational; 4] = std::array::from_fn(|i| &at_t1[i] - &at_t0[i]);
    let b = interpolate_cubic(&b_vals);
    if b[1..].iter().any(|c| !c.is_zero()) || !a[3].is_zero() {
        return Err(WallError::NotASemicircle);
    }
    if b[0].is_zero() {
        return Err(WallError::EqualSlope);
    }
    // t = −A(β)/B
    let c: Vec<Rational> = a[..3].iter().map(|ai| -ai / &b[0]).collect();
    if c[2] != int(-1) {
        return Err(WallError::NotASemicircle);
    }
    let center = &c[1] / int(2);
    let radius_sq = &c[0] + &center * &center;
    Wall::from_center(center, radius_sq)
}

/// `(−2y/(x−1), −2y/(x+1))`.
pub fn wall_endpoints_formula(s: &PellSolution) -> (Rational, Rational) {
    let two_y = BigInt::from(2) * s.y();
    (
        -Rational::new(two_y.clone(), s.x() - 1u32),
        -Rational::new(two_y, s.x() + 1u32),
    )
}

/// `−√d/d`, where the walls accumulate.
pub fn accumulation_point(d: u64) -> QuadraticNumber {
    -QuadraticNumber::inverse_sqrt(d)
}

/// Walls for the first `n` positive solutions, outermost first, with nesting
/// and straddling of `−√d/d` verified.
pub fn enumerate_walls(d: u64, n: usize) -> Result<Vec<(PellSolution, Wall)>, WallError> {
    enumerate_walls_with(TiltConvention::Standard, d, n)
}

pub fn enumerate_walls_with(
    convention: TiltConvention,
    d: u64,
    n: usize,
) -> Result<Vec<(PellSolution, Wall)>, WallError> {
    let solutions = pell_solutions(d).ok_or(ArithError::SquareRadicand(d))?;
    let ideal = ideal_point_class(d);
    let limit = accumulation_point(d);
    let mut out: Vec<(PellSolution, Wall)> = Vec::with_capacity(n);
    for s in solutions.take(n) {
        let pair = pell_to_pair(d, &s)?;
        let wall = wall_between_with(convention, &ideal, pair.sub())?;
        if !wall.is_consistent() || !wall.lies_in_negative_beta() {
            return Err(WallError::InvariantViolated(format!("wall for {s:?} is malformed")));
        }
        if !wall.straddles(&limit) {
            return Err(WallError::InvariantViolated(format!(
                "wall for {s:?} does not contain -sqrt(d)/d"
            )));
        }
        if let Some((_, outer)) = out.last() {
            if !wall.is_strictly_inside(outer) {
                return Err(WallError::InvariantViolated(format!(
                    "wall for {s:?} is not nested in the previous one"
                )));
            }
        }
        out.push((s, wall));
    }
    Ok(out)
}

fn divisors(n: u128) -> Vec<u128> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let root = n.sqrt();
    for i in 1..=root {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
    }
    small.extend(large.into_iter().rev());
    small
}

/// Exhaustive search for pairs `v(E) = (2dr, 2dc, χ)`, `v(Q) = v(I₀) − v(E)` with
/// `r > 0`, `−c_bound ≤ c < 0` and both discriminants zero.
///
/// `Δ(E) = 0` forces `r·χ = d·c²`, so `r` ranges over the divisors of `d·c²`;
/// each candidate is then tested on both discriminants directly.
pub fn bruteforce_wall_scan(d: u64, c_bound: u64) -> Result<Vec<DestabilizingPair>, WallError> {
    let ideal = ideal_point_class(d);
    let two_d = 2 * d as i128;
    let mut out = Vec::new();
    for c_abs in 1..=c_bound {
        let target = d as u128 * (c_abs as u128) * (c_abs as u128);
        for r in divisors(target) {
            let chi = target / r;
            let sub = ChernVector::new(
                BigInt::from(two_d * r as i128),
                BigInt::from(-two_d * c_abs as i128),
                int(BigInt::from(chi)),
                d,
            );
            let quot = &ideal - &sub;
            if !discriminant(&sub).is_zero() || !discriminant(&quot).is_zero() {
                continue;
            }
            let solution =
                PellSolution::new(BigInt::from(2 * chi + 1), BigInt::from(c_abs), d)?;
            out.push(DestabilizingPair::new(sub, quot, solution)?);
        }
    }
    Ok(out)
}

/// The scan returns exactly the Pell-parametrized pairs with `y ≤ c_bound`.
pub fn scan_agrees_with_pell(d: u64, c_bound: u64) -> Result<bool, WallError> {
    let scanned = bruteforce_wall_scan(d, c_bound)?;
    if is_perfect_square_u64(d) {
        return Ok(scanned.is_empty());
    }
    let bound = BigInt::from(c_bound);
    let expected = pell_solutions(d)
        .ok_or(ArithError::SquareRadicand(d))?
        .take_while(|s| s.y() <= &bound)
        .map(|s| pell_to_pair(d, &s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(scanned == expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{pell_minimal, qn_compare, rat};

    fn sol(x: i64, y: i64, d: u64) -> PellSolution {
        PellSolution::new(BigInt::from(x), BigInt::from(y), d).unwrap()
    }

    fn cv(v0: i64, v1: i64, v2: i64, d: u64) -> ChernVector {
        ChernVector::from_ints(v0, v1, v2, d)
    }

    #[test]
    fn pair_examples() {
        let p = pell_to_pair(2, &sol(3, 1, 2)).unwrap();
        assert_eq!((p.sub(), p.quot()), (&cv(8, -4, 1, 2), &cv(-4, 4, -2, 2)));
        let p = pell_to_pair(3, &sol(7, 2, 3)).unwrap();
        assert_eq!((p.sub(), p.quot()), (&cv(24, -12, 3, 3), &cv(-18, 12, -4, 3)));
        let p = pell_to_pair(2, &sol(17, 6, 2)).unwrap();
        assert_eq!((p.sub(), p.quot()), (&cv(36, -24, 8, 2), &cv(-32, 24, -9, 2)));
    }

    #[test]
    fn trivial_solution_is_not_a_wall() {
        let trivial = PellSolution::trivial(2).unwrap();
        assert!(matches!(pell_to_pair(2, &trivial), Err(WallError::InvalidPair(_))));
        assert!(pell_to_pair(3, &sol(3, 1, 2)).is_err());
    }

    #[test]
    fn wall_between_examples() {
        let ideal = cv(4, 0, -1, 2);
        let w = wall_between(&ideal, &cv(8, -4, 1, 2)).unwrap();
        assert_eq!(w.center_beta(), &rat(-3, 4));
        assert_eq!(w.radius_sq(), &rat(1, 16));
        assert_eq!(w.endpoints(), (&int(-1), &rat(-1, 2)));
        assert!(w.is_consistent());

        let w2 = wall_between(&ideal, &cv(-4, 4, -2, 2)).unwrap();
        assert_eq!(w, w2);

        assert_eq!(
            wall_between(&cv(2, 0, -1, 1), &cv(4, 0, -2, 1)),
            Err(WallError::Proportional)
        );
    }

    #[test]
    fn wall_between_rejects_non_circles() {
        // equal μ-slope, different ch2: the locus is the vertical line β = 0
        assert_eq!(
            wall_between(&cv(4, 0, -1, 2), &cv(4, 0, 1, 2)),
            Err(WallError::EqualSlope)
        );
        // locus with no α > 0 part
        assert!(matches!(
            wall_between(&cv(4, 0, -1, 2), &cv(4, -4, 1, 2)),
            Err(WallError::NoPositiveLocus(_))
        ));
        let flipped =
            wall_between_with(TiltConvention::FlippedAlphaSquared, &cv(4, 0, -1, 2), &cv(8, -4, 1, 2));
        assert_eq!(flipped, Err(WallError::NotASemicircle));
    }

    #[test]
    fn endpoint_formula_examples() {
        assert_eq!(wall_endpoints_formula(&sol(3, 1, 2)), (int(-1), rat(-1, 2)));
        assert_eq!(wall_endpoints_formula(&sol(7, 2, 3)), (rat(-2, 3), rat(-1, 2)));
        assert_eq!(wall_endpoints_formula(&sol(17, 6, 2)), (rat(-3, 4), rat(-2, 3)));
    }

    #[test]
    fn enumerate_examples() {
        let walls = enumerate_walls(2, 2).unwrap();
        assert_eq!(walls.len(), 2);
        assert_eq!(walls[0].1.endpoints(), (&int(-1), &rat(-1, 2)));
        assert_eq!(walls[1].1.endpoints(), (&rat(-3, 4), &rat(-2, 3)));

        let first = &enumerate_walls(2, 1).unwrap()[0].1;
        let limit = accumulation_point(2);
        let lo = QuadraticNumber::from_rational(int(-1), 2);
        let hi = QuadraticNumber::from_rational(rat(-1, 2), 2);
        assert_eq!(qn_compare(&lo, &limit).unwrap(), std::cmp::Ordering::Less);
        assert_eq!(qn_compare(&limit, &hi).unwrap(), std::cmp::Ordering::Less);
        assert!(first.straddles(&limit));

        assert!(enumerate_walls(5, 0).unwrap().is_empty());
        assert_eq!(
            enumerate_walls(9, 1),
            Err(WallError::Arith(ArithError::SquareRadicand(9)))
        );
    }

    #[test]
    fn flipped_beta_breaks_endpoints() {
        let s = pell_minimal(2).unwrap();
        let pair = pell_to_pair(2, &s).unwrap();
        let w = wall_between_with(TiltConvention::FlippedBeta, &ideal_point_class(2), pair.sub())
            .unwrap();
        let (lo, hi) = wall_endpoints_formula(&s);
        assert_ne!(w.endpoints(), (&lo, &hi));
        assert!(enumerate_walls_with(TiltConvention::FlippedBeta, 2, 1).is_err());
    }

    #[test]
    fn scan_examples() {
        let pairs = bruteforce_wall_scan(2, 6).unwrap();
        let sols: Vec<_> = pairs.iter().map(|p| p.solution().clone()).collect();
        assert_eq!(sols, vec![sol(3, 1, 2), sol(17, 6, 2)]);
        assert!(bruteforce_wall_scan(4, 50).unwrap().is_empty());
        assert!(bruteforce_wall_scan(3, 1).unwrap().is_empty());
    }

    #[test]
    fn interpolation_recovers_cubics() {
        let p = |b: i64| int(5 - 3 * b + 2 * b * b - 7 * b * b * b);
        let c = interpolate_cubic(&[p(0), p(1), p(2), p(3)]);
        assert_eq!(c, [int(5), int(-3), int(2), int(-7)]);
    }
}
