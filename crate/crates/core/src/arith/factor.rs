//! Prime factorization: trial division to 10⁶, a strong primality test on
//! the cofactor, and Pollard–Brent for cofactors that are still composite.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const TRIAL_LIMIT: u64 = 1_000_000;
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
/// Miller–Rabin on `MR_BASES` is deterministic below this bound (≈ 3.3·10²⁴).
const MR_DETERMINISTIC_BOUND: &str = "3317044064679887385961981";
const RHO_STEP_BUDGET: u64 = 2_000_000;

/// Distinct prime factors, plus any composite cofactor that resisted
/// factoring within the step budget.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization {
    pub primes: BTreeSet<BigUint>,
    pub unfactored: Vec<BigUint>,
}

pub fn prime_factors(n: &BigUint) -> Factorization {
    let mut out = Factorization::default();
    if n.is_zero() {
        return out;
    }
    let mut rest = n.clone();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        if (&rest % &bp).is_zero() {
            out.primes.insert(bp.clone());
            while (&rest % &bp).is_zero() {
                rest /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        split_cofactor(rest, &mut out);
    }
    out
}

fn split_cofactor(n: BigUint, out: &mut Factorization) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.primes.insert(n);
        return;
    }
    let root = n.sqrt();
    if &root * &root == n {
        split_cofactor(root, out);
        return;
    }
    match pollard_brent(&n) {
        Some(f) => {
            let g = &n / &f;
            split_cofactor(f, out);
            split_cofactor(g, out);
        }
        None => out.unfactored.push(n),
    }
}

fn pow_mod(base: &BigUint, exp: &BigUint, m: &BigUint) -> BigUint {
    base.modpow(exp, m)
}

fn miller_rabin(n: &BigUint, base: u64) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let a = BigUint::from(base) % n;
    if a.is_zero() {
        return true;
    }
    let mut x = pow_mod(&a, &d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

fn jacobi(mut a: i64, n: &BigUint) -> i32 {
    // (a / n) for odd n, a possibly negative
    let mut result = 1i32;
    let mut nn = n.clone();
    let mut aa = if a < 0 {
        if (n % 4u32) == BigUint::from(3u32) {
            result = -result;
        }
        a = -a;
        BigUint::from(a as u64) % n
    } else {
        BigUint::from(a as u64) % n
    };
    while !aa.is_zero() {
        while aa.is_even() {
            aa >>= 1;
            let r = (&nn % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut aa, &mut nn);
        if (&aa % 4u32) == BigUint::from(3u32) && (&nn % 4u32) == BigUint::from(3u32) {
            result = -result;
        }
        aa %= &nn;
    }
    if nn.is_one() {
        result
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge parameters.
fn strong_lucas(n: &BigUint) -> bool {
    let mut dd: i64 = 5;
    loop {
        match jacobi(dd, n) {
            -1 => break,
            0 => {
                if BigUint::from(dd.unsigned_abs()) != *n {
                    return false;
                }
            }
            _ => {}
        }
        dd = if dd > 0 { -(dd + 2) } else { -dd + 2 };
    }
    // P = 1, Q = (1 − D)/4
    let q = (1 - dd) / 4;
    let modn = |v: i64| -> BigUint {
        if v >= 0 {
            BigUint::from(v as u64) % n
        } else {
            (n - (BigUint::from(v.unsigned_abs()) % n)) % n
        }
    };
    let q_mod = modn(q);
    let d_mod = modn(dd);
    let two_inv = (n + 1u32) >> 1;
    let n_plus_1 = n + 1u32;
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let k = &n_plus_1 >> s;

    // binary ladder on k computing U_k, V_k, Q^k
    let (mut u, mut v, mut qk) = (BigUint::zero(), BigUint::from(2u32) % n, BigUint::one());
    let bits = k.bits();
    for i in (0..bits).rev() {
        // double
        u = &u * &v % n;
        v = (&v * &v + n + n - (&qk * 2u32 % n)) % n;
        qk = &qk * &qk % n;
        if k.bit(i) {
            // add one: U_{m+1} = (U + V)/2, V_{m+1} = (D·U + V)/2 with P = 1
            let nu = (&u + &v) % n * &two_inv % n;
            let nv = (&d_mod * &u + &v) % n * &two_inv % n;
            u = nu;
            v = nv;
            qk = &qk * &q_mod % n;
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v + n + n - (&qk * 2u32 % n)) % n;
        qk = &qk * &qk % n;
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// Deterministic below ≈ 3.3·10²⁴ (Miller–Rabin on the first 13 primes);
/// Baillie–PSW above that.
pub fn is_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &p in &MR_BASES {
        let bp = BigUint::from(p);
        if *n == bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    if !MR_BASES.iter().all(|&b| miller_rabin(n, b)) {
        return false;
    }
    let bound: BigUint = MR_DETERMINISTIC_BOUND.parse().unwrap();
    if n < &bound {
        return true;
    }
    let root = n.sqrt();
    &root * &root != *n && strong_lucas(n)
}

fn pollard_brent(n: &BigUint) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let mut steps = 0u64;
    for c in 1u64.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut y, mut r, m) = (BigUint::from(2u32), 1u64, 128u64);
        let mut g = BigUint::one();
        let mut q = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += m;
                steps += m.min(r);
                if steps > RHO_STEP_BUDGET {
                    return None;
                }
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn primes_of(n: u128) -> Vec<u128> {
        let f = prime_factors(&BigUint::from(n));
        assert!(f.unfactored.is_empty());
        f.primes.iter().map(|p| p.to_u128().unwrap()).collect()
    }

    #[test]
    fn small_numbers() {
        assert_eq!(primes_of(1), Vec::<u128>::new());
        assert_eq!(primes_of(8), vec![2]);
        assert_eq!(primes_of(126), vec![2, 3, 7]);
        assert_eq!(primes_of(127), vec![127]);
        assert_eq!(primes_of(48), vec![2, 3]);
    }

    #[test]
    fn primality_agrees_with_sieve() {
        let limit = 20_000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (i, &p) in sieve.iter().enumerate() {
            assert_eq!(is_prime(&BigUint::from(i)), p, "{i}");
        }
    }

    #[test]
    fn lucas_test_on_known_values() {
        // primes and strong pseudoprimes to base 2
        for p in [1_000_000_007u64, 998_244_353, 2_147_483_647] {
            assert!(strong_lucas(&BigUint::from(p)));
        }
        for c in [2047u64, 3277, 4033, 4681, 8321, 1_000_000_007 * 3] {
            assert!(!is_prime(&BigUint::from(c)), "{c}");
        }
        // a prime above the deterministic bound: 2^89 − 1
        let m89 = (BigUint::one() << 89u32) - 1u32;
        assert!(is_prime(&m89));
        assert!(!is_prime(&(&m89 * &m89)));
    }

    #[test]
    fn semiprime_with_large_factors() {
        let p = 1_000_003u128;
        let q = 1_000_033u128;
        assert_eq!(primes_of(p * q), vec![p, q]);
        let big = BigUint::from(1_000_000_007u64) * BigUint::from(998_244_353u64);
        let f = prime_factors(&big);
        assert_eq!(f.primes.len(), 2);
    }
}
