//! Primality testing.
//!
//! Two regimes:
//!
//! * `n < 2^64`: trial division by small primes, then Miller-Rabin with the
//!   first twelve primes as bases. That base set has no strong pseudoprimes
//!   below 3.3 * 10^24, so the answer is a proof and is reported as
//!   [`PrimalityResult::Prime`].
//! * `n >= 2^64`: Baillie-PSW (strong base-2 Miller-Rabin followed by a
//!   strong Lucas test with Selfridge parameters) plus a configurable number
//!   of extra Miller-Rabin rounds over fixed bases. Survivors are reported as
//!   [`PrimalityResult::ProbablePrime`], never `Prime`.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::sieve::simple_sieve;

/// Extra Miller-Rabin rounds run above the deterministic threshold.
pub const DEFAULT_EXTRA_ROUNDS: u32 = 8;

const DETERMINISTIC_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const TRIAL_LIMIT: u64 = 1000;

fn small_primes() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| simple_sieve(TRIAL_LIMIT))
}

/// Evidence that a number is not prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompositeWitness {
    /// The number is 0 or 1.
    BelowTwo,
    /// A nontrivial divisor found by trial division.
    Factor(BigUint),
    /// A Miller-Rabin base that proves compositeness.
    MillerRabinBase(BigUint),
    /// Failed the strong Lucas test with Selfridge parameter `d`.
    Lucas { d: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimalityResult {
    Prime,
    Composite(CompositeWitness),
    ProbablePrime { rounds: u32 },
}

impl PrimalityResult {
    /// True for `Prime` and `ProbablePrime`.
    pub fn is_prime_like(&self) -> bool {
        !matches!(self, PrimalityResult::Composite(_))
    }

    pub fn regime(&self) -> Option<Regime> {
        match self {
            PrimalityResult::Prime => Some(Regime::Deterministic),
            PrimalityResult::ProbablePrime { .. } => Some(Regime::ProbablePrime),
            PrimalityResult::Composite(_) => None,
        }
    }
}

/// Confidence regime attached to a primality verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    #[serde(rename = "deterministic")]
    Deterministic,
    #[serde(rename = "probable-prime")]
    ProbablePrime,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Deterministic => f.write_str("deterministic"),
            Regime::ProbablePrime => f.write_str("probable-prime"),
        }
    }
}

/// Primality with [`DEFAULT_EXTRA_ROUNDS`].
pub fn is_prime(n: &BigUint) -> PrimalityResult {
    is_prime_with_rounds(n, DEFAULT_EXTRA_ROUNDS)
}

pub fn is_prime_with_rounds(n: &BigUint, extra_rounds: u32) -> PrimalityResult {
    match n.to_u64() {
        Some(small) => is_prime_u64(small),
        None => is_prime_big(n, extra_rounds),
    }
}

/// Deterministic test for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> PrimalityResult {
    if n < 2 {
        return PrimalityResult::Composite(CompositeWitness::BelowTwo);
    }
    for &p in small_primes() {
        if p * p > n {
            return PrimalityResult::Prime;
        }
        if n % p == 0 {
            return if n == p {
                PrimalityResult::Prime
            } else {
                PrimalityResult::Composite(CompositeWitness::Factor(BigUint::from(p)))
            };
        }
    }
    let (d, s) = split_odd(n - 1);
    for &a in &DETERMINISTIC_BASES {
        if !strong_probable_prime_u64(n, a, d, s) {
            return PrimalityResult::Composite(CompositeWitness::MillerRabinBase(BigUint::from(a)));
        }
    }
    PrimalityResult::Prime
}

fn split_odd(mut d: u64) -> (u64, u32) {
    let s = d.trailing_zeros();
    d >>= s;
    (d, s)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn strong_probable_prime_u64(n: u64, a: u64, d: u64, s: u32) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

fn strong_probable_prime_big(n: &BigUint, a: &BigUint, d: &BigUint, s: u64) -> bool {
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let mut x = a.modpow(d, n);
    if x == one || x == n_minus_one {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_one {
            return true;
        }
    }
    false
}

fn is_prime_big(n: &BigUint, extra_rounds: u32) -> PrimalityResult {
    for &p in small_primes() {
        if (n % p).is_zero() {
            return PrimalityResult::Composite(CompositeWitness::Factor(BigUint::from(p)));
        }
    }
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    let two = BigUint::from(2u32);
    if !strong_probable_prime_big(n, &two, &d, s) {
        return PrimalityResult::Composite(CompositeWitness::MillerRabinBase(two));
    }
    if let Some(witness) = strong_lucas_failure(n) {
        return PrimalityResult::Composite(witness);
    }
    // Extra rounds use the odd primes 3, 5, 7, ... so results are reproducible.
    for &a in small_primes().iter().skip(1).take(extra_rounds as usize) {
        let a = BigUint::from(a);
        if !strong_probable_prime_big(n, &a, &d, s) {
            return PrimalityResult::Composite(CompositeWitness::MillerRabinBase(a));
        }
    }
    PrimalityResult::ProbablePrime {
        rounds: extra_rounds,
    }
}

/// Jacobi symbol `(a / n)` for odd `n`.
fn jacobi(a: &BigUint, n: &BigUint) -> i32 {
    let mut a = a % n;
    let mut n = n.clone();
    let mut result = 1;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            a >>= tz;
            let n_mod_8 = (&n % 8u32).to_u32().unwrap_or(0);
            if tz % 2 == 1 && (n_mod_8 == 3 || n_mod_8 == 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == BigUint::from(3u32) && (&n % 4u32) == BigUint::from(3u32) {
            result = -result;
        }
        a %= &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Reduce a signed value modulo `n`.
fn signed_mod(v: i64, n: &BigUint) -> BigUint {
    let abs = BigUint::from(v.unsigned_abs()) % n;
    if v >= 0 || abs.is_zero() {
        abs
    } else {
        n - abs
    }
}

fn half_mod(x: BigUint, n: &BigUint) -> BigUint {
    if x.is_odd() {
        (x + n) >> 1
    } else {
        x >> 1
    }
}

/// Strong Lucas probable-prime test (Selfridge method A, `P = 1`).
/// Returns `Some(witness)` when `n` is proven composite. `n` must be odd and
/// larger than every trial-division prime.
fn strong_lucas_failure(n: &BigUint) -> Option<CompositeWitness> {
    let root = n.sqrt();
    if &root * &root == *n {
        return Some(CompositeWitness::Factor(root));
    }
    let mut d: i64 = 5;
    loop {
        let j = jacobi(&signed_mod(d, n), n);
        if j == -1 {
            break;
        }
        if j == 0 {
            let g = signed_mod(d, n).gcd(n);
            if !g.is_one() && &g != n {
                return Some(CompositeWitness::Factor(g));
            }
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let q = (1 - d) / 4;
    let d_mod = signed_mod(d, n);
    let q_mod = signed_mod(q, n);

    let n_plus_one = n + 1u32;
    let s = n_plus_one.trailing_zeros().unwrap_or(0);
    let odd = &n_plus_one >> s;

    // U_1 = 1, V_1 = P = 1, Q^1.
    let mut u = BigUint::one();
    let mut v = BigUint::one();
    let mut qk = q_mod.clone();
    let bits = odd.bits();
    for bit in (0..bits - 1).rev() {
        // k -> 2k
        u = (&u * &v) % n;
        let two_qk = (&qk << 1) % n;
        v = ((&v * &v) % n + n - two_qk) % n;
        qk = (&qk * &qk) % n;
        if odd.bit(bit) {
            // k -> k + 1
            let new_u = half_mod((&u + &v) % n, n);
            let new_v = half_mod((&d_mod * &u + &v) % n, n);
            u = new_u;
            v = new_v;
            qk = (&qk * &q_mod) % n;
        }
    }
    if u.is_zero() || v.is_zero() {
        return None;
    }
    for _ in 1..s {
        let two_qk = (&qk << 1) % n;
        v = ((&v * &v) % n + n - two_qk) % n;
        if v.is_zero() {
            return None;
        }
        qk = (&qk * &qk) % n;
    }
    Some(CompositeWitness::Lucas { d })
}
