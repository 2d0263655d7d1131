//! Arbitrary-precision natural-number utilities: prime enumeration,
//! primality, Chinese remaindering, primorials.
//!
//! Small primes (the moduli `p <= p_k`) are `u64`; every quantity that can
//! grow with `k` (primorials, witnesses, residues) is a [`BigUint`].

mod crt;
mod primality;
mod sieve;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

pub use crt::{crt_solve, Congruence, CongruenceError, CrtError, CrtSolution, ModularSystem};
pub use primality::{
    is_prime, is_prime_u64, is_prime_with_rounds, CompositeWitness, PrimalityResult, Regime,
    DEFAULT_EXTRA_ROUNDS,
};
pub use sieve::{count_primes_where, nth_prime, prime_count, prime_index, primes_up_to};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumberTheoryError {
    #[error("prime index must be at least 1")]
    ZeroIndex,
}

/// `P_k = p_1 * p_2 * ... * p_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Primorial {
    k: u64,
    primes: Vec<u64>,
    value: BigUint,
}

impl Primorial {
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    /// `p_1, ..., p_k`.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `p_k`.
    pub fn largest_prime(&self) -> u64 {
        *self.primes.last().expect("k >= 1")
    }

    /// Euler's totient `phi(P_k) = prod (p - 1)`.
    pub fn totient(&self) -> BigUint {
        self.primes
            .iter()
            .fold(BigUint::one(), |acc, &p| acc * (p - 1))
    }
}

/// The first `k` primes, ascending.
pub fn first_primes(k: u64) -> Result<Vec<u64>, NumberTheoryError> {
    let p_k = nth_prime(k).ok_or(NumberTheoryError::ZeroIndex)?;
    Ok(primes_up_to(p_k))
}

pub fn primorial(k: u64) -> Result<Primorial, NumberTheoryError> {
    let primes = first_primes(k)?;
    let value = primes.iter().fold(BigUint::one(), |acc, &p| acc * p);
    Ok(Primorial { k, primes, value })
}

/// True iff no prime `p <= p_k` divides `q + 2`.
pub fn rough_shift_check(q: &BigUint, k: u64) -> Result<bool, NumberTheoryError> {
    let shifted = q + 2u32;
    Ok(first_primes(k)?
        .into_iter()
        .all(|p| !(&shifted % p).is_zero()))
}
