//! Prime counts in the residue classes the witness search draws from.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::number_theory::{count_primes_where, primorial, NumberTheoryError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatsReport {
    pub k: u64,
    pub x: u64,
    /// Primes `q <= x` with `q ≡ -1 (mod P_k)`.
    pub omega_class_count: u64,
    /// Primes `q <= x` such that no `p <= p_k` divides `q + 2`.
    pub gamma_class_count: u64,
    pub pi_x: u64,
    #[serde(serialize_with = "as_decimal")]
    pub totient: BigUint,
    /// `pi_x / phi(P_k)`, rounded half-up to two decimals.
    pub dirichlet_expectation: String,
}

fn as_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// `num / den` to two decimals, rounding half up.
pub fn fixed_two(num: &BigUint, den: &BigUint) -> String {
    let scaled = num * 100u32;
    let (q, r) = scaled.div_rem(den);
    let q = if r * 2u32 >= *den { q + 1u32 } else { q };
    let (whole, frac) = q.div_rem(&BigUint::from(100u32));
    format!("{whole}.{:02}", frac.to_u32().unwrap_or(0))
}

pub fn stats(k: u64, x: u64) -> Result<StatsReport, NumberTheoryError> {
    let pk = primorial(k)?;
    let primes = pk.primes().to_vec();
    // Above u64 the class -1 mod P_k has no member <= x.
    let modulus = pk.value().to_u64();
    let omega_class_count = match modulus {
        Some(m) => count_primes_where(x, |q| q % m == m - 1),
        None => 0,
    };
    let gamma_class_count =
        count_primes_where(x, |q| primes.iter().all(|&p| (q % p + 2) % p != 0));
    let pi_x = count_primes_where(x, |_| true);
    let totient = pk.totient();
    Ok(StatsReport {
        k,
        x,
        omega_class_count,
        gamma_class_count,
        pi_x,
        dirichlet_expectation: fixed_two(&BigUint::from(pi_x), &totient),
        totient,
    })
}
