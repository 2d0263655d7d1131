//! Standard models for finite fragments.
//!
//! For each `(n, k)` the engine builds the congruence system
//! `y ≡ p - 1 (mod p)` for every `p <= p_k`, walks its solutions
//! `m * P_k - 1` for `m = 1, 2, ...` and keeps the first `n` primes. Those
//! primes, assigned to `c_1 < ... < c_n`, satisfy every alpha, beta, gamma and
//! omega sentence of the fragment.

mod certificate;
mod verify;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::formula::{eval_schema, Assignment};
use crate::number_theory::{
    is_prime_with_rounds, primorial, Congruence, ModularSystem, NumberTheoryError, PrimalityResult,
    Primorial, DEFAULT_EXTRA_ROUNDS,
};
use crate::schemas::{omega_block, theta, FragmentSpec, SchemaError};

pub use certificate::{CertificateError, VerdictEntry, Witness, WitnessCertificate};
pub use verify::{verify_certificate, verify_json, Check, VerificationReport};

/// Version string stamped into certificates.
pub const TOOL_VERSION: &str = concat!("pawit ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchPolicy {
    /// Largest progression index `m` examined.
    pub max_progression_index: u64,
    /// Extra Miller-Rabin rounds above the deterministic threshold.
    pub primality_rounds: u32,
    /// Candidates tested per parallel batch.
    pub segment_width: u64,
}

impl Default for SearchPolicy {
    fn default() -> Self {
        SearchPolicy {
            max_progression_index: 10_000_000,
            primality_rounds: DEFAULT_EXTRA_ROUNDS,
            segment_width: 256,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error(transparent)]
    Fragment(#[from] SchemaError),
    #[error("max progression index {max} is below n = {n}")]
    PolicyTooSmall { max: u64, n: u32 },
    #[error("search exhausted at m = {max}: found {found} of {needed} witnesses")]
    SearchExhausted { max: u64, found: usize, needed: u32 },
}

/// One copy of `{ y ≡ p - 1 (mod p) : p <= p_k }` per unknown `y_1..y_n`.
pub fn build_system(spec: FragmentSpec) -> Vec<ModularSystem> {
    let pk = primorial(spec.k() as u64).expect("k >= 1");
    let block = ModularSystem::new(
        pk.primes()
            .iter()
            .map(|&p| Congruence::new(p - 1, p).expect("p >= 2"))
            .collect(),
    );
    vec![block; spec.n() as usize]
}

/// `m * P_k - 1` for `m = 1, 2, 3, ...`.
pub fn solution_stream(k: u64) -> Result<impl Iterator<Item = BigUint>, NumberTheoryError> {
    let pk = primorial(k)?.value().clone();
    Ok((1u64..).map(move |m| progression_value(&pk, m)))
}

pub(crate) fn progression_value(pk: &BigUint, m: u64) -> BigUint {
    pk * m - 1u32
}

/// The `n` smallest primes of the progression `m * P_k - 1`, with full
/// verdicts for the fragment and its omega block.
///
/// Candidates are tested in parallel batches of `policy.segment_width`;
/// batches are joined in order, so the result does not depend on the
/// thread count.
pub fn find_witnesses(
    spec: FragmentSpec,
    policy: &SearchPolicy,
) -> Result<WitnessCertificate, EngineError> {
    if policy.max_progression_index < spec.n() as u64 {
        return Err(EngineError::PolicyTooSmall {
            max: policy.max_progression_index,
            n: spec.n(),
        });
    }
    let pk = primorial(spec.k() as u64).expect("k >= 1");
    let needed = spec.n() as usize;
    let width = policy.segment_width.max(1);
    let mut found: Vec<Witness> = Vec::with_capacity(needed);
    let mut start = 1u64;
    while found.len() < needed {
        if start > policy.max_progression_index {
            return Err(EngineError::SearchExhausted {
                max: policy.max_progression_index,
                found: found.len(),
                needed: spec.n(),
            });
        }
        let end = start
            .saturating_add(width - 1)
            .min(policy.max_progression_index);
        let hits: Vec<(u64, BigUint, PrimalityResult)> = (start..=end)
            .into_par_iter()
            .filter_map(|m| {
                let value = progression_value(pk.value(), m);
                let r = is_prime_with_rounds(&value, policy.primality_rounds);
                r.is_prime_like().then_some((m, value, r))
            })
            .collect();
        for (m, value, r) in hits {
            if found.len() == needed {
                break;
            }
            found.push(Witness {
                i: found.len() as u32 + 1,
                m,
                value,
                regime: r.regime().expect("prime-like"),
            });
        }
        start = end.saturating_add(1);
    }
    Ok(certify(spec, &pk, found))
}

fn certify(spec: FragmentSpec, pk: &Primorial, witnesses: Vec<Witness>) -> WitnessCertificate {
    let assignment = Assignment::new(witnesses.iter().map(|w| w.value.clone()).collect());
    let verdicts = theta(spec)
        .into_iter()
        .chain(omega_block(spec))
        .map(|ts| {
            let verdict = eval_schema(&ts, &assignment).expect("every constant is assigned");
            VerdictEntry::new(*ts.tag(), verdict)
        })
        .collect();
    WitnessCertificate {
        n: spec.n(),
        k: spec.k(),
        primorial: pk.value().clone(),
        witnesses,
        verdicts,
        tool_version: TOOL_VERSION.to_string(),
    }
}
