use num_bigint::BigUint;
use num_traits::ToPrimitive;
use pawit_core::harness::{demonstrate, HarnessOptions};
use pawit_core::number_theory::{
    crt_solve, first_primes, is_prime, primes_up_to, rough_shift_check, Congruence, CrtError,
    ModularSystem,
};
use pawit_core::schemas::SchemaTag;
use pawit_core::witness::{build_system, find_witnesses, solution_stream, verify_certificate};
use pawit_core::{FragmentSpec, SearchPolicy, Verdict, WitnessCertificate};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn witness(n: u32, k: u32) -> WitnessCertificate {
    find_witnesses(FragmentSpec::new(n, k).unwrap(), &SearchPolicy::default()).unwrap()
}

fn values(c: &WitnessCertificate) -> Vec<BigUint> {
    c.witnesses.iter().map(|w| w.value.clone()).collect()
}

#[test]
fn small_fragments_certify_and_verify() {
    for n in 1..=5 {
        for k in 1..=6 {
            let cert = witness(n, k);
            assert_eq!(cert.witnesses.len(), n as usize);
            assert_eq!(cert.verdicts.len(), (n * (k + 2) + n * k) as usize);
            assert!(cert.verdicts.iter().all(|v| v.verdict == Verdict::True));
            let report = verify_certificate(&cert).unwrap();
            assert!(report.accepted(), "({n}, {k}):\n{report}");
            for w in &cert.witnesses {
                assert!(rough_shift_check(&w.value, k as u64).unwrap());
                assert!(is_prime(&w.value).is_prime_like());
            }
        }
    }
}

#[test]
fn witness_values_match_progression_by_brute_force() {
    // first n primes among y ≡ -1 (mod p) for all p <= p_k, scanned directly
    for k in 1..=4u64 {
        let ps = first_primes(k).unwrap();
        let scanned: Vec<u64> = (2u64..)
            .filter(|y| ps.iter().all(|p| y % p == p - 1))
            .filter(|&y| (2..).take_while(|d| d * d <= y).all(|d| y % d != 0))
            .take(5)
            .collect();
        let found: Vec<u64> = values(&witness(5, k as u32)).iter().map(|v| v.to_u64().unwrap()).collect();
        assert_eq!(found, scanned, "k = {k}");
    }
}

#[test]
fn system_solutions_are_exactly_the_progression() {
    let limit = 1_000_000u64;
    for k in 1..=4u32 {
        let spec = FragmentSpec::new(1, k).unwrap();
        let sys = &build_system(spec)[0];
        let scanned: Vec<BigUint> = (0..=limit)
            .map(BigUint::from)
            .filter(|y| sys.is_satisfied_by(y))
            .collect();
        let stream: Vec<BigUint> = solution_stream(k as u64)
            .unwrap()
            .take_while(|v| *v <= BigUint::from(limit))
            .collect();
        assert_eq!(scanned, stream, "k = {k}");
        let sol = crt_solve(sys).unwrap();
        assert_eq!(sol.modulus, first_primes(k as u64).unwrap().iter().product::<u64>().into());
        assert_eq!(sol.residue, &sol.modulus - 1u32);
    }
}

#[test]
fn refinement_is_monotone() {
    // raising k can only move witnesses up; raising n keeps the prefix
    for k in 1..=5 {
        let small = values(&witness(3, k));
        let bigger_n = values(&witness(4, k));
        assert_eq!(&bigger_n[..3], &small[..]);
        let bigger_k = values(&witness(3, k + 1));
        for (a, b) in small.iter().zip(&bigger_k) {
            assert!(a <= b);
        }
    }
}

#[test]
fn witnesses_are_independent_of_thread_count() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| witness(5, 6).to_json())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn random_requests_are_satisfied() {
    let primes = [2u64, 3, 5, 7, 11, 13];
    let mut rng = StdRng::seed_from_u64(0x7a11);
    let policy = SearchPolicy::default();
    for _ in 0..200 {
        let len = rng.gen_range(1..=6);
        let tags: Vec<SchemaTag> = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..=4);
                match rng.gen_range(0..3) {
                    0 => SchemaTag::Alpha { i },
                    1 => SchemaTag::Beta { i },
                    _ => SchemaTag::Gamma { i, p: primes[rng.gen_range(0..primes.len())] },
                }
            })
            .collect();
        let d = demonstrate(&tags, HarnessOptions::default(), &policy).unwrap();
        assert!(d.all_true(), "{tags:?}");
    }
}

fn brute_crt(sys: &[(u64, u64)], limit: u64) -> Option<u64> {
    (0..limit).find(|y| sys.iter().all(|&(r, m)| y % m == r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn crt_matches_brute_force(raw in prop::collection::vec((0u64..1000, 2u64..60), 0..5)) {
        // keep the product of moduli within scanning range
        let mut product = 1u64;
        let sys: Vec<(u64, u64)> = raw
            .into_iter()
            .filter(|&(_, m)| {
                let ok = product * m <= 100_000;
                if ok { product *= m; }
                ok
            })
            .map(|(r, m)| (r % m, m))
            .collect();
        let ms = ModularSystem::new(sys.iter().map(|&(r, m)| Congruence::new(r, m).unwrap()).collect());
        let expected = brute_crt(&sys, product);
        match crt_solve(&ms) {
            Ok(sol) => {
                let r = sol.residue.to_u64().unwrap();
                let m = sol.modulus.to_u64().unwrap();
                prop_assert_eq!(Some(r), expected);
                let lcm = sys.iter().fold(1u64, |acc, &(_, m)| num_integer::lcm(acc, m));
                prop_assert_eq!(m, lcm);
            }
            Err(CrtError::Inconsistent { first, second }) => {
                prop_assert_eq!(expected, None);
                prop_assert!(first < second);
                let pair = [sys[first], sys[second]];
                prop_assert_eq!(brute_crt(&pair, pair[0].1 * pair[1].1), None);
            }
        }
    }

    #[test]
    fn is_prime_agrees_with_sieve_on_windows(start in 0u64..5_000_000) {
        let hi = start + 2_000;
        let sieved: Vec<u64> = primes_up_to(hi).into_iter().filter(|&p| p >= start).collect();
        let tested: Vec<u64> = (start..=hi).filter(|&v| is_prime(&v.into()).is_prime_like()).collect();
        prop_assert_eq!(sieved, tested);
    }
}
