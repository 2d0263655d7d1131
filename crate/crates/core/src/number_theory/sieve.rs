//! Segmented sieve of Eratosthenes.
//!
//! Segments are sieved independently (and in parallel) against a shared
//! table of base primes up to `sqrt(x)`. Every public entry point joins the
//! segment results in ascending order, so output never depends on how many
//! worker threads rayon happens to use.

use rayon::prelude::*;

/// Width of one sieve segment, in integers.
pub const SEGMENT_WIDTH: u64 = 1 << 18;

/// Simple sieve for `0..=limit`, used for the base primes and small tables.
pub fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

fn isqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r.saturating_mul(r) > x {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1) <= x {
        r += 1;
    }
    r
}

/// Primes in `[lo, hi)`, given every prime up to `sqrt(hi - 1)`.
fn sieve_segment(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    let len = (hi - lo) as usize;
    let mut composite = vec![false; len];
    for &p in base {
        let p_sq = p * p;
        if p_sq >= hi {
            break;
        }
        let start = if p_sq >= lo { p_sq } else { lo.div_ceil(p) * p };
        let mut j = start;
        while j < hi {
            composite[(j - lo) as usize] = true;
            j += p;
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|&(off, &c)| !c && lo + off as u64 >= 2)
        .map(|(off, _)| lo + off as u64)
        .collect()
}

fn segments(x: u64) -> (Vec<u64>, Vec<(u64, u64)>) {
    let base = simple_sieve(isqrt(x));
    let end = x.saturating_add(1);
    let mut bounds = Vec::new();
    let mut lo = 0;
    while lo < end {
        let hi = lo.saturating_add(SEGMENT_WIDTH).min(end);
        bounds.push((lo, hi));
        lo = hi;
    }
    (base, bounds)
}

/// All primes `<= x`, ascending.
pub fn primes_up_to(x: u64) -> Vec<u64> {
    let (base, bounds) = segments(x);
    bounds
        .into_par_iter()
        .map(|(lo, hi)| sieve_segment(lo, hi, &base))
        .collect::<Vec<_>>()
        .concat()
}

/// Number of primes `q <= x` with `pred(q)`.
pub fn count_primes_where<F>(x: u64, pred: F) -> u64
where
    F: Fn(u64) -> bool + Sync,
{
    let (base, bounds) = segments(x);
    bounds
        .into_par_iter()
        .map(|(lo, hi)| {
            sieve_segment(lo, hi, &base)
                .into_iter()
                .filter(|&q| pred(q))
                .count() as u64
        })
        .sum()
}

/// `pi(x)`.
pub fn prime_count(x: u64) -> u64 {
    count_primes_where(x, |_| true)
}

/// The `k`-th prime, 1-based (`nth_prime(1) == 2`). Returns `None` for `k == 0`.
pub fn nth_prime(k: u64) -> Option<u64> {
    if k == 0 {
        return None;
    }
    // Rosser: p_k < k (ln k + ln ln k) for k >= 6.
    let limit = if k < 6 {
        13
    } else {
        let kf = k as f64;
        (kf * (kf.ln() + kf.ln().ln())).ceil() as u64 + 1
    };
    primes_up_to(limit).get(k as usize - 1).copied()
}

/// Position of `p` in the list 2, 3, 5, 7, ... (so `prime_index(5) == Some(3)`);
/// `None` when `p` is not prime.
pub fn prime_index(p: u64) -> Option<u64> {
    let primes = primes_up_to(p);
    match primes.last() {
        Some(&last) if last == p => Some(primes.len() as u64),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn small_lists() {
        assert!(primes_up_to(0).is_empty());
        assert!(primes_up_to(1).is_empty());
        assert_eq!(primes_up_to(2), vec![2]);
        assert_eq!(primes_up_to(11), vec![2, 3, 5, 7, 11]);
    }

    #[test]
    fn agrees_with_trial_division_across_segment_edges() {
        let x = 3 * SEGMENT_WIDTH + 17;
        let expected: Vec<u64> = (0..=x).filter(|&n| trial_division(n)).collect();
        assert_eq!(primes_up_to(x), expected);
    }

    #[test]
    fn pi_of_a_million() {
        assert_eq!(prime_count(1_000_000), 78_498);
    }

    #[test]
    fn nth_prime_values() {
        assert_eq!(nth_prime(0), None);
        assert_eq!(nth_prime(1), Some(2));
        assert_eq!(nth_prime(5), Some(11));
        assert_eq!(nth_prime(25), Some(97));
        let table = primes_up_to(8000);
        for k in 1..=1000u64 {
            assert_eq!(nth_prime(k), Some(table[k as usize - 1]), "k = {k}");
        }
    }

    #[test]
    fn prime_index_inverts_nth_prime() {
        assert_eq!(prime_index(5), Some(3));
        assert_eq!(prime_index(11), Some(5));
        assert_eq!(prime_index(2), Some(1));
        assert_eq!(prime_index(4), None);
        assert_eq!(prime_index(1), None);
    }
}
