//! Miller–Rabin primality testing over big integers.
//!
//! Deterministic for inputs below 2⁶⁴ via the standard twelve-base set;
//! larger inputs get the same bases plus 64 deterministically seeded
//! pseudo-random rounds, for an error probability below 2⁻¹²⁸ while
//! keeping results reproducible across runs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// One strong-probable-prime round to base `a` with `n − 1 = 2^s · r`.
fn sprp(n: &BigInt, s: u32, r: &BigInt, a: &BigInt) -> bool {
    let n_minus_1 = n - 1;
    let mut x = a.modpow(r, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
        if x.is_one() {
            return false;
        }
    }
    false
}

pub fn is_prime(n: &BigInt) -> bool {
    if !n.is_positive() {
        return false;
    }
    for p in SMALL_PRIMES {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if n.is_multiple_of(&p) {
            return false;
        }
    }
    if *n < BigInt::from(SMALL_PRIMES[SMALL_PRIMES.len() - 1] + 2) {
        return false; // 1 or covered above
    }
    let n_minus_1: BigInt = n - 1;
    let s = n_minus_1.trailing_zeros().expect("n ≥ 2") as u32;
    let r = &n_minus_1 >> s;

    for p in SMALL_PRIMES {
        if !sprp(n, s, &r, &BigInt::from(p)) {
            return false;
        }
    }
    if n.bits() <= 64 {
        return true; // twelve-base set is exact below 2⁶⁴
    }
    // Reproducible extra rounds seeded from n itself.
    let mut state = n.iter_u64_digits().fold(0u64, |acc, w| acc ^ w);
    for _ in 0..64 {
        let base = BigInt::from(splitmix64(&mut state) | 2) % (&n_minus_1 - 1) + 2;
        if !sprp(n, s, &r, &base) {
            return false;
        }
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    #[test]
    fn small_values() {
        let primes = [2u64, 3, 5, 7, 11, 13, 31, 71, 79, 23, 29, 97, 101, 65537];
        for p in primes {
            assert!(is_prime_u64(p), "{p}");
        }
        let composites = [0u64, 1, 4, 9, 15, 39, 111, 125, 159, 561, 1105, 1729];
        for c in composites {
            assert!(!is_prime_u64(c), "{c}");
        }
    }

    #[test]
    fn strong_pseudoprimes_are_caught() {
        // Strong pseudoprimes to small bases.
        for c in [3215031751u64, 3825123056546413051] {
            assert!(!is_prime_u64(c), "{c}");
        }
        assert!(is_prime_u64(18446744073709551557)); // largest u64 prime
    }

    #[test]
    fn beyond_64_bits() {
        let p = BigInt::from_str("170141183460469231731687303715884105727").unwrap(); // 2¹²⁷ − 1
        assert!(is_prime(&p));
        let c = &p * BigInt::from(3);
        assert!(!is_prime(&c));
        assert!(!is_prime(&(&p * &p)));
    }

    #[test]
    fn negative_and_zero() {
        assert!(!is_prime(&BigInt::from(-7)));
        assert!(!is_prime(&BigInt::ZERO));
    }
}
