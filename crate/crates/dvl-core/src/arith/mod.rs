//! Primes, factorizations and multiplicative arithmetic functions.

mod factor;
mod sieve;

pub use factor::Factorization;
pub use sieve::{PrimeSegments, PrimeTable, DEFAULT_FACTOR_LIMIT, SEGMENT_SPAN};

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Rising factorial quotient `γ(γ+1)⋯(γ+r−1)/r!`, the value of `d_γ(p^r)`.
pub fn generalized_divisor_prime_power(gamma: f64, r: u32) -> Result<f64> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::invalid("generalized divisor order must be positive"));
    }
    Ok((1..=r).fold(1.0, |acc, i| acc * (gamma + f64::from(i) - 1.0) / f64::from(i)))
}

/// Integers `n ≤ bound` with every prime factor in `primes`, ascending.
pub fn smooth_over(primes: &[u64], bound: u64) -> Vec<u64> {
    fn walk(primes: &[u64], bound: u64, acc: u64, out: &mut Vec<u64>) {
        out.push(acc);
        for (i, &p) in primes.iter().enumerate() {
            let Some(next) = acc.checked_mul(p) else { break };
            if next > bound {
                break;
            }
            // only primes at position >= i keep each product unique
            walk(&primes[i..], bound, next, out);
        }
    }
    let mut sorted: Vec<u64> = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out = Vec::new();
    if bound >= 1 {
        walk(&sorted, bound, 1, &mut out);
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rising_factorial() {
        assert_eq!(generalized_divisor_prime_power(3.0, 2).unwrap(), 6.0);
        assert_eq!(generalized_divisor_prime_power(2.0, 7).unwrap(), 8.0);
        assert_eq!(generalized_divisor_prime_power(0.5, 0).unwrap(), 1.0);
        assert!(generalized_divisor_prime_power(0.0, 1).is_err());
    }

    #[test]
    fn smooth_small() {
        assert_eq!(smooth_over(&[2, 3], 10), [1, 2, 3, 4, 6, 8, 9]);
        assert_eq!(smooth_over(&[2], 20), [1, 2, 4, 8, 16]);
        assert_eq!(smooth_over(&[], 5), [1]);
    }
}
