use alloc::vec;
use alloc::vec::Vec;

use super::factor::Factorization;
use crate::error::{Error, Result};
use crate::exec::{Executor, Sequential};

/// Default bound for the smallest-factor lookup.
pub const DEFAULT_FACTOR_LIMIT: u64 = 10_000_000;

/// Width of one sieve segment (numbers, not bytes).
pub const SEGMENT_SPAN: u64 = 1 << 21;

const MAX_LIMIT: u64 = u32::MAX as u64;

/// Odd-only segmented sieve of Eratosthenes over `[0, limit]`.
///
/// Segment boundaries depend only on `limit`, so any executor yields the same
/// primes in the same order.
#[derive(Debug, Clone)]
pub struct PrimeSegments {
    limit: u64,
    base: Vec<u32>,
}

impl PrimeSegments {
    pub fn new(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::invalid("sieve limit must be at least 2"));
        }
        if limit > MAX_LIMIT {
            return Err(Error::invalid("sieve limit exceeds 2^32 - 1"));
        }
        let root = isqrt(limit);
        let base = simple_sieve(root).into_iter().filter(|&p| p != 2).collect();
        Ok(Self { limit, base })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn count(&self) -> usize {
        (self.limit / SEGMENT_SPAN + 1) as usize
    }

    /// Primes in segment `i`, ascending.
    pub fn primes_in(&self, i: usize) -> Vec<u64> {
        let lo = i as u64 * SEGMENT_SPAN;
        let hi = ((i as u64 + 1) * SEGMENT_SPAN).min(self.limit + 1);
        let mut out = Vec::new();
        if lo >= hi {
            return out;
        }
        if lo <= 2 && 2 < hi {
            out.push(2);
        }
        let first_odd = lo | 1;
        if first_odd >= hi {
            return out;
        }
        let slots = ((hi - first_odd) + 1) / 2;
        let mut composite = vec![false; slots as usize];
        for &p in &self.base {
            let p = u64::from(p);
            if p * p >= hi {
                break;
            }
            let mut m = (p * p).max(lo.div_ceil(p) * p);
            if m % 2 == 0 {
                m += p;
            }
            let mut j = (m - first_odd) / 2;
            while j < slots {
                composite[j as usize] = true;
                j += p;
            }
        }
        out.extend(
            composite
                .iter()
                .enumerate()
                .filter(|&(_, &c)| !c)
                .map(|(j, _)| first_odd + 2 * j as u64)
                .filter(|&n| n > 1),
        );
        out
    }
}

/// Sieve output: every prime up to `limit` plus a smallest-factor lookup up
/// to `factor_limit`.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u32>,
    smallest_factor: Vec<u32>,
}

impl PrimeTable {
    pub fn sieve(limit: u64) -> Result<Self> {
        Self::sieve_with(limit, limit.min(DEFAULT_FACTOR_LIMIT), &Sequential)
    }

    pub fn sieve_with<E: Executor>(limit: u64, factor_limit: u64, exec: &E) -> Result<Self> {
        let segments = PrimeSegments::new(limit)?;
        let factor_limit = factor_limit.min(limit);
        let parts = exec.map(segments.count(), |i| {
            segments.primes_in(i).into_iter().map(|p| p as u32).collect::<Vec<u32>>()
        });
        let primes: Vec<u32> = parts.concat();
        let smallest_factor = smallest_factor_table(factor_limit, &primes);
        Ok(Self { limit, primes, smallest_factor })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn factor_limit(&self) -> u64 {
        self.smallest_factor.len().saturating_sub(1) as u64
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn primes(&self) -> impl DoubleEndedIterator<Item = u64> + ExactSizeIterator + '_ {
        self.primes.iter().map(|&p| u64::from(p))
    }

    /// The `j`-th prime, counting from 1.
    pub fn nth(&self, j: usize) -> Option<u64> {
        j.checked_sub(1).and_then(|i| self.primes.get(i)).map(|&p| u64::from(p))
    }

    /// Number of primes `≤ x`.
    pub fn pi(&self, x: u64) -> Result<usize> {
        if x > self.limit {
            return Err(Error::invalid("pi(x) queried beyond the sieve limit"));
        }
        Ok(self.primes.partition_point(|&p| u64::from(p) <= x))
    }

    /// Primes in the half-open interval `(lo, hi]`.
    pub fn primes_between(&self, lo: u64, hi: u64) -> Result<Vec<u64>> {
        let a = self.pi(lo.min(self.limit))?;
        let b = self.pi(hi)?;
        Ok(self.primes[a..b.max(a)].iter().map(|&p| u64::from(p)).collect())
    }

    /// 1-based position of a prime in the table.
    pub fn index_of(&self, p: u64) -> Option<usize> {
        let p = u32::try_from(p).ok()?;
        self.primes.binary_search(&p).ok().map(|i| i + 1)
    }

    pub fn smallest_factor(&self, n: u64) -> Result<u64> {
        self.check_factorable(n)?;
        Ok(if n == 1 { 1 } else { u64::from(self.smallest_factor[n as usize]) })
    }

    fn check_factorable(&self, n: u64) -> Result<()> {
        if n == 0 || n > self.factor_limit() {
            return Err(Error::invalid("integer outside the factorization range"));
        }
        Ok(())
    }

    pub fn factorize(&self, mut n: u64) -> Result<Factorization> {
        self.check_factorable(n)?;
        let mut pairs: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = u64::from(self.smallest_factor[n as usize]);
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            pairs.push((p, e));
        }
        Ok(Factorization::from_pairs_unchecked(pairs))
    }

    /// `d(n)`.
    pub fn divisor_count(&self, n: u64) -> Result<u64> {
        Ok(self.factorize(n)?.divisor_count())
    }

    /// `d_γ(n)`.
    pub fn generalized_divisor(&self, gamma: f64, n: u64) -> Result<f64> {
        self.factorize(n)?.generalized_divisor(gamma)
    }

    /// `(Ω(n), ω(n))`.
    pub fn omega_counts(&self, n: u64) -> Result<(u32, u32)> {
        Ok(self.factorize(n)?.omega_counts())
    }

    /// `κ(n)`: exponent of the j-th prime at position j - 1, trailing zeros trimmed.
    pub fn multi_index(&self, n: u64) -> Result<Vec<u32>> {
        self.factorize(n)?.multi_index(self)
    }

    pub fn divisors(&self, n: u64) -> Result<Vec<u64>> {
        Ok(self.factorize(n)?.divisors())
    }

    /// Integers `≤ bound` whose prime factors are among the first `d` primes.
    pub fn smooth_numbers(&self, d: usize, bound: u64) -> Result<Vec<u64>> {
        if d == 0 || d > self.primes.len() {
            return Err(Error::invalid("smoothness index outside the prime table"));
        }
        let primes: Vec<u64> = self.primes[..d].iter().map(|&p| u64::from(p)).collect();
        Ok(super::smooth_over(&primes, bound))
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = libm::sqrt(n as f64) as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn simple_sieve(limit: u64) -> Vec<u32> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut p = 2;
    while p * p <= n {
        if !composite[p] {
            (p * p..=n).step_by(p).for_each(|m| composite[m] = true);
        }
        p += 1;
    }
    (2..=n).filter(|&m| !composite[m]).map(|m| m as u32).collect()
}

fn smallest_factor_table(limit: u64, primes: &[u32]) -> Vec<u32> {
    let n = limit as usize;
    let mut spf = vec![0u32; n + 1];
    for &p in primes {
        let p = p as usize;
        if p > n {
            break;
        }
        if spf[p] != 0 {
            continue;
        }
        let mut m = p;
        while m <= n {
            if spf[m] == 0 {
                spf[m] = p as u32;
            }
            m += p;
        }
    }
    spf
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_primes() {
        let t = PrimeTable::sieve(30).unwrap();
        assert_eq!(t.primes().collect::<Vec<_>>(), [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(PrimeTable::sieve(2).unwrap().primes().collect::<Vec<_>>(), [2]);
        assert!(PrimeTable::sieve(1).is_err());
    }

    #[test]
    fn segments_agree_with_simple_sieve() {
        let limit = 3 * SEGMENT_SPAN + 12_345;
        let segs = PrimeSegments::new(limit).unwrap();
        let all: Vec<u64> = (0..segs.count()).flat_map(|i| segs.primes_in(i)).collect();
        let oracle: Vec<u64> = simple_sieve(limit).into_iter().map(u64::from).collect();
        assert_eq!(all, oracle);
    }

    #[test]
    fn pi_and_boundaries() {
        let t = PrimeTable::sieve(100).unwrap();
        assert_eq!(t.pi(1).unwrap(), 0);
        assert_eq!(t.pi(2).unwrap(), 1);
        assert_eq!(t.pi(100).unwrap(), 25);
        assert!(t.pi(101).is_err());
        assert_eq!(t.nth(25), Some(97));
        assert_eq!(t.index_of(97), Some(25));
        assert_eq!(t.primes_between(10, 30).unwrap(), [11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn factorization_range() {
        let t = PrimeTable::sieve_with(1000, 100, &Sequential).unwrap();
        assert!(t.factorize(0).is_err());
        assert!(t.factorize(101).is_err());
        assert_eq!(t.smallest_factor(91).unwrap(), 7);
    }
}
