use alloc::vec;
use alloc::vec::Vec;

use super::sieve::PrimeTable;
use crate::error::{Error, Result};

/// Prime factorization as `(prime, exponent)` pairs with increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub(super) fn from_pairs_unchecked(pairs: Vec<(u64, u32)>) -> Self {
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn value(&self) -> u64 {
        self.pairs.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn divisor_count(&self) -> u64 {
        self.pairs.iter().map(|&(_, e)| u64::from(e) + 1).product()
    }

    pub fn generalized_divisor(&self, gamma: f64) -> Result<f64> {
        let mut acc = super::generalized_divisor_prime_power(gamma, 0)?;
        for &(_, e) in &self.pairs {
            acc *= super::generalized_divisor_prime_power(gamma, e)?;
        }
        Ok(acc)
    }

    /// `(Ω, ω)`.
    pub fn omega_counts(&self) -> (u32, u32) {
        let big = self.pairs.iter().map(|&(_, e)| e).sum();
        (big, self.pairs.len() as u32)
    }

    pub fn is_squarefree(&self) -> bool {
        self.pairs.iter().all(|&(_, e)| e == 1)
    }

    pub fn multi_index(&self, table: &PrimeTable) -> Result<Vec<u32>> {
        let Some(&(largest, _)) = self.pairs.last() else {
            return Ok(Vec::new());
        };
        let len = table
            .index_of(largest)
            .ok_or_else(|| Error::invalid("prime factor missing from the table"))?;
        let mut kappa = vec![0u32; len];
        for &(p, e) in &self.pairs {
            let j = table.index_of(p).ok_or_else(|| Error::invalid("prime factor missing from the table"))?;
            kappa[j - 1] = e;
        }
        Ok(kappa)
    }

    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in &self.pairs {
            let base = out.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                out.extend((0..base).map(|i| out[i] * pk).collect::<Vec<_>>());
            }
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> PrimeTable {
        PrimeTable::sieve(1_000_000).unwrap()
    }

    #[test]
    fn textbook_cases() {
        let t = table();
        assert_eq!(t.factorize(360).unwrap().pairs(), [(2, 3), (3, 2), (5, 1)]);
        assert!(t.factorize(1).unwrap().pairs().is_empty());
        assert_eq!(t.divisor_count(12).unwrap(), 6);
        assert_eq!(t.divisor_count(1).unwrap(), 1);
        for k in 0..=19 {
            assert_eq!(t.divisor_count(1 << k).unwrap(), k + 1);
        }
        assert_eq!(t.omega_counts(12).unwrap(), (3, 2));
        assert_eq!(t.omega_counts(1).unwrap(), (0, 0));
        assert_eq!(t.omega_counts(7u64.pow(5)).unwrap(), (5, 1));
        assert_eq!(t.multi_index(10).unwrap(), [1, 0, 1]);
        assert!(t.multi_index(1).unwrap().is_empty());
        assert_eq!(t.multi_index(11).unwrap(), [0, 0, 0, 0, 1]);
        assert_eq!(t.divisors(12).unwrap(), [1, 2, 3, 4, 6, 12]);
        assert_eq!(t.divisors(1).unwrap(), [1]);
        assert_eq!(t.smooth_numbers(2, 10).unwrap(), [1, 2, 3, 4, 6, 8, 9]);
        assert_eq!(t.smooth_numbers(1, 20).unwrap(), [1, 2, 4, 8, 16]);
        assert!((t.generalized_divisor(3.0, 4).unwrap() - 6.0).abs() < 1e-15);
        assert_eq!(t.generalized_divisor(0.7, 1).unwrap(), 1.0);
    }
}
