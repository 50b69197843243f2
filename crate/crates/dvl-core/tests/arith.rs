use dvl_core::arith::{generalized_divisor_prime_power, PrimeSegments, PrimeTable};
use proptest::prelude::*;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn brute_divisors(n: u64) -> u64 {
    (1..=n).filter(|d| n % d == 0).count() as u64
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[test]
fn primes_match_trial_division() {
    let table = PrimeTable::sieve(5000).unwrap();
    let expected: Vec<u64> = (2..=5000).filter(|&n| is_prime(n)).collect();
    assert_eq!(table.primes().collect::<Vec<_>>(), expected);
}

#[test]
fn prime_counts() {
    let table = PrimeTable::sieve(10_000_000).unwrap();
    assert_eq!(table.pi(1_000_000).unwrap(), 78_498);
    assert_eq!(table.pi(10_000_000).unwrap(), 664_579);
    let segments = PrimeSegments::new(10_000_000).unwrap();
    let total: usize = (0..segments.count()).map(|i| segments.primes_in(i).len()).sum();
    assert_eq!(total, 664_579);
}

#[test]
fn divisor_count_matches_brute_force() {
    let table = PrimeTable::sieve(3000).unwrap();
    for n in 1..=3000 {
        assert_eq!(table.divisor_count(n).unwrap(), brute_divisors(n), "n={n}");
    }
}

#[test]
fn divisor_functions_are_multiplicative() {
    let table = PrimeTable::sieve(1_000_000).unwrap();
    for k in 1..=1000u64 {
        for l in (k..=1000).step_by(7) {
            if gcd(k, l) != 1 {
                continue;
            }
            let d = |n| table.divisor_count(n).unwrap();
            assert_eq!(d(k * l), d(k) * d(l));
            let g = |n| table.generalized_divisor(2.5, n).unwrap();
            let (lhs, rhs) = (g(k * l), g(k) * g(l));
            assert!((lhs - rhs).abs() <= 1e-12 * lhs, "k={k} l={l}");
        }
    }
}

#[test]
fn factorization_reconstructs() {
    let table = PrimeTable::sieve(1_000_000).unwrap();
    for n in 1..=1_000_000u64 {
        let f = table.factorize(n).unwrap();
        assert_eq!(f.value(), n);
        assert!(f.pairs().iter().all(|&(p, e)| e > 0 && is_prime_cached(&table, p)));
    }
}

fn is_prime_cached(table: &PrimeTable, p: u64) -> bool {
    table.index_of(p).is_some()
}

#[test]
fn omega_relations() {
    let table = PrimeTable::sieve(100_000).unwrap();
    for n in 1..=100_000u64 {
        let (big, small) = table.omega_counts(n).unwrap();
        assert!(big >= small);
        assert_eq!(big == small, table.factorize(n).unwrap().is_squarefree(), "n={n}");
    }
}

#[test]
fn generalized_divisor_of_prime_powers_is_binomial() {
    // d_3(p^r) = C(r+2, 2)
    for r in 0..20u32 {
        let expected = f64::from((r + 1) * (r + 2) / 2);
        assert_eq!(generalized_divisor_prime_power(3.0, r).unwrap(), expected);
    }
}

#[test]
fn divisors_are_sorted_and_complete() {
    let table = PrimeTable::sieve(10_000).unwrap();
    for n in [1u64, 12, 360, 9973, 10_000] {
        let expected: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        assert_eq!(table.divisors(n).unwrap(), expected);
    }
}

#[test]
fn factorization_outside_range_is_rejected() {
    let table = PrimeTable::sieve(100).unwrap();
    assert!(table.factorize(101 * 103).is_err());
    assert!(PrimeTable::sieve(1).is_err());
}

proptest! {
    #[test]
    fn generalized_divisor_nondecreasing(gamma in 1.0f64..6.0, r in 0u32..40) {
        let a = generalized_divisor_prime_power(gamma, r).unwrap();
        let b = generalized_divisor_prime_power(gamma, r + 1).unwrap();
        prop_assert!(b >= a);
    }

    #[test]
    fn smooth_numbers_are_smooth(d in 1usize..6, bound in 1u64..5000) {
        let table = PrimeTable::sieve(100).unwrap();
        let primes: Vec<u64> = table.primes().take(d).collect();
        let got = table.smooth_numbers(d, bound).unwrap();
        let expected: Vec<u64> = (1..=bound)
            .filter(|&n| {
                let mut m = n;
                for &p in &primes {
                    while m % p == 0 { m /= p; }
                }
                m == 1
            })
            .collect();
        prop_assert_eq!(got, expected);
    }
}
