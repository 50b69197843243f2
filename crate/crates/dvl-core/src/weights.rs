//! The two weight laws `d(n)^β` and `d_{β+1}(n)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{generalized_divisor_prime_power, Factorization, PrimeTable};
use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_to_infinity, QuadratureSpec, SemiInfiniteRule};
use crate::special::{gamma, zeta};
use crate::sum::Neumaier;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightKind {
    /// `w_n = d(n)^β`
    DivisorPower,
    /// `w_n = d_{β+1}(n)`
    ZetaPower,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightFamily {
    kind: WeightKind,
    beta: f64,
}

impl WeightFamily {
    pub fn new(kind: WeightKind, beta: f64) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::invalid("beta must be a positive real"));
        }
        Ok(Self { kind, beta })
    }

    pub fn divisor_power(beta: f64) -> Result<Self> {
        Self::new(WeightKind::DivisorPower, beta)
    }

    pub fn zeta_power(beta: f64) -> Result<Self> {
        Self::new(WeightKind::ZetaPower, beta)
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `w(p^r)`, the same for every prime `p`.
    pub fn prime_power_weight(&self, r: u32) -> f64 {
        match self.kind {
            WeightKind::DivisorPower => libm::pow(f64::from(r) + 1.0, self.beta),
            WeightKind::ZetaPower => generalized_divisor_prime_power(self.beta + 1.0, r).expect("beta + 1 is positive"),
        }
    }

    /// `w(p)`.
    pub fn prime_weight(&self) -> f64 {
        self.prime_power_weight(1)
    }

    pub fn weight_of(&self, factors: &Factorization) -> f64 {
        factors.pairs().iter().map(|&(_, e)| self.prime_power_weight(e)).product()
    }

    pub fn weight(&self, n: u64, table: &PrimeTable) -> Result<f64> {
        Ok(self.weight_of(&table.factorize(n)?))
    }

    /// `δ(w)`: `2^β − 1` or `β`.
    pub fn delta(&self) -> f64 {
        match self.kind {
            WeightKind::DivisorPower => libm::exp2(self.beta) - 1.0,
            WeightKind::ZetaPower => self.beta,
        }
    }

    /// Radial density `M(r)` on `(0, 1)`.
    pub fn radial_density(&self, r: f64) -> Result<f64> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::invalid("radial density is defined on (0, 1)"));
        }
        Ok(self.radial_density_log(-libm::log(r)))
    }

    /// `M(e^{−ℓ})` for `ℓ > 0`, evaluated without cancellation near `r = 1`.
    pub fn radial_density_log(&self, ell: f64) -> f64 {
        match self.kind {
            WeightKind::DivisorPower => libm::pow(ell, self.beta - 1.0) / gamma(self.beta),
            WeightKind::ZetaPower => self.beta * libm::pow(-libm::expm1(-ell), self.beta - 1.0),
        }
    }

    /// `∫₀¹ rⁿ M(r) dr`.
    pub fn disk_moment(&self, n: u32, spec: &QuadratureSpec) -> Result<f64> {
        let beta = self.beta;
        let n1 = f64::from(n) + 1.0;
        let result = match self.kind {
            // r = e^{-ℓ}, ℓ = v^{1/β}: the density cancels against the Jacobian
            WeightKind::DivisorPower => {
                let spec = spec.with_rule(SemiInfiniteRule::Rational);
                let r = integrate_to_infinity(|v| libm::exp(-n1 * libm::pow(v, 1.0 / beta)), 0.0, &spec)?;
                r.value / gamma(beta + 1.0)
            }
            // 1 − r = u^{1/β}
            WeightKind::ZetaPower => {
                integrate(|u| libm::pow(1.0 - libm::pow(u, 1.0 / beta), f64::from(n)), 0.0, 1.0, spec)?.value
            }
        };
        Ok(result)
    }

    /// `Σ_{n≤x} w_n`.
    pub fn zw_partial(&self, x: f64, table: &PrimeTable) -> Result<f64> {
        if !(x >= 1.0) {
            return Err(Error::invalid("partial sums start at x = 1"));
        }
        let n = libm::floor(x) as u64;
        Ok(WeightTable::new(*self, n, table)?.values().iter().copied().collect::<Neumaier>().value())
    }

    /// `Σ_{n≤x} w_n / (x (log x)^δ)`.
    pub fn chebyshev_ratio(&self, x: f64, table: &PrimeTable) -> Result<f64> {
        if !(x >= 2.0) {
            return Err(Error::invalid("chebyshev ratio needs x >= 2"));
        }
        Ok(self.zw_partial(x, table)? / (x * libm::pow(libm::log(x), self.delta())))
    }

    /// Exponent `c` with `Z_w(y) ≤ ζ(y)^c` for real `y > 1`.
    pub fn zeta_dominating_power(&self) -> f64 {
        match self.kind {
            // d(n)^β ≤ d(n)^k ≤ d_{2^k}(n) with k = ⌈β⌉
            WeightKind::DivisorPower => libm::exp2(libm::ceil(self.beta)),
            WeightKind::ZetaPower => self.beta + 1.0,
        }
    }

    /// `Z_w(σ) = Σ w_n n^{−σ}` for real `σ > 1` as an Euler product.
    ///
    /// The factor `ζ(σ)^{δ+1}` is split off so the remaining product over
    /// primes `≤ table.limit()` converges absolutely; the omitted tail is
    /// `O(Σ_{p>P} p^{−2σ})`.
    pub fn zw_euler(&self, sigma: f64, table: &PrimeTable) -> Result<f64> {
        let z = zeta(sigma)?;
        match self.kind {
            WeightKind::ZetaPower => Ok(libm::pow(z, self.beta + 1.0)),
            WeightKind::DivisorPower => {
                let c = self.delta() + 1.0;
                let mut log_corr = Neumaier::new();
                for p in table.primes() {
                    let x = libm::pow(p as f64, -sigma);
                    let mut local = 1.0;
                    let mut xr = 1.0;
                    for r in 1..200u32 {
                        xr *= x;
                        let term = self.prime_power_weight(r) * xr;
                        local += term;
                        if term < 1e-18 * local {
                            break;
                        }
                    }
                    log_corr.add(libm::log(local) + c * libm::log1p(-x));
                }
                Ok(libm::pow(z, c) * libm::exp(log_corr.value()))
            }
        }
    }
}

/// `w_1..w_N` for one family, or the unweighted space when all are 1.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    values: Vec<f64>,
}

impl WeightTable {
    pub fn new(family: WeightFamily, n_max: u64, table: &PrimeTable) -> Result<Self> {
        if n_max > table.factor_limit() {
            return Err(Error::invalid("weight table exceeds the factorization range"));
        }
        let mut cache: Vec<f64> = (0..64).map(|r| family.prime_power_weight(r)).collect();
        let mut values = vec![0.0; n_max as usize];
        for n in 1..=n_max {
            let f = table.factorize(n)?;
            values[n as usize - 1] = f
                .pairs()
                .iter()
                .map(|&(_, e)| {
                    let e = e as usize;
                    if e >= cache.len() {
                        cache.resize(e + 1, 0.0);
                        cache[e] = family.prime_power_weight(e as u32);
                    }
                    cache[e]
                })
                .product();
        }
        Ok(Self { values })
    }

    /// `w_n ≡ 1`, the space `ℋ²`.
    pub fn unweighted(n_max: u64) -> Self {
        Self { values: vec![1.0; n_max as usize] }
    }

    pub fn n_max(&self) -> u64 {
        self.values.len() as u64
    }

    /// `w_n` for `1 ≤ n ≤ n_max`.
    #[inline]
    pub fn get(&self, n: u64) -> f64 {
        self.values[n as usize - 1]
    }

    pub fn try_get(&self, n: u64) -> Result<f64> {
        if n == 0 || n > self.n_max() {
            return Err(Error::invalid("index outside the weight table"));
        }
        Ok(self.get(n))
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laws() {
        let t = PrimeTable::sieve(1000).unwrap();
        let div2 = WeightFamily::divisor_power(2.0).unwrap();
        let zeta1 = WeightFamily::zeta_power(1.0).unwrap();
        assert_eq!(div2.weight(6, &t).unwrap(), 16.0);
        assert_eq!(zeta1.weight(8, &t).unwrap(), 4.0);
        assert_eq!(div2.weight(1, &t).unwrap(), 1.0);
        assert_eq!(zeta1.weight(1, &t).unwrap(), 1.0);
        assert_eq!(WeightFamily::divisor_power(1.0).unwrap().delta(), 1.0);
        assert_eq!(WeightFamily::zeta_power(2.0).unwrap().delta(), 2.0);
        assert!(WeightFamily::divisor_power(1e-9).unwrap().delta() < 1e-8);
        assert!(WeightFamily::new(WeightKind::ZetaPower, 0.0).is_err());
    }

    #[test]
    fn densities() {
        let d1 = WeightFamily::divisor_power(1.0).unwrap();
        let z1 = WeightFamily::zeta_power(1.0).unwrap();
        let z2 = WeightFamily::zeta_power(2.0).unwrap();
        for r in [0.1, 0.5, 0.9] {
            assert!((d1.radial_density(r).unwrap() - 1.0).abs() < 1e-15);
            assert!((z1.radial_density(r).unwrap() - 1.0).abs() < 1e-15);
        }
        assert!((z2.radial_density(0.5).unwrap() - 1.0).abs() < 1e-15);
        assert!(z2.radial_density(1.0).is_err());
        assert!(z2.radial_density(0.0).is_err());
    }

    #[test]
    fn moments_small() {
        let spec = QuadratureSpec::default();
        let d1 = WeightFamily::divisor_power(1.0).unwrap();
        assert!((d1.disk_moment(3, &spec).unwrap() - 0.25).abs() < 1e-12);
        let z1 = WeightFamily::zeta_power(1.0).unwrap();
        assert!((z1.disk_moment(1, &spec).unwrap() - 0.5).abs() < 1e-12);
        let z2 = WeightFamily::zeta_power(2.0).unwrap();
        assert!((z2.disk_moment(4, &spec).unwrap() - 1.0 / 15.0).abs() < 1e-12);
    }

    #[test]
    fn partial_sums() {
        let t = PrimeTable::sieve(1000).unwrap();
        let d1 = WeightFamily::divisor_power(1.0).unwrap();
        assert_eq!(d1.zw_partial(10.0, &t).unwrap(), 27.0);
        let z1 = WeightFamily::zeta_power(1.0).unwrap();
        assert_eq!(z1.zw_partial(4.0, &t).unwrap(), 8.0);
    }

    #[test]
    fn euler_product_matches_zeta_square() {
        let t = PrimeTable::sieve(100_000).unwrap();
        let d1 = WeightFamily::divisor_power(1.0).unwrap();
        let z4 = zeta(4.0).unwrap();
        assert!((d1.zw_euler(4.0, &t).unwrap() - z4 * z4).abs() < 1e-13);
    }
}
