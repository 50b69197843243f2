//! Truncated Dirichlet series `Σ_{n≤N} aₙ n^{−s}` and their algebra.

mod bohr;
mod squarefree;
mod volterra;

pub use bohr::BohrLift;
pub use squarefree::{subset_convolve, SquarefreeSeries, MAX_SQUAREFREE_PRIMES};
pub use volterra::{tilde_volterra_apply, volterra_apply};

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::arith::PrimeTable;
use crate::error::{Error, Result};
use crate::sum::ComplexNeumaier;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Coefficients `a_1..a_N`; indices above the truncation are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletSeries {
    coeffs: Vec<Complex64>,
}

impl DirichletSeries {
    pub fn zero(truncation: u64) -> Result<Self> {
        if truncation == 0 {
            return Err(Error::invalid("truncation must be at least 1"));
        }
        Ok(Self { coeffs: vec![ZERO; truncation as usize] })
    }

    /// Takes `a_1..a_N` in order.
    pub fn from_dense(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("truncation must be at least 1"));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::from_dense(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_pairs<I: IntoIterator<Item = (u64, Complex64)>>(truncation: u64, pairs: I) -> Result<Self> {
        let mut s = Self::zero(truncation)?;
        for (n, c) in pairs {
            s.set(n, c)?;
        }
        Ok(s)
    }

    /// `c · n^{−s}` truncated at `truncation`.
    pub fn monomial(n: u64, c: Complex64, truncation: u64) -> Result<Self> {
        Self::from_pairs(truncation, [(n, c)])
    }

    /// The truncated zeta function `Σ_{n≤N} n^{−s}`.
    pub fn zeta(truncation: u64) -> Result<Self> {
        Self::from_dense(vec![Complex64::new(1.0, 0.0); truncation as usize])
    }

    pub fn truncation(&self) -> u64 {
        self.coeffs.len() as u64
    }

    pub fn coeff(&self, n: u64) -> Complex64 {
        match n {
            0 => ZERO,
            _ => self.coeffs.get(n as usize - 1).copied().unwrap_or(ZERO),
        }
    }

    pub fn set(&mut self, n: u64, c: Complex64) -> Result<()> {
        if n == 0 || n > self.truncation() {
            return Err(Error::invalid("coefficient index outside [1, N]"));
        }
        self.coeffs[n as usize - 1] = c;
        Ok(())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Nonzero `(n, aₙ)` in increasing `n`.
    pub fn support(&self) -> impl Iterator<Item = (u64, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != ZERO)
            .map(|(i, &c)| (i as u64 + 1, c))
    }

    /// Largest index with a nonzero coefficient, 0 for the zero series.
    pub fn degree(&self) -> u64 {
        self.coeffs.iter().rposition(|c| *c != ZERO).map_or(0, |i| i as u64 + 1)
    }

    pub fn is_zero(&self) -> bool {
        self.degree() == 0
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|&a| a * c).collect() }
    }

    /// Coefficientwise sum; the truncation is the larger of the two.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self { coeffs: (1..=n as u64).map(|k| self.coeff(k) + other.coeff(k)).collect() }
    }

    /// Dirichlet convolution `Σ_{k|n} f_k g_{n/k}` for `n ≤ N`.
    ///
    /// Each output coefficient accumulates its terms in increasing `k`.
    pub fn convolve(&self, other: &Self, truncation: u64) -> Result<Self> {
        let mut out = Self::zero(truncation)?;
        let g: Vec<(u64, Complex64)> = other.support().collect();
        for (k, a) in self.support() {
            if k > truncation {
                break;
            }
            let bound = truncation / k;
            for &(m, b) in g.iter().take_while(|(m, _)| *m <= bound) {
                out.coeffs[(k * m) as usize - 1] += a * b;
            }
        }
        Ok(out)
    }

    /// `aₙ ↦ −aₙ log n`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| if i == 0 { ZERO } else { -a * libm::log(i as f64 + 1.0) })
            .collect();
        Self { coeffs }
    }

    /// `aₙ ↦ aₙ χ(n)` for `χ` completely multiplicative with prime values `chi(p)`.
    pub fn twist<F: Fn(u64) -> Option<Complex64>>(&self, chi: F, table: &PrimeTable) -> Result<Self> {
        let mut coeffs = self.coeffs.clone();
        for (n, c) in coeffs.iter_mut().enumerate() {
            if *c == ZERO {
                continue;
            }
            let f = table.factorize(n as u64 + 1)?;
            for &(p, e) in f.pairs() {
                let v = chi(p).ok_or_else(|| Error::invalid(alloc::format!("character value missing at prime {p}")))?;
                *c *= v.powu(e);
            }
        }
        Ok(Self { coeffs })
    }

    /// `f(s + σ)`: `aₙ ↦ aₙ n^{−σ}`.
    pub fn translate(&self, sigma: f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| if a == ZERO { a } else { a * libm::pow(i as f64 + 1.0, -sigma) })
            .collect();
        Self { coeffs }
    }

    /// Support clipped to `n ≤ N'`.
    pub fn partial_sum(&self, truncation: u64) -> Result<Self> {
        if truncation == 0 || truncation > self.truncation() {
            return Err(Error::invalid("partial sum bound must lie in [1, N]"));
        }
        Ok(Self { coeffs: self.coeffs[..truncation as usize].to_vec() })
    }

    /// Terms with `Ω(n) = m`.
    pub fn homogeneous_part(&self, m: u32, table: &PrimeTable) -> Result<Self> {
        let mut out = Self::zero(self.truncation())?;
        for (n, c) in self.support() {
            if table.omega_counts(n)?.0 == m {
                out.coeffs[n as usize - 1] = c;
            }
        }
        Ok(out)
    }

    /// Finite sum `Σ aₙ n^{−s}`.
    pub fn evaluate(&self, s: Complex64) -> Complex64 {
        let mut acc = ComplexNeumaier::new();
        for (n, a) in self.support() {
            acc.add(a * (-s * libm::log(n as f64)).exp());
        }
        acc.value()
    }

    pub fn bohr_lift(&self, table: &PrimeTable) -> Result<BohrLift> {
        BohrLift::lift(self, table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zeta_square_is_divisor_count() {
        let z = DirichletSeries::zeta(20).unwrap();
        let z2 = z.convolve(&z, 20).unwrap();
        assert_eq!(z2.coeff(12), c(6.0, 0.0));
        let a = DirichletSeries::monomial(2, c(1.0, 0.0), 10).unwrap();
        let b = DirichletSeries::monomial(3, c(1.0, 0.0), 10).unwrap();
        let ab = a.convolve(&b, 10).unwrap();
        assert_eq!(ab.support().collect::<Vec<_>>(), [(6, c(1.0, 0.0))]);
        assert!(a.convolve(&b, 0).is_err());
    }

    #[test]
    fn derivative_and_translate() {
        let f = DirichletSeries::monomial(4, c(1.0, 0.0), 4).unwrap();
        assert_eq!(f.derivative().coeff(4), c(-libm::log(4.0), 0.0));
        let one = DirichletSeries::monomial(1, c(1.0, 0.0), 4).unwrap();
        assert!(one.derivative().is_zero());
        let two = DirichletSeries::monomial(2, c(1.0, 0.0), 2).unwrap();
        assert_eq!(two.translate(1.0).coeff(2), c(0.5, 0.0));
    }

    #[test]
    fn twist_by_i() {
        let t = PrimeTable::sieve(100).unwrap();
        let f = DirichletSeries::from_pairs(4, [(2, c(1.0, 0.0)), (4, c(1.0, 0.0))]).unwrap();
        let g = f.twist(|p| (p == 2).then_some(c(0.0, 1.0)), &t).unwrap();
        assert_eq!(g.coeff(2), c(0.0, 1.0));
        assert_eq!(g.coeff(4), c(-1.0, 0.0));
        let h = DirichletSeries::monomial(3, c(1.0, 0.0), 4).unwrap();
        assert!(h.twist(|p| (p == 2).then_some(c(1.0, 0.0)), &t).is_err());
    }

    #[test]
    fn filters() {
        let t = PrimeTable::sieve(100).unwrap();
        let z = DirichletSeries::zeta(12).unwrap();
        let h = z.homogeneous_part(2, &t).unwrap();
        assert_eq!(h.support().map(|(n, _)| n).collect::<Vec<_>>(), [4, 6, 9, 10]);
        let p = z.partial_sum(5).unwrap();
        assert_eq!(p.partial_sum(5).unwrap(), p);
        assert!(z.partial_sum(13).is_err());
    }

    #[test]
    fn evaluate_constant() {
        let one = DirichletSeries::monomial(1, c(1.0, 0.0), 5).unwrap();
        assert_eq!(one.evaluate(c(0.3, 7.0)), c(1.0, 0.0));
    }
}
