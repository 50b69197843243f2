use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::LinearOperator;
use crate::error::{Error, Result};
use crate::special::gamma;
use crate::weights::WeightTable;

// Trapezoid step in τ = log t; the integrand is analytic in |Im τ| < π/2,
// so the discretization error is of order exp(−2π·(π/4)/STEP).
const STEP: f64 = 0.125;
const EPS: f64 = 1e-17;

/// Hankel section with entries `u_m u_n (log m + log n)^{−e}` on `[2, N]`,
/// where `u_m = w_m^{1/2} m^{−a}`.
///
/// This is the form generated by `ρ_k = w_k k^{−a} (log k)^{−e}`. The kernel
/// is expanded as `x^{−e} = Γ(e)^{−1} ∫ t^{e−1} e^{−tx} dt` and discretized,
/// which writes the matrix as a short sum of rank-one terms `c_j v_j v_jᵀ`
/// and makes products cost `O(QN)` instead of `O(N²)`.
#[derive(Debug, Clone)]
pub struct PowerLawHankel {
    dim: usize,
    coeffs: Vec<f64>,
    // node-major: vectors[j * dim + i] = u_{i+2} (i+2)^{−t_j}
    vectors: Vec<f64>,
}

impl PowerLawHankel {
    pub fn new(weights: &WeightTable, a: f64, exponent: f64, truncation: u64) -> Result<Self> {
        if truncation < 2 || truncation > weights.n_max() {
            return Err(Error::invalid("power-law hankel needs 2 <= N <= weight table size"));
        }
        if !(exponent > 0.0) || !a.is_finite() {
            return Err(Error::invalid("power-law hankel needs a positive exponent"));
        }
        let dim = (truncation - 1) as usize;
        let logs: Vec<f64> = (2..=truncation).map(|m| libm::log(m as f64)).collect();
        let u: Vec<f64> = (2..=truncation)
            .zip(&logs)
            .map(|(m, &l)| libm::sqrt(weights.get(m)) * libm::exp(-a * l))
            .collect();
        let x_min = 2.0 * logs[0];
        let x_max = 2.0 * logs[dim - 1];
        let norm = gamma(exponent);
        // lower cut: ∫_{−∞}^{τ0} e^{eτ} dτ below EPS relative to x_max^{−e}
        let tau0 = (libm::log(EPS * exponent * norm) - exponent * libm::log(x_max)) / exponent;
        // upper cut: e^{eτ − x_min e^τ} below EPS relative to x_min^{−e}
        let mut tau1 = libm::log(1.0 / x_min);
        while exponent * tau1 - x_min * libm::exp(tau1) > libm::log(EPS) - exponent * libm::log(x_min) {
            tau1 += STEP;
        }
        let nodes = libm::ceil((tau1 - tau0) / STEP) as usize + 1;
        let mut coeffs = Vec::with_capacity(nodes);
        let mut vectors = Vec::with_capacity(nodes * dim);
        for j in 0..nodes {
            let tau = tau0 + j as f64 * STEP;
            let t = libm::exp(tau);
            coeffs.push(STEP * libm::exp(exponent * tau) / norm);
            vectors.extend(u.iter().zip(&logs).map(|(&um, &l)| um * libm::exp(-t * l)));
        }
        Ok(Self { dim, coeffs, vectors })
    }

    pub fn nodes(&self) -> usize {
        self.coeffs.len()
    }

    /// Basis integers `2..=N`.
    pub fn indices(&self) -> impl Iterator<Item = u64> {
        2..=(self.dim as u64 + 1)
    }
}

impl LinearOperator for PowerLawHankel {
    fn rows(&self) -> usize {
        self.dim
    }

    fn cols(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        y.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        let mut proj = vec![Complex64::new(0.0, 0.0); self.coeffs.len()];
        for (j, p) in proj.iter_mut().enumerate() {
            let v = &self.vectors[j * self.dim..(j + 1) * self.dim];
            let dot: Complex64 = v.iter().zip(x).map(|(&vi, &xi)| xi * vi).sum();
            *p = dot * self.coeffs[j];
        }
        for (j, &p) in proj.iter().enumerate() {
            let v = &self.vectors[j * self.dim..(j + 1) * self.dim];
            y.iter_mut().zip(v).for_each(|(yi, &vi)| *yi += p * vi);
        }
    }

    fn apply_adjoint(&self, x: &[Complex64], y: &mut [Complex64]) {
        // real symmetric
        self.apply(x, y);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeTable;
    use crate::weights::WeightFamily;

    #[test]
    fn matches_closed_form_entries() {
        let t = PrimeTable::sieve(10_000).unwrap();
        let w = WeightTable::new(WeightFamily::divisor_power(1.0).unwrap(), 80, &t).unwrap();
        for (a, e) in [(0.5, 2.0), (0.7, 1.5), (0.5, 1.1)] {
            let h = PowerLawHankel::new(&w, a, e, 80).unwrap();
            let dim = h.rows();
            let mut y = vec![Complex64::new(0.0, 0.0); dim];
            for (col, n) in [(0usize, 2u64), (10, 12), (78, 80)] {
                let mut x = vec![Complex64::new(0.0, 0.0); dim];
                x[col] = Complex64::new(1.0, 0.0);
                h.apply(&x, &mut y);
                for (row, m) in h.indices().enumerate() {
                    let exact = libm::sqrt(w.get(m) * w.get(n)) * libm::pow((m * n) as f64, -a)
                        * libm::pow(libm::log((m * n) as f64), -e);
                    assert!((y[row].re - exact).abs() <= 1e-13 * exact, "a={a} e={e} m={m} n={n}");
                }
            }
        }
    }
}
