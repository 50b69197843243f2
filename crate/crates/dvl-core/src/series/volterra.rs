use alloc::vec::Vec;

use num_complex::Complex64;

use super::DirichletSeries;
use crate::error::{Error, Result};

/// Coefficients of `T_g f = −∫_s^∞ f(w) g'(w) dw` up to `N`:
/// `c_n = (1/log n) Σ_{km=n, m≥2} a_k b_m log m`.
pub fn volterra_apply(g: &DirichletSeries, f: &DirichletSeries, truncation: u64) -> Result<DirichletSeries> {
    if g.coeff(1) != Complex64::new(0.0, 0.0) {
        return Err(Error::invalid("symbol must have no constant term"));
    }
    if truncation < 2 {
        return Err(Error::invalid("volterra output needs N >= 2"));
    }
    let mut out = DirichletSeries::zero(truncation)?;
    let symbol: Vec<(u64, Complex64)> = g.support().map(|(m, b)| (m, b * libm::log(m as f64))).collect();
    for (k, a) in f.support() {
        let bound = truncation / k;
        if bound < 2 {
            break;
        }
        for &(m, b) in symbol.iter().take_while(|(m, _)| *m <= bound) {
            out.coeffs[(k * m) as usize - 1] += a * b;
        }
    }
    for (i, c) in out.coeffs.iter_mut().enumerate().skip(1) {
        *c /= libm::log(i as f64 + 1.0);
    }
    Ok(out)
}

/// `T_g` plus the diagonal map `aₙ ↦ aₙ / log n` on `n ≥ 2`.
pub fn tilde_volterra_apply(g: &DirichletSeries, f: &DirichletSeries, truncation: u64) -> Result<DirichletSeries> {
    let mut out = volterra_apply(g, f, truncation)?;
    for (n, a) in f.support().filter(|&(n, _)| n >= 2 && n <= truncation) {
        out.coeffs[n as usize - 1] += a / libm::log(n as f64);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn constant_input_reproduces_symbol() {
        let g = DirichletSeries::from_pairs(30, [(2, r(0.5)), (6, r(-1.5)), (25, Complex64::new(0.0, 2.0))]).unwrap();
        let one = DirichletSeries::monomial(1, r(1.0), 30).unwrap();
        let out = volterra_apply(&g, &one, 30).unwrap();
        for n in 1..=30 {
            assert!((out.coeff(n) - g.coeff(n)).norm() < 1e-15);
        }
    }

    #[test]
    fn monomial_pair() {
        let q = 3u64;
        let k = 5u64;
        let g = DirichletSeries::monomial(q, r(2.0), 20).unwrap();
        let f = DirichletSeries::monomial(k, r(1.0), 20).unwrap();
        let out = volterra_apply(&g, &f, 20).unwrap();
        let expect = 2.0 * libm::log(3.0) / libm::log(15.0);
        assert!((out.coeff(15).re - expect).abs() < 1e-15);
        assert_eq!(out.support().count(), 1);
    }

    #[test]
    fn rejects_constant_symbol() {
        let g = DirichletSeries::monomial(1, r(1.0), 4).unwrap();
        let f = DirichletSeries::monomial(2, r(1.0), 4).unwrap();
        assert!(volterra_apply(&g, &f, 4).is_err());
        assert!(volterra_apply(&f, &f, 1).is_err());
    }

    #[test]
    fn tilde_diagonal_only() {
        let g = DirichletSeries::zero(8).unwrap();
        let f = DirichletSeries::monomial(2, r(1.0), 8).unwrap();
        let out = tilde_volterra_apply(&g, &f, 8).unwrap();
        assert!((out.coeff(2).re - 1.0 / libm::log(2.0)).abs() < 1e-15);
        assert_eq!(out.support().count(), 1);
    }
}
