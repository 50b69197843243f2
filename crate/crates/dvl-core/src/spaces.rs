//! Norms, inner products and kernels of `ℋ²_w`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{integrate_to_infinity, QuadratureSpec, SemiInfiniteRule};
use crate::series::DirichletSeries;
use crate::special::zeta;
use crate::sum::{ComplexNeumaier, Neumaier};
use crate::weights::{WeightFamily, WeightTable};

fn check_covered(weights: &WeightTable, f: &DirichletSeries) -> Result<()> {
    if f.degree() > weights.n_max() {
        return Err(Error::invalid("series support exceeds the weight table"));
    }
    Ok(())
}

/// `e_{w,n} = w_n^{1/2} n^{−s}`.
pub fn basis_vector(weights: &WeightTable, n: u64, truncation: u64) -> Result<DirichletSeries> {
    let w = weights.try_get(n)?;
    DirichletSeries::monomial(n, Complex64::new(libm::sqrt(w), 0.0), truncation)
}

/// `‖f‖ = (Σ |aₙ|²/wₙ)^{1/2}`.
pub fn norm_h2w(weights: &WeightTable, f: &DirichletSeries) -> Result<f64> {
    check_covered(weights, f)?;
    Ok(libm::sqrt(f.support().map(|(n, a)| a.norm_sqr() / weights.get(n)).collect::<Neumaier>().value()))
}

/// `⟨f, g⟩ = Σ aₙ b̄ₙ / wₙ`.
pub fn inner_h2w(weights: &WeightTable, f: &DirichletSeries, g: &DirichletSeries) -> Result<Complex64> {
    check_covered(weights, f)?;
    check_covered(weights, g)?;
    let mut acc = ComplexNeumaier::new();
    for (n, a) in f.support() {
        acc.add(a * g.coeff(n).conj() / weights.get(n));
    }
    Ok(acc.value())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: Complex64,
    /// Upper bound for `|Σ_{n>N} w_n n^{−(s+ū)}|`.
    pub tail_bound: f64,
}

/// Truncated reproducing kernel `Σ_{n≤N} w_n n^{−(s+ū)}` with a Rankin tail
/// bound: for `1 < y < x = Re(s+ū)`,
/// `Σ_{n>N} w_n n^{−x} ≤ N^{y−x} (ζ(y)^c − Σ_{n≤N} w_n n^{−y})`.
pub fn kernel_value(
    family: &WeightFamily,
    weights: &WeightTable,
    s: Complex64,
    u: Complex64,
    truncation: u64,
) -> Result<KernelValue> {
    let z = s + u.conj();
    let x = z.re;
    if !(x > 1.0) {
        return Err(Error::domain("kernel needs Re(s + conj(u)) > 1"));
    }
    if truncation == 0 || truncation > weights.n_max() {
        return Err(Error::invalid("kernel truncation outside the weight table"));
    }
    let mut acc = ComplexNeumaier::new();
    for n in 1..=truncation {
        acc.add(weights.get(n) * (-z * libm::log(n as f64)).exp());
    }
    let c = family.zeta_dominating_power();
    let big_n = truncation as f64;
    let mut tail_bound = f64::INFINITY;
    for k in 1..8 {
        let y = 1.0 + (x - 1.0) * f64::from(k) / 8.0;
        let head = (1..=truncation).map(|n| weights.get(n) * libm::pow(n as f64, -y)).collect::<Neumaier>().value();
        let rest = (libm::pow(zeta(y)?, c) - head).max(0.0) + 1e-14 * head;
        tail_bound = tail_bound.min(libm::pow(big_n, y - x) * rest);
    }
    Ok(KernelValue { value: acc.value(), tail_bound })
}

/// `Qₙ = ∫₀^∞ y n^{−2y} dy` by quadrature.
pub fn lp_radial_factor(n: u64, spec: &QuadratureSpec) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid("radial factor needs n >= 2"));
    }
    let two_log = 2.0 * libm::log(n as f64);
    let spec = spec.with_rule(SemiInfiniteRule::Exponential);
    Ok(integrate_to_infinity(|y| y * libm::exp(-two_log * y), 0.0, &spec)?.value)
}

/// `|a₁|² + 4 Σ_{n≥2} (|aₙ|²/wₙ)(log n)² Qₙ`.
pub fn littlewood_paley_i2(weights: &WeightTable, f: &DirichletSeries, spec: &QuadratureSpec) -> Result<f64> {
    check_covered(weights, f)?;
    let mut cache: BTreeMap<u64, f64> = BTreeMap::new();
    let mut acc = Neumaier::new();
    acc.add(f.coeff(1).norm_sqr());
    for (n, a) in f.support().filter(|&(n, _)| n >= 2) {
        let q = match cache.get(&n) {
            Some(&q) => q,
            None => {
                let q = lp_radial_factor(n, spec)?;
                cache.insert(n, q);
                q
            }
        };
        let l = libm::log(n as f64);
        acc.add(4.0 * a.norm_sqr() / weights.get(n) * l * l * q);
    }
    Ok(acc.value())
}

/// `max (σ−θ)|g'(σ+it)|` over a grid: a lower bound for the Bloch norm.
pub fn bloch_norm_estimate(g: &DirichletSeries, theta: f64, sigmas: &[f64], ts: &[f64]) -> Result<f64> {
    if sigmas.is_empty() || ts.is_empty() {
        return Err(Error::invalid("bloch grid is empty"));
    }
    if sigmas.iter().any(|&s| !(s > theta)) {
        return Err(Error::invalid("bloch grid must lie to the right of theta"));
    }
    let dg = g.derivative();
    let values: Vec<f64> = sigmas
        .iter()
        .flat_map(|&s| ts.iter().map(move |&t| (s, t)))
        .map(|(s, t)| (s - theta) * dg.evaluate(Complex64::new(s, t)).norm())
        .collect();
    Ok(values.into_iter().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeTable;

    #[test]
    fn basis_is_orthonormal() {
        let t = PrimeTable::sieve(1000).unwrap();
        let w = WeightTable::new(WeightFamily::divisor_power(1.5).unwrap(), 100, &t).unwrap();
        for m in [1, 6, 12, 97] {
            let em = basis_vector(&w, m, 100).unwrap();
            assert!((norm_h2w(&w, &em).unwrap() - 1.0).abs() < 1e-15);
            for n in [1, 6, 12, 97] {
                let en = basis_vector(&w, n, 100).unwrap();
                let ip = inner_h2w(&w, &em, &en).unwrap();
                let expect = if m == n { 1.0 } else { 0.0 };
                assert!((ip - Complex64::new(expect, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn radial_factor_closed_form() {
        let spec = QuadratureSpec::default();
        for n in [2u64, 10, 97] {
            let l = 2.0 * libm::log(n as f64);
            assert!((lp_radial_factor(n, &spec).unwrap() - 1.0 / (l * l)).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_has_trivial_i2() {
        let w = WeightTable::unweighted(4);
        let one = DirichletSeries::monomial(1, Complex64::new(1.0, 0.0), 4).unwrap();
        assert_eq!(littlewood_paley_i2(&w, &one, &QuadratureSpec::default()).unwrap(), 1.0);
    }

    #[test]
    fn bloch_single_term() {
        let g = DirichletSeries::monomial(2, Complex64::new(1.0, 0.0), 2).unwrap();
        let peak = 1.0 / libm::log(2.0);
        let sigmas: Vec<f64> = (1..=400).map(|k| peak * f64::from(k) / 200.0).collect();
        let est = bloch_norm_estimate(&g, 0.0, &sigmas, &[0.0]).unwrap();
        assert!((est - libm::exp(-1.0)).abs() < 1e-12);
        assert!(bloch_norm_estimate(&g, 0.0, &[], &[0.0]).is_err());
    }

    #[test]
    fn kernel_domain() {
        let t = PrimeTable::sieve(100).unwrap();
        let fam = WeightFamily::divisor_power(1.0).unwrap();
        let w = WeightTable::new(fam, 50, &t).unwrap();
        let half = Complex64::new(0.5, 0.0);
        assert!(matches!(kernel_value(&fam, &w, half, half, 50), Err(Error::Domain(_))));
    }
}
