//! Special functions not covered by `libm`.

use crate::error::{Error, Result};

/// `Γ(x)` for `x > 0`.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

// B_{2k}/(2k)! for k = 1..=8
const BERNOULLI_OVER_FACTORIAL: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
];

/// Riemann zeta at real `s > 1` by Euler–Maclaurin summation.
pub fn zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::domain("zeta is evaluated only for real s > 1"));
    }
    const N: f64 = 16.0;
    let head: f64 = crate::sum::sum((1..16).map(|n| libm::pow(f64::from(n), -s)));
    let mut acc = head + libm::pow(N, 1.0 - s) / (s - 1.0) + 0.5 * libm::pow(N, -s);
    // rising product s(s+1)...(s+2k-2) times N^{-s-2k+1}
    let mut rising = s;
    let mut power = libm::pow(N, -s - 1.0);
    for (k, c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        acc += c * rising * power;
        let k = k as f64;
        rising *= (s + 2.0 * k + 1.0) * (s + 2.0 * k + 2.0);
        power /= N * N;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn even_values() {
        assert!((zeta(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta(4.0).unwrap() - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!((zeta(1.001).unwrap() - 1_000.577_288_476_011_6).abs() < 1e-9);
        assert!((zeta(1.2).unwrap() - 5.591_582_441_177_752).abs() < 1e-13);
        assert!(zeta(1.0).is_err());
    }

    #[test]
    fn gamma_half() {
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(3.0) - 2.0).abs() < 1e-14);
    }
}
