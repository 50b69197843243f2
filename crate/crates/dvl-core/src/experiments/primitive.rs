use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::diagonal::family_label;
use super::{band_width, strictly_increasing, ExperimentReport, Value};
use crate::arith::PrimeTable;
use crate::error::{Error, Result};
use crate::series::{subset_convolve, SquarefreeSeries};
use crate::sum::Neumaier;
use crate::weights::WeightFamily;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimitiveParams {
    pub a: f64,
    pub gamma: f64,
    pub j_min: usize,
    pub j_max: usize,
}

impl Default for PrimitiveParams {
    fn default() -> Self {
        Self { a: 0.5, gamma: 1.0, j_min: 4, j_max: 22 }
    }
}

/// Restricted lower bound for `‖T̃_g f_J‖²` and the exact `‖f_J‖²`.
///
/// Here `f_J = Π_j (1 + w_p^{1/2} q_j^{−s})` over `primes`, `b_S = w_{n_S}
/// n_S^{−a} (log n_S)^{−γ}` with `b_∅ = 1`, `A_S = Σ_{T⊆S} a_{S∖T} b_T`, and
/// the bound is `Σ_{S≠∅} A_S² / (w_{n_S} (log n_S)²)`.
pub fn restricted_tilde_norm(family: &WeightFamily, a: f64, gamma: f64, primes: Vec<u64>) -> Result<(f64, f64)> {
    let w_p = family.prime_weight();
    let j = primes.len();
    let w_pow: Vec<f64> = (0..=j as i32).map(|r| libm::pow(w_p, f64::from(r))).collect();
    let f = SquarefreeSeries::from_rank_fn(primes.clone(), |r| libm::pow(w_p, f64::from(r) / 2.0))?;
    let g = SquarefreeSeries::from_fn(primes, |mask| {
        if mask == 0 {
            return 1.0;
        }
        let l = f.log_n(mask);
        w_pow[mask.count_ones() as usize] * libm::exp(-a * l) * libm::pow(l, -gamma)
    })?;
    let big_a = subset_convolve(&f, &g)?;
    let mut num = Neumaier::new();
    let mut den = Neumaier::new();
    for (mask, (&av, &fv)) in big_a.coeffs().iter().zip(f.coeffs()).enumerate() {
        let w = w_pow[(mask as u64).count_ones() as usize];
        den.add(fv * fv / w);
        if mask != 0 {
            let l = f.log_n(mask as u64);
            num.add(av * av / (w * l * l));
        }
    }
    Ok((num.value(), den.value()))
}

/// Growth of `R(J) = ‖T̃_g f_J‖_lb / ‖f_J‖` along `J`.
pub fn exp_primitive_zw(family: &WeightFamily, params: &PrimitiveParams, table: &PrimeTable) -> Result<ExperimentReport> {
    let PrimitiveParams { a, gamma, j_min, j_max } = *params;
    if !(0.5..1.0).contains(&a) {
        return Err(Error::invalid("exponent a must lie in [1/2, 1)"));
    }
    if !(2.0 * gamma > family.delta() - 1.0) {
        return Err(Error::invalid("gamma must satisfy 2*gamma > delta - 1"));
    }
    if j_min < 2 || j_min > j_max || j_max > 26 {
        return Err(Error::invalid("need 2 <= J_min <= J_max <= 26"));
    }
    if table.len() < j_max {
        return Err(Error::invalid("prime table too small for J_max"));
    }
    let primes: Vec<u64> = table.primes().take(j_max).collect();
    let mut report = ExperimentReport::new("primitive-zw", &["J", "norm_f_sq", "R_lb", "growth_exponent"]);
    report.param("family", family_label(family));
    report.param("beta", family.beta());
    report.param("a", a);
    report.param("gamma", gamma);
    report.param("J_min", j_min);
    report.param("J_max", j_max);
    let mut rs = Vec::new();
    let mut norm_exact = true;
    for jj in j_min..=j_max {
        let (num, den) = restricted_tilde_norm(family, a, gamma, primes[..jj].to_vec())?;
        let r = libm::sqrt(num / den);
        let jf = jj as f64;
        let stat = libm::log(r) / (libm::pow(jf, 1.0 - a) * libm::pow(libm::log(jf), -a));
        norm_exact &= (den - libm::exp2(jf)).abs() <= 1e-12 * den;
        rs.push((jj, r, stat));
        report.push(vec![Value::from(jj), den.into(), r.into(), stat.into()])?;
    }
    report.check("norm_f_sq_is_2^J", norm_exact, "||f_J||^2 = 2^J to 1e-12");
    let tail: Vec<f64> = rs.iter().filter(|(j, _, _)| *j >= 6).map(|&(_, r, _)| r).collect();
    if tail.len() >= 2 {
        report.check("R_strictly_increasing_from_J6", strictly_increasing(&tail), format!("R(J), J >= 6: {tail:?}"));
    }
    let stats: Vec<f64> = rs.iter().filter(|(j, _, _)| *j >= 12).map(|&(_, _, s)| s).collect();
    if !stats.is_empty() {
        let width = band_width(&stats);
        let passed = width.is_some_and(|w| w <= 3.0);
        report.check("growth_exponent_band", passed, format!("band width {width:?} over J >= 12: {stats:?}"));
    }
    report.finish()
}
