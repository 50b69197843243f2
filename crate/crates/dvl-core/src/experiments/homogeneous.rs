use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::diagonal::family_label;
use super::{band_width, strictly_increasing, ExperimentReport, Value};
use crate::arith::PrimeTable;
use crate::error::{Error, Result};
use crate::sum::Neumaier;
use crate::weights::WeightFamily;

const MAX_WINDOW: usize = 26;

/// `Σ_{S⊆[N]} |S|²` in closed form, `N(N+1)2^{N−2}`.
pub fn omega_square_sum(n: u32) -> u64 {
    match n {
        0 => 0,
        1 => 1,
        _ => u64::from(n) * u64::from(n + 1) << (n - 2),
    }
}

struct Window<'a> {
    coef: &'a [f64],
    logs: &'a [f64],
    x: f64,
    acc: Neumaier,
    omega_sq: u64,
}

impl Window<'_> {
    fn walk(&mut self, i: usize, sum_c: f64, log_n: f64, omega: u64) {
        if i == self.coef.len() {
            let d = log_n + self.x;
            self.acc.add(sum_c * sum_c / (d * d));
            self.omega_sq += omega * omega;
            return;
        }
        self.walk(i + 1, sum_c, log_n, omega);
        self.walk(i + 1, sum_c + self.coef[i], log_n + self.logs[i], omega + 1);
    }
}

/// Quotient `‖T_{g_x} f_x‖_lb / ‖f_x‖` restricted to indices `nq`, where `q`
/// is a prime near `e^x` known only through `log q = x`.
pub fn exp_homo_sharpness(family: &WeightFamily, xs: &[f64], eps: f64, table: &PrimeTable) -> Result<ExperimentReport> {
    if xs.is_empty() {
        return Err(Error::invalid("empty x ladder"));
    }
    if !(eps > 0.0) {
        return Err(Error::invalid("epsilon must be positive"));
    }
    let w_p = family.prime_weight();
    let mut report = ExperimentReport::new(
        "homo-sharpness",
        &["x", "window", "quotient_lb", "quotient_over_logx_half_eps", "omega_sq_sum", "omega_sq_closed"],
    );
    report.param("family", family_label(family));
    report.param("beta", family.beta());
    report.param("epsilon", eps);
    report.param("x", format!("{xs:?}"));
    let mut quotients = Vec::new();
    let mut normalized = Vec::new();
    let mut omega_ok = true;
    let mut multiplicative = true;
    for &x in xs {
        if !(x >= 4.0) || x > table.limit() as f64 {
            return Err(Error::invalid("x must lie in [4, prime limit]"));
        }
        let window = table.primes_between(libm::floor(x / 2.0) as u64, libm::floor(x) as u64)?;
        if window.is_empty() {
            return Err(Error::invalid("prime window is empty"));
        }
        if window.len() > MAX_WINDOW {
            return Err(Error::invalid(format!("window has {} primes, at most {MAX_WINDOW} allowed", window.len())));
        }
        let logs: Vec<f64> = window.iter().map(|&p| libm::log(p as f64)).collect();
        let coef: Vec<f64> = window
            .iter()
            .zip(&logs)
            .map(|(&p, &l)| (l + x) * libm::pow(libm::log(l + x), 1.0 + eps / 2.0) / p as f64)
            .collect();
        let mut walker = Window { coef: &coef, logs: &logs, x, acc: Neumaier::new(), omega_sq: 0 };
        walker.walk(0, 0.0, 0.0, 0);
        let n = window.len() as u32;
        // |c|² w_p^{ω−1} / (w_n w_q) with w_n = w_p^ω, w_q = w_p
        let quotient = libm::sqrt(walker.acc.value() / (w_p * w_p) / libm::exp2(f64::from(n)));
        let closed = omega_square_sum(n);
        omega_ok &= walker.omega_sq == closed;
        quotients.push(quotient);
        normalized.push(quotient / libm::pow(libm::log(x), eps / 2.0));
        report.push(vec![
            x.into(),
            Value::from(window.len()),
            quotient.into(),
            normalized[normalized.len() - 1].into(),
            Value::from(walker.omega_sq),
            Value::from(closed),
        ])?;
        if let (Some(&p1), Some(q)) = (window.first(), table.primes().find(|&p| p as f64 > x)) {
            if let (Ok(wn), Ok(wq), Ok(wnq)) = (family.weight(p1, table), family.weight(q, table), family.weight(p1 * q, table)) {
                multiplicative &= (wnq - wn * wq).abs() <= 1e-15 * wnq;
            }
        }
    }
    report.check("weight_multiplicative", multiplicative, "w(nq) = w(n) w(q) for a window prime n and the next prime q > x");
    report.check("omega_square_closed_form", omega_ok, "sum over S_x of omega(n)^2 = N(N+1)2^(N-2)");
    if quotients.len() >= 2 {
        report.check("quotient_increasing", strictly_increasing(&quotients), format!("{quotients:?}"));
        let width = band_width(&normalized);
        report.check("normalized_band", width.is_some_and(|w| w <= 1.5), format!("max/min of quotient/(log x)^(eps/2) = {width:?}"));
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_matches_binomials() {
        for n in 0..=26u32 {
            let mut binom = 1u64;
            let mut total = 0u64;
            for k in 0..=u64::from(n) {
                total += binom * k * k;
                binom = binom * (u64::from(n) - k) / (k + 1);
            }
            assert_eq!(omega_square_sum(n), total, "n={n}");
        }
    }
}
