use alloc::vec::Vec;

use num_complex::Complex64;

use super::{Entry, OperatorSection};
use crate::error::{Error, Result};
use crate::series::DirichletSeries;
use crate::sum::Neumaier;
use crate::weights::WeightTable;

/// `⟨T_g e_{w,n}, e_{w,m}⟩ = sqrt(wₙ/w_m) b_{m/n} log(m/n)/log m` on `[1, N]`.
pub fn build_volterra_section(weights: &WeightTable, g: &DirichletSeries, truncation: u64) -> Result<OperatorSection> {
    if g.coeff(1) != Complex64::new(0.0, 0.0) {
        return Err(Error::invalid("symbol must have no constant term"));
    }
    if truncation == 0 || truncation > weights.n_max() {
        return Err(Error::invalid("section size outside the weight table"));
    }
    let symbol: Vec<(u64, Complex64, f64)> = g
        .support()
        .take_while(|&(k, _)| k <= truncation)
        .map(|(k, b)| (k, b, libm::log(k as f64)))
        .collect();
    let mut entries = Vec::new();
    for n in 1..=truncation {
        let wn = weights.get(n);
        for &(k, b, log_k) in symbol.iter().take_while(|&&(k, _, _)| k <= truncation / n) {
            let m = n * k;
            let value = b * (libm::sqrt(wn / weights.get(m)) * log_k / libm::log(m as f64));
            entries.push(Entry { row: (m - 1) as u32, col: (n - 1) as u32, value });
        }
    }
    OperatorSection::new((1..=truncation).collect(), entries)
}

/// Hankel form `sqrt(w_m wₙ) conj(ρ_{mn}) / w_{mn}` with `ρ` the coefficients
/// of `g`, on `[1, N]` or `[2, N]`.
pub fn build_hankel_section(
    weights: &WeightTable,
    g: &DirichletSeries,
    truncation: u64,
    zero_constant: bool,
) -> Result<OperatorSection> {
    let start = if zero_constant { 2 } else { 1 };
    if truncation < start {
        return Err(Error::invalid("hankel section is empty"));
    }
    let top = truncation.checked_mul(truncation).ok_or_else(|| Error::invalid("section size overflows"))?;
    if top > weights.n_max() {
        return Err(Error::invalid("hankel section needs weights up to N^2"));
    }
    let indices: Vec<u64> = (start..=truncation).collect();
    let mut entries = Vec::new();
    for (i, &m) in indices.iter().enumerate() {
        for (j, &n) in indices.iter().enumerate() {
            let rho = g.coeff(m * n);
            if rho == Complex64::new(0.0, 0.0) {
                continue;
            }
            let scale = libm::sqrt(weights.get(m) * weights.get(n)) / weights.get(m * n);
            entries.push(Entry { row: i as u32, col: j as u32, value: rho.conj() * scale });
        }
    }
    OperatorSection::new(indices, entries)
}

/// `‖P_N T_g e_{w,n}‖ = (Σ_{k≥2, nk≤N} |b_k|² (log k)²/(log nk)² · wₙ/w_{nk})^{1/2}`.
pub fn column_norm(weights: &WeightTable, g: &DirichletSeries, n: u64, truncation: u64) -> Result<f64> {
    if n == 0 || truncation > weights.n_max() {
        return Err(Error::invalid("column outside the weight table"));
    }
    let wn = weights.get(n);
    let mut acc = Neumaier::new();
    for (k, b) in g.support().filter(|&(k, _)| k >= 2).take_while(|&(k, _)| n.saturating_mul(k) <= truncation) {
        let lk = libm::log(k as f64);
        let lnk = libm::log((n * k) as f64);
        acc.add(b.norm_sqr() * (lk * lk) / (lnk * lnk) * wn / weights.get(n * k));
    }
    Ok(libm::sqrt(acc.value()))
}
