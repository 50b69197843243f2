use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::diagonal::family_label;
use super::{band_width, strictly_increasing, ExperimentReport, Value};
use crate::arith::PrimeTable;
use crate::error::{Error, Result};
use crate::operators::column_norm;
use crate::quad::{integrate, QuadratureSpec};
use crate::series::DirichletSeries;
use crate::sum::Neumaier;
use crate::weights::{WeightFamily, WeightKind, WeightTable};

/// Partial sums `Σ_{m≤M} 1/((m+1) log(m+1))` against `log log M`.
pub fn exp_two_prime(family: &WeightFamily, ms: &[u64]) -> Result<ExperimentReport> {
    if ms.is_empty() || ms[0] < 3 || ms.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("M ladder must be increasing and start at 3 or above"));
    }
    let mut report = ExperimentReport::new("two-prime", &["M", "partial_sum", "loglog_M", "ratio"]);
    report.param("family", family_label(family));
    report.param("beta", family.beta());
    report.param("M", format!("{ms:?}"));
    report.meta("bloch_membership", "not tested");
    let mut acc = Neumaier::new();
    let mut m = 0u64;
    let mut values = Vec::new();
    let mut ratios = Vec::new();
    for &target in ms {
        while m < target {
            m += 1;
            let x = (m + 1) as f64;
            acc.add(1.0 / (x * libm::log(x)));
        }
        let s = acc.value();
        let ll = libm::log(libm::log(target as f64));
        values.push((target, s));
        ratios.push(s / ll);
        report.push(vec![Value::from(target), s.into(), ll.into(), (s / ll).into()])?;
    }
    let in_band = ratios.iter().all(|&r| (0.5..=2.0).contains(&r));
    report.check("ratio_in_band", in_band, format!("ratios {ratios:?}"));
    let find = |p: u64| values.iter().find(|&&(q, _)| q == p).map(|&(_, s)| s);
    if let (Some(lo), Some(hi)) = (find(10_000), find(100_000_000)) {
        report.check("unbounded_increase", hi - lo > 0.3, format!("S(1e8) - S(1e4) = {}", hi - lo));
    }
    report.finish()
}

// M(e^{−ℓ}) ℓ^{1−β}, bounded near ℓ = 0
fn scaled_density(family: &WeightFamily, ell: f64) -> f64 {
    let beta = family.beta();
    match family.kind() {
        WeightKind::DivisorPower => 1.0 / crate::special::gamma(beta),
        WeightKind::ZetaPower if ell == 0.0 => beta,
        WeightKind::ZetaPower => beta * libm::pow(-libm::expm1(-ell) / ell, beta - 1.0),
    }
}

/// `J(p, T) = (log T)^{−2} ∫₀^K x M(T p^{2x}) dx` with `K = min(1, −log T/(2 log p))`.
pub fn int0ld(family: &WeightFamily, p: u64, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) || p < 2 {
        return Err(Error::invalid("need 0 < T < 1 and p >= 2"));
    }
    let beta = family.beta();
    let two_lp = 2.0 * libm::log(p as f64);
    let big_l = -libm::log(t) / two_lp;
    let k = big_l.min(1.0);
    // y = L − x = L u^{1/β}; M(e^{−ℓ}) = ℓ^{β−1} scaled(ℓ) with ℓ = 2 log p · y,
    // so dy ℓ^{β−1} = (2 log p)^{β−1} L^β du / β and the integral is O(1) in u
    let u0 = libm::pow((big_l - k) / big_l, beta);
    let integrand = |u: f64| {
        let r = libm::pow(u, 1.0 / beta);
        (1.0 - r) * scaled_density(family, two_lp * big_l * r)
    };
    let r = integrate(integrand, u0, 1.0, spec)?;
    let lt = libm::log(t);
    Ok(r.value * libm::pow(two_lp, beta - 1.0) * libm::pow(big_l, beta + 1.0) / beta / (lt * lt))
}

/// `J(p, T)` against the density bound along a ladder of `T`.
pub fn exp_int0ld(family: &WeightFamily, p: u64, ts: &[f64], spec: &QuadratureSpec) -> Result<ExperimentReport> {
    if ts.is_empty() {
        return Err(Error::invalid("T ladder is empty"));
    }
    let mut report = ExperimentReport::new("int0ld", &["T", "K", "J", "bound", "ratio", "bound_case"]);
    report.param("family", family_label(family));
    report.param("beta", family.beta());
    report.param("p", p);
    report.param("T", format!("{ts:?}"));
    let threshold = 1.0 / (p as f64 * p as f64);
    let mut ratios = Vec::new();
    for &t in ts {
        let j = int0ld(family, p, t, spec)?;
        let k = (-libm::log(t) / (2.0 * libm::log(p as f64))).min(1.0);
        let shifted = family.beta() < 1.0 && t < threshold;
        let (bound, case) = if shifted {
            (family.radial_density(t / threshold)?, "M(Tp^2)")
        } else {
            (family.radial_density(t)?, "M(T)")
        };
        ratios.push(j / bound);
        report.push(vec![t.into(), k.into(), j.into(), bound.into(), (j / bound).into(), Value::Text(case.into())])?;
    }
    let width = band_width(&ratios);
    let max = ratios.iter().copied().fold(0.0, f64::max);
    report.check("ratio_bounded", width.is_some() && max <= 1.0, format!("max ratio {max:e}, max/min {width:?}"));
    report.finish()
}

/// Column norms `‖P_N T_g e_{w,n}‖` along a ladder of `n`.
pub fn exp_column_norms(
    family: &WeightFamily,
    g: &DirichletSeries,
    ns: &[u64],
    truncation: u64,
    table: &PrimeTable,
) -> Result<ExperimentReport> {
    if g.is_zero() {
        return Err(Error::invalid("symbol must be nonzero"));
    }
    if ns.is_empty() || ns[0] < 2 || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("n ladder must be increasing and start at 2 or above"));
    }
    let weights = WeightTable::new(*family, truncation, table)?;
    let mut report = ExperimentReport::new("column-norms", &["n", "column_norm_lb", "column_norm_log_n", "cumulative_sq"]);
    report.param("family", family_label(family));
    report.param("beta", family.beta());
    report.param("n", format!("{ns:?}"));
    report.param("N", truncation);
    report.param("symbol_degree", g.degree());
    let mut cumulative = Neumaier::new();
    let mut scaled = Vec::new();
    let mut sums = Vec::new();
    for &n in ns {
        let c = column_norm(&weights, g, n, truncation)?;
        cumulative.add(c * c);
        let s = c * libm::log(n as f64);
        scaled.push(s);
        sums.push(cumulative.value());
        report.push(vec![Value::from(n), c.into(), s.into(), cumulative.value().into()])?;
    }
    let width = band_width(&scaled);
    report.check("log_scaled_bounded_below", width.is_some_and(|w| w <= 3.0), format!("max/min of column_norm*log n = {width:?}"));
    report.check("cumulative_sq_increasing", strictly_increasing(&sums), "partial sums of column_norm^2");
    report.finish()
}
