use alloc::format;
use alloc::vec;

use super::{ExperimentReport, Value};
use crate::arith::PrimeTable;
use crate::error::{Error, Result};
use crate::series::volterra_apply;
use crate::spaces::{basis_vector, norm_h2w};
use crate::weights::{WeightFamily, WeightTable};

/// `‖T_g e_{w,k}‖` for `g = e_{w,q}` against `λ_{q,k}`, `k = 1..=K`.
pub fn exp_diagonal(family: &WeightFamily, q: u64, k_max: u64, table: &PrimeTable) -> Result<ExperimentReport> {
    if q < 2 || k_max < 2 {
        return Err(Error::invalid("diagonal experiment needs q >= 2 and K >= 2"));
    }
    let n = q.checked_mul(k_max).ok_or_else(|| Error::invalid("q*K overflows"))?;
    let weights = WeightTable::new(*family, n, table)?;
    let g = basis_vector(&weights, q, n)?;
    let log_q = libm::log(q as f64);
    let mut report = ExperimentReport::new("diagonal", &["k", "measured", "formula", "diff"]);
    report.param("family", family_label(family));
    report.param("beta", family.beta());
    report.param("q", q);
    report.param("K", k_max);
    let mut max_diff = 0.0f64;
    for k in 1..=k_max {
        let f = basis_vector(&weights, k, n)?;
        let measured = norm_h2w(&weights, &volterra_apply(&g, &f, n)?)?;
        let formula = libm::sqrt(weights.get(q) * weights.get(k) / weights.get(q * k))
            * (log_q / (log_q + libm::log(k as f64)));
        let diff = (measured - formula).abs();
        max_diff = max_diff.max(diff);
        report.push(vec![Value::from(k), measured.into(), formula.into(), diff.into()])?;
    }
    report.meta("max_diff", format!("{max_diff:e}"));
    report.check("apply_matches_formula", max_diff <= 1e-12, format!("max |measured - formula| = {max_diff:e}"));
    report.finish()
}

pub(crate) fn family_label(family: &WeightFamily) -> &'static str {
    match family.kind() {
        crate::weights::WeightKind::DivisorPower => "div",
        crate::weights::WeightKind::ZetaPower => "zeta",
    }
}
