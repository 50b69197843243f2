use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{band_width, ExperimentReport, Value};
use crate::arith::{PrimeSegments, PrimeTable};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::quad::{integrate, integrate_to_infinity, QuadratureSpec, SemiInfiniteRule};
use crate::sum::Neumaier;

#[derive(Debug, Clone, PartialEq)]
pub struct HjParams {
    pub j: u8,
    pub delta: f64,
    pub eta: f64,
    pub sigma_primes: Vec<f64>,
    pub prime_limit: u64,
    pub tail_model: bool,
}

impl HjParams {
    // α_{j,p} as a function of (log p, log log p)
    fn alpha(&self, lp: f64, llp: f64) -> f64 {
        match self.j {
            1 => libm::pow(llp, -self.delta),
            2 => llp,
            _ => lp * libm::pow(llp, -self.eta),
        }
    }

    fn surrogate(&self, sp: f64) -> f64 {
        let l = libm::log(sp);
        match self.j {
            1 => libm::pow(l, 1.0 - self.delta),
            2 => libm::log(l),
            _ => sp * libm::pow(l, -self.eta),
        }
    }
}

/// Prime sums `h_j(σ) = Σ_{p≥3} α_{j,p} p^{−σ}` at `σ = 1 + 1/σ'` against
/// their predicted growth in `σ'`.
pub fn exp_hj<E: Executor>(params: &HjParams, exec: &E, spec: &QuadratureSpec) -> Result<ExperimentReport> {
    if !(1..=3).contains(&params.j) {
        return Err(Error::invalid("j must be 1, 2 or 3"));
    }
    if params.j == 1 && !(params.delta > 0.0 && params.delta < 1.0) {
        return Err(Error::invalid("delta must lie in (0, 1)"));
    }
    if params.j == 3 && !(params.eta > 0.0) {
        return Err(Error::invalid("eta must be positive"));
    }
    let floor = if params.j == 2 { core::f64::consts::E } else { 1.0 };
    if params.sigma_primes.is_empty() || params.sigma_primes.iter().any(|&s| !(s > floor)) {
        return Err(Error::invalid(format!("sigma' values must exceed {floor}")));
    }
    let segments = PrimeSegments::new(params.prime_limit)?;
    let sigmas: Vec<f64> = params.sigma_primes.iter().map(|&sp| 1.0 + 1.0 / sp).collect();
    let partials = exec.map(segments.count(), |i| {
        let mut acc = vec![Neumaier::new(); sigmas.len()];
        for p in segments.primes_in(i).into_iter().filter(|&p| p >= 3) {
            let lp = libm::log(p as f64);
            let alpha = params.alpha(lp, libm::log(lp));
            for (a, &s) in acc.iter_mut().zip(&sigmas) {
                a.add(alpha * libm::exp(-s * lp));
            }
        }
        acc.iter().map(Neumaier::value).collect::<Vec<f64>>()
    });
    let log_limit = libm::log(params.prime_limit as f64);
    let mut report = ExperimentReport::new(
        "hj",
        &["sigma_prime", "sigma", "prime_sum", "tail", "total", "surrogate", "ratio", "tail_share"],
    );
    report.param("j", params.j);
    report.param("delta", params.delta);
    report.param("eta", params.eta);
    report.param("sigma_prime", format!("{:?}", params.sigma_primes));
    report.param("prime_limit", params.prime_limit);
    report.param("tail_model", if params.tail_model { "on" } else { "off" });
    let mut ratios = Vec::new();
    let mut max_share_to_100 = 0.0f64;
    for (k, (&sp, &s)) in params.sigma_primes.iter().zip(&sigmas).enumerate() {
        let body = partials.iter().map(|v| v[k]).collect::<Neumaier>().value();
        let tail = if params.tail_model {
            // Σ_{p>P} α(p) p^{−σ} ≈ ∫_{log P}^∞ α(e^u) e^{−(σ−1)u} du/u, with z = (σ−1)(u − log P)
            let c = s - 1.0;
            let lead = libm::exp(-c * log_limit) / c;
            let r = integrate_to_infinity(
                |z| {
                    let u = log_limit + z / c;
                    params.alpha(u, libm::log(u)) * libm::exp(-z) / u
                },
                0.0,
                &spec.with_rule(SemiInfiniteRule::Exponential),
            )?;
            lead * r.value
        } else {
            0.0
        };
        let total = body + tail;
        let surrogate = params.surrogate(sp);
        let ratio = total / surrogate;
        let share = tail / total;
        if sp <= 100.0 {
            max_share_to_100 = max_share_to_100.max(share);
        }
        ratios.push(ratio);
        report.push(vec![
            sp.into(),
            s.into(),
            body.into(),
            tail.into(),
            total.into(),
            surrogate.into(),
            ratio.into(),
            share.into(),
        ])?;
    }
    let width = band_width(&ratios);
    report.check("ratio_band", width.is_some_and(|w| w <= 2.0), format!("max/min ratio = {width:?}"));
    if params.tail_model {
        report.check(
            "tail_share_below_20pct",
            max_share_to_100 < 0.2,
            format!("largest tail share for sigma' <= 100: {max_share_to_100:e}"),
        );
    }
    report.meta("primes_summed_from", 3);
    report.finish()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TripleSumParams {
    pub delta: f64,
    pub eta: f64,
    pub ps: Vec<u64>,
}

struct TripleTerms {
    log_p: Vec<f64>,
    u: Vec<f64>,
    v: Vec<f64>,
    c: Vec<f64>,
}

impl TripleTerms {
    fn new(primes: &[u64], delta: f64, eta: f64) -> Self {
        let mut t = TripleTerms { log_p: Vec::new(), u: Vec::new(), v: Vec::new(), c: Vec::new() };
        for &p in primes.iter().filter(|&&p| p >= 3) {
            let lp = libm::log(p as f64);
            let llp = libm::log(lp);
            let inv = 1.0 / p as f64;
            t.log_p.push(lp);
            t.u.push(inv * libm::pow(llp, -2.0 * delta));
            t.v.push(inv / (llp * llp));
            t.c.push(inv * lp * lp * libm::pow(llp, -2.0 * eta));
        }
        t
    }
}

/// Brute-force triple loop over primes `3 ≤ p ≤ P` (test oracle).
pub fn triple_sum_direct(primes: &[u64], delta: f64, eta: f64) -> f64 {
    let t = TripleTerms::new(primes, delta, eta);
    let mut acc = Neumaier::new();
    for i in 0..t.u.len() {
        for j in 0..t.v.len() {
            let l12 = t.log_p[i] + t.log_p[j];
            let a = t.u[i] * t.v[j];
            for k in 0..t.c.len() {
                let l = l12 + t.log_p[k];
                acc.add(a * t.c[k] / (l * l));
            }
        }
    }
    acc.value()
}

/// Same sum through `1/x² = ∫₀^∞ t e^{−tx} dt`, which factorizes the triple
/// sum into a one-dimensional integral of three single prime sums.
pub fn triple_sum_laplace(primes: &[u64], delta: f64, eta: f64, spec: &QuadratureSpec) -> Result<f64> {
    let t = TripleTerms::new(primes, delta, eta);
    if t.u.is_empty() {
        return Ok(0.0);
    }
    // τ = log t; the integrand is e^{2τ} U V C(e^τ)
    let integrand = |tau: f64| {
        let x = libm::exp(tau);
        let (mut su, mut sv, mut sc) = (Neumaier::new(), Neumaier::new(), Neumaier::new());
        for i in 0..t.u.len() {
            let e = libm::exp(-x * t.log_p[i]);
            su.add(t.u[i] * e);
            sv.add(t.v[i] * e);
            sc.add(t.c[i] * e);
        }
        x * x * su.value() * sv.value() * sc.value()
    };
    let spec = QuadratureSpec { absolute_tolerance: 1e-300, relative_tolerance: 1e-13, ..*spec };
    Ok(integrate(integrand, -40.0, 6.0, &spec)?.value)
}

/// Partial sums of the triple prime sum along a ladder of cutoffs `P`.
pub fn exp_triple_sum(params: &TripleSumParams, table: &PrimeTable, spec: &QuadratureSpec) -> Result<ExperimentReport> {
    let TripleSumParams { delta, eta, ref ps } = *params;
    if ps.is_empty() || ps.windows(2).any(|w| w[0] >= w[1]) || ps[0] < 3 {
        return Err(Error::invalid("P ladder must be increasing and start at 3 or above"));
    }
    if *ps.last().expect("nonempty") > table.limit() {
        return Err(Error::invalid("prime table too small for the P ladder"));
    }
    let primes: Vec<u64> = table.primes().collect();
    let mut report = ExperimentReport::new("triple-sum", &["P", "S", "delta_S", "relative_increment"]);
    report.param("delta", delta);
    report.param("eta", eta);
    report.param("P", format!("{ps:?}"));
    let convergent = 2.0 * eta > 1.0 && delta + eta > 1.0;
    report.meta("hypotheses_hold", convergent);
    let mut values: Vec<(u64, f64)> = Vec::new();
    for &p in ps {
        let upto = primes.partition_point(|&q| q <= p);
        let s = triple_sum_laplace(&primes[..upto], delta, eta, spec)?;
        let (ds, rel) = match values.last() {
            Some(&(_, prev)) => (s - prev, s / prev - 1.0),
            None => (0.0, 0.0),
        };
        values.push((p, s));
        report.push(vec![Value::from(p), s.into(), ds.into(), rel.into()])?;
    }
    let find = |p: u64| values.iter().find(|&&(q, _)| q == p).map(|&(_, s)| s);
    if let (true, Some(s1), Some(s2)) = (convergent, find(1_000_000), find(2_000_000)) {
        let rel = s2 / s1 - 1.0;
        report.check("doubling_increment_below_2pct", rel < 0.02, format!("S(2e6)/S(1e6) - 1 = {rel:e}"));
    }
    // per-decade relative increments along the powers of ten in the ladder
    let decades: Vec<f64> = values
        .iter()
        .filter(|(p, _)| is_power_of_ten(*p))
        .map(|&(_, s)| s)
        .collect::<Vec<_>>()
        .windows(2)
        .map(|w| w[1] / w[0] - 1.0)
        .collect();
    if !decades.is_empty() {
        if convergent {
            let decreasing = decades.windows(2).all(|w| w[1] < w[0]);
            report.check("decade_increments_decreasing", decreasing, format!("{decades:?}"));
        } else {
            let bounded_away = decades.iter().all(|&d| d >= 0.02);
            report.check("decade_increments_at_least_2pct", bounded_away, format!("{decades:?}"));
        }
    }
    report.finish()
}

fn is_power_of_ten(mut p: u64) -> bool {
    while p >= 10 && p % 10 == 0 {
        p /= 10;
    }
    p == 1
}

/// Completely multiplicative `ψ(p) = λ log p / p`.
pub fn psi(lambda: f64, n: u64, table: &PrimeTable) -> Result<f64> {
    let f = table.factorize(n)?;
    Ok(f.pairs()
        .iter()
        .map(|&(p, e)| libm::pow(lambda * libm::log(p as f64) / p as f64, f64::from(e)))
        .product())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsiParams {
    pub lambda: f64,
    pub sigmas: Vec<f64>,
    pub prime_limit: u64,
}

// |θ(x) − x| ≤ ε(x) x: Dusart for x ≥ 3594641, Rosser–Schoenfeld for x ≥ 563.
fn chebyshev_theta_eps(x: f64) -> Option<f64> {
    let l = libm::log(x);
    if x >= 3_594_641.0 {
        Some(0.2 / (l * l))
    } else if x >= 563.0 {
        Some(1.0 / (2.0 * l))
    } else {
        None
    }
}

/// `S(σ) = Σ_n ψ(n) n^{−σ}` through its Euler product over `p ≤ P` plus a
/// prime-number-theorem tail `λ P^{−σ}/σ` with an explicit error bound.
pub fn exp_psi_symbol(params: &PsiParams, table: &PrimeTable) -> Result<ExperimentReport> {
    let PsiParams { lambda, ref sigmas, prime_limit } = *params;
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::invalid("lambda must lie in (0, 1]"));
    }
    if sigmas.is_empty() || sigmas.iter().any(|&s| !(s > 0.0)) {
        return Err(Error::invalid("sigma values must be positive"));
    }
    if prime_limit > table.limit() {
        return Err(Error::invalid("prime table smaller than the requested prime limit"));
    }
    let big_p = prime_limit as f64;
    let eps = chebyshev_theta_eps(big_p).ok_or_else(|| Error::invalid("prime limit must be at least 563"))?;
    let upto = table.pi(prime_limit)?;
    let mut report = ExperimentReport::new("psi-symbol", &["sigma", "S", "sigma_logS_over_lambda", "tail_log", "tail_rel_bound"]);
    report.param("lambda", lambda);
    report.param("sigma", format!("{sigmas:?}"));
    report.param("prime_limit", prime_limit);
    let mut stats = Vec::new();
    for &s in sigmas {
        let head = table
            .primes()
            .take(upto)
            .map(|p| {
                let lp = libm::log(p as f64);
                -libm::log1p(-lambda * lp * libm::exp(-(1.0 + s) * lp))
            })
            .collect::<Neumaier>()
            .value();
        let p_pow = libm::pow(big_p, -s);
        let tail = lambda * p_pow / s;
        let lp = libm::log(big_p);
        let bound = lambda * eps * p_pow * (2.0 + 1.0 / s) + lambda * lambda * (lp * lp + 2.0 * lp + 2.0) / (big_p - 1.0);
        let rel = libm::expm1(bound);
        if rel >= 0.01 {
            return Err(Error::numeric(format!(
                "tail bound {rel:e} at sigma = {s} exceeds 1%; increase the prime limit"
            )));
        }
        let log_s = head + tail;
        let stat = s * log_s / lambda;
        stats.push(stat);
        report.push(vec![s.into(), libm::exp(log_s).into(), stat.into(), tail.into(), rel.into()])?;
        if lambda == 1.0 && s == 0.5 {
            let floor = libm::exp(lambda / s) / 10.0;
            report.check("exp_surrogate_floor", libm::exp(log_s) >= floor, format!("S(0.5) vs e^2/10 = {floor}"));
        }
    }
    let width = band_width(&stats);
    report.check("sigma_logS_band", width.is_some_and(|w| w <= 2.0), format!("max/min = {width:?}"));
    report.finish()
}
