use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::diagonal::family_label;
use super::{ExperimentReport, Value};
use crate::arith::PrimeTable;
use crate::error::{Error, Result};
use crate::operators::{build_hankel_section, build_volterra_section, largest_singular_value, LinearOperator, PowerLawHankel};
use crate::quad::{integrate_to_infinity, QuadratureSpec};
use crate::series::DirichletSeries;
use crate::special::gamma;
use crate::sum::Neumaier;
use crate::weights::{WeightFamily, WeightTable};

#[derive(Debug, Clone, PartialEq)]
pub struct HankelVsVolterraParams {
    pub a: f64,
    pub ns: Vec<u64>,
    pub tol: f64,
    pub max_iters: usize,
    pub seed: u64,
}

impl Default for HankelVsVolterraParams {
    fn default() -> Self {
        Self { a: 0.5, ns: (10..=14).map(|k| 1u64 << k).collect(), tol: 1e-10, max_iters: 2000, seed: 1 }
    }
}

/// `g_n = w_n n^{−a} (log n)^{−e}` for `2 ≤ n ≤ N`, `g_1 = 0`.
pub fn power_law_symbol(weights: &WeightTable, a: f64, exponent: f64, truncation: u64) -> Result<DirichletSeries> {
    if truncation > weights.n_max() {
        return Err(Error::invalid("symbol truncation beyond the weight table"));
    }
    let mut coeffs = vec![0.0; truncation as usize];
    for n in 2..=truncation {
        let l = libm::log(n as f64);
        coeffs[(n - 1) as usize] = weights.get(n) * libm::exp(-a * l) * libm::pow(l, -exponent);
    }
    DirichletSeries::from_real(&coeffs)
}

/// Quadrature `∫_{1/2}^∞ (fh)(σ) (σ − 1/2)^δ dσ` and the Hankel form value
/// `⟨H f, h⟩` built from `φ_δ`, scaled by `Γ(δ+1)`.
///
/// Both series must have real coefficients and no constant term.
pub fn hdelta_integral(
    weights: &WeightTable,
    delta: f64,
    f: &DirichletSeries,
    h: &DirichletSeries,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    if !(delta > 0.0) {
        return Err(Error::invalid("delta must be positive"));
    }
    let zero = Complex64::new(0.0, 0.0);
    if f.coeff(1) != zero || h.coeff(1) != zero {
        return Err(Error::invalid("series must vanish at n = 1"));
    }
    if f.coeffs().iter().chain(h.coeffs()).any(|c| c.im != 0.0) {
        return Err(Error::invalid("series must have real coefficients"));
    }
    let n = f.truncation().max(h.truncation());
    let product = f.convolve(h, n * n)?;
    let terms: Vec<(f64, f64)> = product
        .support()
        .map(|(k, c)| {
            let l = libm::log(k as f64);
            (c.re * libm::exp(-0.5 * l), l)
        })
        .collect();
    // x = σ − 1/2
    let integral = integrate_to_infinity(
        |x| {
            let s: Neumaier = terms.iter().map(|&(c, l)| c * libm::exp(-x * l)).collect();
            s.value() * libm::pow(x, delta)
        },
        0.0,
        spec,
    )?
    .value;

    let symbol = power_law_symbol(weights, 0.5, delta + 1.0, n * n)?;
    let section = build_hankel_section(weights, &symbol, n, true)?;
    let to_basis = |s: &DirichletSeries| -> Vec<Complex64> {
        (2..=n).map(|m| s.coeff(m) / libm::sqrt(weights.get(m))).collect()
    };
    let x = to_basis(f);
    let y = to_basis(h);
    let mut hx = vec![zero; section.rows()];
    section.apply(&x, &mut hx);
    let form: Neumaier = hx.iter().zip(&y).map(|(a, b)| (a * b).re).collect();
    Ok((integral, gamma(delta + 1.0) * form.value()))
}

/// Section norms of the Volterra operator and of the Hankel form with the
/// same power-law symbol, `e = δ + 1`, along a ladder of `N`.
pub fn exp_hankel_vs_volterra(
    family: &WeightFamily,
    params: &HankelVsVolterraParams,
    table: &PrimeTable,
    spec: &QuadratureSpec,
) -> Result<ExperimentReport> {
    let HankelVsVolterraParams { a, ref ns, tol, max_iters, seed } = *params;
    if !(0.5..1.0).contains(&a) {
        return Err(Error::invalid("a must lie in [1/2, 1)"));
    }
    if ns.is_empty() || ns[0] < 4 || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("N ladder must be increasing and start at 4 or above"));
    }
    let delta = family.delta();
    let exponent = delta + 1.0;
    let n_max = *ns.last().expect("nonempty");
    let weights = WeightTable::new(*family, n_max.max(4096), table)?;
    let g = power_law_symbol(&weights, a, exponent, n_max)?;
    let mut report = ExperimentReport::new(
        "hankel-vs-volterra",
        &["N", "volterra_lb", "hankel_lb", "volterra_growth", "hankel_growth"],
    );
    report.param("family", family_label(family));
    report.param("beta", family.beta());
    report.param("a", a);
    report.param("N", format!("{ns:?}"));
    report.param("tol", tol);
    report.param("seed", seed);
    report.meta("delta", delta);

    // the matrix-free operator against explicit entries at a small size
    {
        let small = 64;
        let dense = build_hankel_section(&weights, &power_law_symbol(&weights, a, exponent, small * small)?, small, true)?;
        let fast = PowerLawHankel::new(&weights, a, exponent, small)?;
        let mut worst = 0.0f64;
        for j in 0..dense.cols() {
            let mut e = vec![Complex64::new(0.0, 0.0); dense.cols()];
            e[j] = Complex64::new(1.0, 0.0);
            let (mut y1, mut y2) = (vec![Complex64::new(0.0, 0.0); dense.rows()], vec![Complex64::new(0.0, 0.0); dense.rows()]);
            dense.apply(&e, &mut y1);
            fast.apply(&e, &mut y2);
            for (u, v) in y1.iter().zip(&y2) {
                worst = worst.max((u - v).norm() / u.norm());
            }
        }
        report.check("factorized_hankel_matches_entries", worst <= 1e-10, format!("max relative entry error {worst:e}"));
    }

    // integral representation of the δ-form on two small polynomials
    {
        let f = DirichletSeries::from_real(&[0.0, 1.0, 0.5, 0.0, -0.25, 0.0, 0.0, 0.125])?;
        let h = DirichletSeries::from_real(&[0.0, 0.3, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5])?;
        let (integral, form) = hdelta_integral(&weights, delta, &f, &h, spec)?;
        let rel = (integral - form).abs() / form.abs();
        report.check("hdelta_integral_matches_form", rel <= 1e-8, format!("integral {integral:e}, form {form:e}, relative gap {rel:e}"));
    }

    let mut volterra = Vec::new();
    let mut hankel = Vec::new();
    let mut converged = true;
    for &n in ns {
        let section = build_volterra_section(&weights, &g.partial_sum(n)?, n)?.restrict(2, n);
        let v = largest_singular_value(&section, tol, max_iters, seed);
        let h = largest_singular_value(&PowerLawHankel::new(&weights, a, exponent, n)?, tol, max_iters, seed);
        converged &= v.converged && h.converged;
        let growth = |xs: &[f64], x: f64| xs.last().map_or(0.0, |&p| x / p - 1.0);
        let row = vec![Value::from(n), v.value.into(), h.value.into(), growth(&volterra, v.value).into(), growth(&hankel, h.value).into()];
        volterra.push(v.value);
        hankel.push(h.value);
        report.push(row)?;
    }
    report.meta("power_iteration_converged", converged);
    // relative growth over each doubling N -> 2N with N >= 4096
    let growth_from = |xs: &[f64]| -> Vec<f64> {
        (1..ns.len())
            .filter(|&i| ns[i - 1] >= 4096 && ns[i] == 2 * ns[i - 1])
            .map(|i| xs[i] / xs[i - 1] - 1.0)
            .collect()
    };
    let hg = growth_from(&hankel);
    let vg = growth_from(&volterra);
    if !hg.is_empty() {
        report.check("hankel_plateau_below_5pct", hg.iter().all(|&g| g < 0.05), format!("per-doubling growth for N >= 4096: {hg:?}"));
        report.check("volterra_growth_above_15pct", vg.iter().all(|&g| g > 0.15), format!("per-doubling growth for N >= 4096: {vg:?}"));
    }
    report.finish()
}
