//! Adaptive Gauss–Kronrod quadrature.

use alloc::collections::BinaryHeap;
use alloc::format;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::sum::Neumaier;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Change of variables used to map `[0, 1)` onto `[a, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SemiInfiniteRule {
    /// `x = a − ln(1 − t)`; turns `e^{−x}` decay into a polynomial.
    #[default]
    Exponential,
    /// `x = a + t/(1 − t)`; copes with decay slower than `e^{−x}`.
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub absolute_tolerance: f64,
    pub relative_tolerance: f64,
    pub max_subdivisions: usize,
    pub semi_infinite: SemiInfiniteRule,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            absolute_tolerance: 1e-13,
            relative_tolerance: 1e-12,
            max_subdivisions: 2000,
            semi_infinite: SemiInfiniteRule::Exponential,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.absolute_tolerance > 0.0) || !(self.relative_tolerance >= 0.0) {
            return Err(Error::invalid("quadrature tolerance must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::invalid("quadrature needs at least one subdivision"));
        }
        Ok(())
    }

    pub fn with_rule(mut self, rule: SemiInfiniteRule) -> Self {
        self.semi_infinite = rule;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then(other.a.total_cmp(&self.a))
    }
}

fn kronrod15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Globally adaptive G7–K15 quadrature on a finite interval.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadratureResult> {
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::invalid("finite quadrature needs finite endpoints"));
    }
    if a == b {
        return Ok(QuadratureResult { value: 0.0, error_estimate: 0.0, subdivisions: 0 });
    }
    let (value, error) = kronrod15(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, error });
    let mut total = value;
    let mut total_err = error;
    let mut splits = 0;
    loop {
        if !total.is_finite() || !total_err.is_finite() {
            return Err(Error::numeric(format!("non-finite integrand on [{a}, {b}]")));
        }
        let target = spec.absolute_tolerance.max(spec.relative_tolerance * total.abs());
        if total_err <= target {
            break;
        }
        if splits >= spec.max_subdivisions {
            return Err(Error::numeric(format!(
                "quadrature on [{a}, {b}] stalled after {splits} subdivisions: value {total:e}, error {total_err:e}"
            )));
        }
        let worst = heap.pop().expect("panel heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval cannot be split further in floating point
            heap.push(worst);
            return Err(Error::numeric(format!(
                "quadrature on [{a}, {b}] reached machine resolution: error {total_err:e}"
            )));
        }
        let (v1, e1) = kronrod15(&mut f, worst.a, mid);
        let (v2, e2) = kronrod15(&mut f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
        splits += 1;
    }
    // re-sum in interval order so the result does not depend on heap layout
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = panels.iter().map(|p| p.value).collect::<Neumaier>().value();
    let error_estimate = panels.iter().map(|p| p.error).sum();
    Ok(QuadratureResult { value, error_estimate, subdivisions: splits })
}

/// Integral over `[a, ∞)` through the spec's semi-infinite substitution.
pub fn integrate_to_infinity<F: FnMut(f64) -> f64>(mut f: F, a: f64, spec: &QuadratureSpec) -> Result<QuadratureResult> {
    let rule = spec.semi_infinite;
    let g = move |t: f64| {
        let (x, jac) = match rule {
            SemiInfiniteRule::Exponential => (a - libm::log1p(-t), 1.0 / (1.0 - t)),
            SemiInfiniteRule::Rational => {
                let s = 1.0 - t;
                (a + t / s, 1.0 / (s * s))
            }
        };
        if !x.is_finite() || !jac.is_finite() {
            return 0.0;
        }
        let y = f(x);
        if y == 0.0 {
            0.0
        } else {
            y * jac
        }
    };
    integrate(g, 0.0, 1.0, spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let spec = QuadratureSpec::default();
        let r = integrate(|x| x * x * x - 2.0 * x, 0.0, 2.0, &spec).unwrap();
        assert!((r.value - 0.0).abs() < 1e-14);
        let r = integrate(|x| libm::sin(x), 0.0, core::f64::consts::PI, &spec).unwrap();
        assert!((r.value - 2.0).abs() < 1e-13);
    }

    #[test]
    fn endpoint_singularity() {
        let spec = QuadratureSpec { absolute_tolerance: 1e-10, relative_tolerance: 0.0, ..Default::default() };
        let r = integrate(|x| 1.0 / libm::sqrt(x), 0.0, 1.0, &spec).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn semi_infinite_rules() {
        for rule in [SemiInfiniteRule::Exponential, SemiInfiniteRule::Rational] {
            let spec = QuadratureSpec::default().with_rule(rule);
            let r = integrate_to_infinity(|x| libm::exp(-x), 0.0, &spec).unwrap();
            assert!((r.value - 1.0).abs() < 1e-12, "{rule:?}");
            let r = integrate_to_infinity(|x| 1.0 / (1.0 + x * x), 0.0, &QuadratureSpec::default().with_rule(SemiInfiniteRule::Rational)).unwrap();
            assert!((r.value - core::f64::consts::FRAC_PI_2).abs() < 1e-12);
        }
    }

    #[test]
    fn reports_stall() {
        let spec = QuadratureSpec { max_subdivisions: 3, ..Default::default() };
        let err = integrate(|x| libm::sin(1.0 / x), 1e-6, 1.0, &spec).unwrap_err();
        assert!(matches!(err, Error::NumericFailure(_)));
    }
}
