use dvl_core::arith::PrimeTable;
use dvl_core::quad::QuadratureSpec;
use dvl_core::series::DirichletSeries;
use dvl_core::spaces::{bloch_norm_estimate, inner_h2w, kernel_value, littlewood_paley_i2, norm_h2w};
use dvl_core::weights::{WeightFamily, WeightTable};
use dvl_core::Complex64;
use proptest::prelude::*;

fn table() -> PrimeTable {
    PrimeTable::sieve(20_000).unwrap()
}

fn polynomial() -> impl Strategy<Value = DirichletSeries> {
    prop::collection::btree_map(1u64..=2000, (-1.0f64..1.0, -1.0f64..1.0), 1..50).prop_map(|m| {
        DirichletSeries::from_pairs(2000, m.into_iter().map(|(n, (re, im))| (n, Complex64::new(re, im)))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn parseval(f in polynomial(), beta in 0.3f64..3.0) {
        let w = WeightTable::new(WeightFamily::divisor_power(beta).unwrap(), 2000, &table()).unwrap();
        let n = norm_h2w(&w, &f).unwrap();
        let ip = inner_h2w(&w, &f, &f).unwrap();
        prop_assert!((n * n - ip.re).abs() <= 1e-12 * n * n);
        prop_assert!(ip.im.abs() <= 1e-12 * n * n);
    }

    #[test]
    fn littlewood_paley_identity(f in polynomial(), zeta in any::<bool>(), beta in 0.3f64..3.0) {
        let family = if zeta { WeightFamily::zeta_power(beta) } else { WeightFamily::divisor_power(beta) }.unwrap();
        let w = WeightTable::new(family, 2000, &table()).unwrap();
        let i2 = littlewood_paley_i2(&w, &f, &QuadratureSpec::default()).unwrap();
        let n2 = norm_h2w(&w, &f).unwrap().powi(2);
        prop_assert!((i2 - n2).abs() <= 1e-8 * n2);
    }

    #[test]
    fn kernel_reproduces_polynomials(f in polynomial(), sigma in 0.6f64..2.0, t in -5.0f64..5.0) {
        // ⟨f, K_u⟩ = f(u) with K_u = Σ wₙ n^{−ū} n^{−s}
        let w = WeightTable::new(WeightFamily::zeta_power(1.0).unwrap(), 2000, &table()).unwrap();
        let u = Complex64::new(sigma, t);
        let k = DirichletSeries::from_pairs(
            2000,
            (1..=2000u64).map(|n| (n, w.get(n) * (-u.conj() * (n as f64).ln()).exp())),
        )
        .unwrap();
        let lhs = inner_h2w(&w, &f, &k).unwrap();
        let rhs = f.evaluate(u);
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
    }
}

#[test]
fn kernel_tail_bound_is_valid() {
    let t = table();
    for family in [WeightFamily::divisor_power(1.0).unwrap(), WeightFamily::zeta_power(0.5).unwrap(), WeightFamily::divisor_power(1.5).unwrap()] {
        let w = WeightTable::new(family, 20_000, &t).unwrap();
        for (s, u) in [(Complex64::new(1.0, 2.0), Complex64::new(1.0, -1.0)), (Complex64::new(0.8, 0.0), Complex64::new(0.9, 0.0))] {
            let small = kernel_value(&family, &w, s, u, 2000).unwrap();
            let big = kernel_value(&family, &w, s, u, 20_000).unwrap();
            assert!((big.value - small.value).norm() <= small.tail_bound, "{family:?}: {:?} vs {:?}", small, big);
            assert!(big.tail_bound < small.tail_bound);
        }
    }
}

#[test]
fn kernel_outside_half_plane() {
    let family = WeightFamily::divisor_power(1.0).unwrap();
    let w = WeightTable::new(family, 10, &table()).unwrap();
    assert!(kernel_value(&family, &w, Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0), 10).is_err());
}

#[test]
fn bloch_estimate_of_a_monomial() {
    // g = 2^{-s}: (σ − θ)|g'(σ)| = (σ − θ) log 2 · 2^{−σ}, largest at σ = θ + 1/log 2
    let g = DirichletSeries::from_real(&[0.0, 1.0]).unwrap();
    let theta = 0.0;
    let best = 1.0 / 2f64.ln();
    let est = bloch_norm_estimate(&g, theta, &[best], &[0.0, 1.0]).unwrap();
    assert!((est - (-1.0f64).exp()).abs() < 1e-15);
}
