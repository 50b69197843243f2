use dvl_core::arith::PrimeTable;
use dvl_core::operators::{
    build_hankel_section, build_volterra_section, column_norm, homogeneous_weight_shape, largest_singular_value,
    LinearOperator, OperatorSection, PowerLawHankel,
};
use dvl_core::series::{volterra_apply, DirichletSeries};
use dvl_core::weights::{WeightFamily, WeightTable};
use dvl_core::Complex64;
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn spectral_norm(section: &OperatorSection) -> f64 {
    let d = section.dim();
    let dense = section.to_dense();
    let m = DMatrix::from_fn(d, d, |i, j| nalgebra::Complex::new(dense[i][j].re, dense[i][j].im));
    m.singular_values().max()
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

fn below(rng: &mut ChaCha8Rng, lo: u64, hi: u64) -> u64 {
    lo + rng.next_u64() % (hi - lo + 1)
}

fn random_symbol(rng: &mut ChaCha8Rng, n: u64, nonnegative: bool) -> DirichletSeries {
    let terms = below(rng, 1, 9);
    let mut g = DirichletSeries::zero(n).unwrap();
    for _ in 0..terms {
        let k = below(rng, 2, n);
        let v = if nonnegative {
            Complex64::new(uniform(rng, 0.0, 1.0), 0.0)
        } else {
            Complex64::new(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0))
        };
        g.set(k, v).unwrap();
    }
    g
}

fn family_table(n: u64) -> (WeightTable, PrimeTable) {
    let table = PrimeTable::sieve(n.max(100)).unwrap();
    (WeightTable::new(WeightFamily::divisor_power(1.0).unwrap(), n, &table).unwrap(), table)
}

#[test]
fn section_product_equals_volterra_apply() {
    let (w, _) = family_table(400);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let g = random_symbol(&mut rng, 400, false);
        let section = build_volterra_section(&w, &g, 400).unwrap();
        for n in [1u64, 2, 3, 6, 17, 100] {
            // T_g e_{w,n} in coefficients, then back to the orthonormal basis
            let f = DirichletSeries::monomial(n, Complex64::new(w.get(n).sqrt(), 0.0), 400).unwrap();
            let direct = volterra_apply(&g, &f, 400).unwrap();
            let mut x = vec![zero(); 400];
            x[(n - 1) as usize] = Complex64::new(1.0, 0.0);
            let mut y = vec![zero(); 400];
            section.apply(&x, &mut y);
            for m in 1..=400u64 {
                let expected = direct.coeff(m) / w.get(m).sqrt();
                assert!((y[(m - 1) as usize] - expected).norm() <= 1e-14, "m={m} n={n}");
            }
        }
    }
}

#[test]
fn power_iteration_matches_svd() {
    let (w, _) = family_table(150);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let g = random_symbol(&mut rng, 150, false);
        let section = build_volterra_section(&w, &g, 150).unwrap();
        let est = largest_singular_value(&section, 1e-13, 20_000, 3);
        let exact = spectral_norm(&section);
        assert!(est.value <= exact * (1.0 + 1e-12));
        assert!((est.value - exact).abs() <= 1e-5 * exact, "{} vs {}", est.value, exact);
    }
}

#[test]
fn power_law_hankel_matches_explicit_entries() {
    let table = PrimeTable::sieve(10_000).unwrap();
    for family in [WeightFamily::divisor_power(1.0).unwrap(), WeightFamily::zeta_power(0.5).unwrap()] {
        let w = WeightTable::new(family, 80 * 80, &table).unwrap();
        for (a, e) in [(0.5, 2.0), (0.7, 1.5), (0.5, 1.1)] {
            let fast = PowerLawHankel::new(&w, a, e, 80).unwrap();
            assert_eq!(fast.indices().collect::<Vec<_>>(), (2..=80).collect::<Vec<_>>());
            let mut x = vec![zero(); 79];
            let mut y = vec![zero(); 79];
            for j in 0..79 {
                x.iter_mut().for_each(|v| *v = zero());
                x[j] = Complex64::new(1.0, 0.0);
                fast.apply(&x, &mut y);
                let n = (j + 2) as f64;
                for (i, v) in y.iter().enumerate() {
                    let m = (i + 2) as f64;
                    let u = |k: f64| w.get(k as u64).sqrt() * k.powf(-a);
                    let entry = u(m) * u(n) * (m.ln() + n.ln()).powf(-e);
                    assert!((v.re - entry).abs() <= 1e-12 * entry && v.im == 0.0);
                }
            }
        }
    }
}

#[test]
fn hankel_section_is_symmetric() {
    let (w, _) = family_table(900);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let g = random_symbol(&mut rng, 900, false);
    let h = build_hankel_section(&w, &g, 30, false).unwrap();
    for m in 1..=30 {
        for n in 1..=30 {
            assert_eq!(h.get(m, n), h.get(n, m));
        }
    }
    assert_eq!(build_hankel_section(&w, &g, 30, true).unwrap().dim(), 29);
}

#[test]
fn column_norms_agree() {
    let (w, _) = family_table(500);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let g = random_symbol(&mut rng, 500, false);
    let section = build_volterra_section(&w, &g, 500).unwrap();
    for n in [1u64, 2, 7, 30, 250] {
        let a = section.column_norm(n);
        let b = column_norm(&w, &g, n, 500).unwrap();
        assert!((a - b).abs() <= 1e-14 * a.max(1e-300), "n={n}");
    }
}

#[test]
fn column_norm_closed_form_for_basis_symbol() {
    // g = e_{w,2}: column_norm(n) log(2n)/log 2 = sqrt(w_2 w_n / w_{2n}) for odd squarefree n
    let table = PrimeTable::sieve(100_000).unwrap();
    let family = WeightFamily::divisor_power(1.5).unwrap();
    let w = WeightTable::new(family, 100_000, &table).unwrap();
    let g = DirichletSeries::monomial(2, Complex64::new(w.get(2).sqrt(), 0.0), 2).unwrap();
    for n in [3u64, 15, 105, 1155, 15015] {
        let lhs = column_norm(&w, &g, n, 100_000).unwrap() * (2.0 * n as f64).ln() / 2f64.ln();
        let rhs = (w.get(2) * w.get(n) / w.get(2 * n)).sqrt();
        assert!((lhs - rhs).abs() <= 1e-14);
        assert!(rhs >= 1.0);
    }
}

#[test]
fn weighted_section_dominated_and_monotone() {
    let table = PrimeTable::sieve(1000).unwrap();
    let family = WeightFamily::divisor_power(1.0).unwrap();
    let weighted = WeightTable::new(family, 256, &table).unwrap();
    let plain = WeightTable::unweighted(256);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..20 {
        let g = random_symbol(&mut rng, 256, true);
        let mut previous = 0.0;
        for n in [16u64, 32, 64, 128, 256] {
            let sw = spectral_norm(&build_volterra_section(&weighted, &g, n).unwrap());
            let sp = spectral_norm(&build_volterra_section(&plain, &g, n).unwrap());
            assert!(sw <= sp + 1e-9, "N={n}: {sw} > {sp}");
            assert!(sw >= previous - 1e-12);
            previous = sw;
        }
    }
}

#[test]
fn homogeneous_bound_ratio_is_bounded() {
    // 2-homogeneous symbols: ‖T_g‖² against Σ |b_n|² log n / log log n
    let table = PrimeTable::sieve(1000).unwrap();
    let w = WeightTable::new(WeightFamily::divisor_power(1.0).unwrap(), 512, &table).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut ratios = Vec::new();
    for _ in 0..10 {
        let mut g = random_symbol(&mut rng, 512, false).homogeneous_part(2, &table).unwrap();
        if g.is_zero() {
            g.set(6, Complex64::new(1.0, 0.0)).unwrap();
        }
        let bound: f64 = g.support().map(|(n, b)| b.norm_sqr() * homogeneous_weight_shape(2, n).unwrap()).sum();
        for n in [64u64, 128, 256, 512] {
            let s = spectral_norm(&build_volterra_section(&w, &g, n).unwrap());
            ratios.push(s * s / bound);
        }
    }
    let hi = ratios.iter().copied().fold(0.0, f64::max);
    assert!(hi < 10.0, "{hi}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn restriction_is_a_compression(seed in any::<u64>(), lo in 1u64..20, len in 1u64..60) {
        let (w, _) = family_table(100);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_symbol(&mut rng, 100, false);
        let full = build_volterra_section(&w, &g, 100).unwrap();
        let hi = (lo + len).min(100);
        let part = full.restrict(lo, hi);
        prop_assert_eq!(part.dim() as u64, hi - lo + 1);
        for (m, n, v) in part.entries() {
            prop_assert_eq!(full.get(m, n), v);
        }
        prop_assert!(spectral_norm(&part) <= spectral_norm(&full) + 1e-12);
    }
}
