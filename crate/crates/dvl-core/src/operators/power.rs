use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::LinearOperator;
use crate::sum::Neumaier;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularValueEstimate {
    /// `‖A x‖` at the best unit vector seen; never exceeds the true value.
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn norm(x: &[Complex64]) -> f64 {
    libm::sqrt(x.iter().map(|z| z.norm_sqr()).collect::<Neumaier>().value())
}

fn random_unit(dim: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut uniform = || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
    let mut x: Vec<Complex64> = (0..dim).map(|_| Complex64::new(uniform(), uniform())).collect();
    let s = norm(&x);
    x.iter_mut().for_each(|z| *z /= s);
    x
}

fn power_run<A: LinearOperator + ?Sized>(op: &A, tol: f64, max_iters: usize, seed: u64) -> SingularValueEstimate {
    let mut x = random_unit(op.cols(), seed);
    let mut y = vec![Complex64::new(0.0, 0.0); op.rows()];
    let mut z = vec![Complex64::new(0.0, 0.0); op.cols()];
    let mut best = 0.0f64;
    let mut previous = f64::NAN;
    for it in 1..=max_iters {
        op.apply(&x, &mut y);
        // Rayleigh quotient of A*A at the unit vector x
        let ny = norm(&y);
        let rho = ny * ny;
        best = best.max(rho);
        if (rho - previous).abs() <= tol * rho {
            return SingularValueEstimate { value: libm::sqrt(best), iterations: it, converged: true };
        }
        previous = rho;
        op.apply_adjoint(&y, &mut z);
        let s = norm(&z);
        if s == 0.0 {
            return SingularValueEstimate { value: libm::sqrt(best), iterations: it, converged: true };
        }
        x.iter_mut().zip(&z).for_each(|(xi, zi)| *xi = zi / s);
    }
    SingularValueEstimate { value: libm::sqrt(best), iterations: max_iters, converged: false }
}

/// Power iteration on `A*A` from two seeded starts; reports the larger value.
///
/// Convergence is declared when successive Rayleigh quotients differ by at
/// most `tol` relative.
pub fn largest_singular_value<A: LinearOperator + ?Sized>(op: &A, tol: f64, max_iters: usize, seed: u64) -> SingularValueEstimate {
    if op.cols() == 0 || op.rows() == 0 {
        return SingularValueEstimate { value: 0.0, iterations: 0, converged: true };
    }
    let first = power_run(op, tol, max_iters, seed);
    let second = power_run(op, tol, max_iters, seed ^ 0x9e37_79b9_7f4a_7c15);
    let best = if second.value > first.value { second } else { first };
    SingularValueEstimate {
        value: best.value,
        iterations: first.iterations + second.iterations,
        converged: first.converged && second.converged,
    }
}
