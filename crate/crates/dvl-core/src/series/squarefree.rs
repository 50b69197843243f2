use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest prime set a squarefree series may be built on.
pub const MAX_SQUAREFREE_PRIMES: usize = 30;

// Transforms are run on at most this many low bits at a time; higher bits are
// split off and enumerated directly, which caps memory near 2^LOW_BITS words.
const LOW_BITS: usize = 20;

/// Series supported on squarefree products of a fixed prime set, indexed by
/// subset masks (bit `j` ↔ `q_{j+1}`).
#[derive(Debug, Clone, PartialEq)]
pub struct SquarefreeSeries {
    primes: Vec<u64>,
    coeffs: Vec<f64>,
    logs: Vec<f64>,
}

impl SquarefreeSeries {
    pub fn new(primes: Vec<u64>, coeffs: Vec<f64>) -> Result<Self> {
        let j = primes.len();
        if j > MAX_SQUAREFREE_PRIMES {
            return Err(Error::invalid("too many primes for a squarefree series"));
        }
        if primes.iter().any(|&p| p < 2) {
            return Err(Error::invalid("prime set contains a value below 2"));
        }
        let mut sorted = primes.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != j {
            return Err(Error::invalid("prime set has repeated entries"));
        }
        if coeffs.len() != 1usize << j {
            return Err(Error::invalid("coefficient count must be 2^J"));
        }
        let logs = subset_logs(&primes);
        Ok(Self { primes, coeffs, logs })
    }

    pub fn from_fn<F: FnMut(u64) -> f64>(primes: Vec<u64>, f: F) -> Result<Self> {
        if primes.len() > MAX_SQUAREFREE_PRIMES {
            return Err(Error::invalid("too many primes for a squarefree series"));
        }
        let coeffs = (0..1u64 << primes.len()).map(f).collect();
        Self::new(primes, coeffs)
    }

    /// Coefficients depending only on the subset size.
    pub fn from_rank_fn<F: FnMut(u32) -> f64>(primes: Vec<u64>, mut f: F) -> Result<Self> {
        let by_rank: Vec<f64> = (0..=primes.len() as u32).map(&mut f).collect();
        Self::from_fn(primes, |mask| by_rank[mask.count_ones() as usize])
    }

    /// The unit `δ_∅`, i.e. the constant series 1.
    pub fn unit(primes: Vec<u64>) -> Result<Self> {
        Self::from_fn(primes, |mask| if mask == 0 { 1.0 } else { 0.0 })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn rank(&self) -> usize {
        self.primes.len()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: u64) -> f64 {
        self.coeffs[mask as usize]
    }

    /// `log n_S = Σ_{j∈S} log q_j`.
    pub fn log_n(&self, mask: u64) -> f64 {
        self.logs[mask as usize]
    }

    pub fn logs(&self) -> &[f64] {
        &self.logs
    }

    /// `n_S` when it fits in 64 bits.
    pub fn integer(&self, mask: u64) -> Option<u64> {
        self.primes
            .iter()
            .enumerate()
            .filter(|(j, _)| mask >> j & 1 == 1)
            .try_fold(1u64, |acc, (_, &p)| acc.checked_mul(p))
    }
}

fn subset_logs(primes: &[u64]) -> Vec<f64> {
    let mut logs = vec![0.0; 1usize << primes.len()];
    for mask in 1..logs.len() {
        let low = mask.trailing_zeros() as usize;
        logs[mask] = logs[mask & (mask - 1)] + libm::log(primes[low] as f64);
    }
    logs
}

/// Subset convolution `h_S = Σ_{T⊆S} f_T g_{S∖T}` by ranked zeta/Möbius
/// transforms, `O(J² 2^J)`.
pub fn subset_convolve(f: &SquarefreeSeries, g: &SquarefreeSeries) -> Result<SquarefreeSeries> {
    subset_convolve_blocked(f, g, LOW_BITS)
}

fn subset_convolve_blocked(f: &SquarefreeSeries, g: &SquarefreeSeries, low_bits: usize) -> Result<SquarefreeSeries> {
    if f.primes != g.primes {
        return Err(Error::invalid("subset convolution needs identical prime sets"));
    }
    let j = f.rank();
    let low = j.min(low_bits);
    let high = j - low;
    let width = 1usize << low;
    let mut out = vec![0.0; 1usize << j];
    for s_hi in 0..1usize << high {
        let mut acc: Vec<Vec<f64>> = vec![vec![0.0; width]; low + 1];
        // every T_hi ⊆ S_hi, including S_hi itself and 0
        let mut t_hi = s_hi;
        loop {
            let fa = ranked_zeta(&f.coeffs[t_hi * width..(t_hi + 1) * width], low);
            let u_hi = s_hi ^ t_hi;
            let gb = ranked_zeta(&g.coeffs[u_hi * width..(u_hi + 1) * width], low);
            for (r, target) in acc.iter_mut().enumerate() {
                for i in 0..=r {
                    let (x, y) = (&fa[i], &gb[r - i]);
                    target.iter_mut().zip(x.iter().zip(y)).for_each(|(t, (a, b))| *t += a * b);
                }
            }
            if t_hi == 0 {
                break;
            }
            t_hi = (t_hi - 1) & s_hi;
        }
        for layer in acc.iter_mut() {
            mobius(layer, low);
        }
        let block = &mut out[s_hi * width..(s_hi + 1) * width];
        for (lo, v) in block.iter_mut().enumerate() {
            *v = acc[lo.count_ones() as usize][lo];
        }
    }
    SquarefreeSeries::new(f.primes.clone(), out)
}

fn ranked_zeta(values: &[f64], bits: usize) -> Vec<Vec<f64>> {
    let mut layers = vec![vec![0.0; values.len()]; bits + 1];
    for (mask, &v) in values.iter().enumerate() {
        layers[mask.count_ones() as usize][mask] = v;
    }
    for layer in layers.iter_mut() {
        zeta(layer, bits);
    }
    layers
}

fn zeta(a: &mut [f64], bits: usize) {
    for i in 0..bits {
        let bit = 1usize << i;
        for mask in 0..a.len() {
            if mask & bit != 0 {
                a[mask] += a[mask ^ bit];
            }
        }
    }
}

fn mobius(a: &mut [f64], bits: usize) {
    for i in 0..bits {
        let bit = 1usize << i;
        for mask in 0..a.len() {
            if mask & bit != 0 {
                a[mask] -= a[mask ^ bit];
            }
        }
    }
}
