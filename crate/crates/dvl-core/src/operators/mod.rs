//! Finite sections of Volterra operators and multiplicative Hankel forms in
//! the orthonormal basis `e_{w,n}`.

mod build;
mod power;
mod power_law;

pub use build::{build_hankel_section, build_volterra_section, column_norm};
pub use power::{largest_singular_value, SingularValueEstimate};
pub use power_law::PowerLawHankel;

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A linear map between coordinate spaces, known only through products.
pub trait LinearOperator {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    /// `y = A x`.
    fn apply(&self, x: &[Complex64], y: &mut [Complex64]);
    /// `y = A* x`.
    fn apply_adjoint(&self, x: &[Complex64], y: &mut [Complex64]);
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entry {
    pub row: u32,
    pub col: u32,
    pub value: Complex64,
}

/// Sparse square matrix on the basis integers `indices`; entries are kept
/// sorted by `(row, col)` position.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSection {
    indices: Vec<u64>,
    entries: Vec<Entry>,
}

impl OperatorSection {
    /// `indices` must be strictly increasing; entry positions refer to it.
    pub fn new(indices: Vec<u64>, mut entries: Vec<Entry>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("section indices must be strictly increasing"));
        }
        let dim = indices.len() as u32;
        if entries.iter().any(|e| e.row >= dim || e.col >= dim) {
            return Err(Error::invalid("section entry outside the index set"));
        }
        entries.sort_by_key(|e| (e.row, e.col));
        if entries.windows(2).any(|w| (w[0].row, w[0].col) == (w[1].row, w[1].col)) {
            return Err(Error::invalid("duplicate section entry"));
        }
        entries.retain(|e| e.value != Complex64::new(0.0, 0.0));
        Ok(Self { indices, entries })
    }

    /// Dense square matrix given row by row.
    pub fn from_dense(indices: Vec<u64>, rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = indices.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("dense section shape mismatch"));
        }
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &value)| Entry { row: i as u32, col: j as u32, value }))
            .collect();
        Self::new(indices, entries)
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn raw_entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Nonzero `(m, n, value)` with basis integers.
    pub fn entries(&self) -> impl Iterator<Item = (u64, u64, Complex64)> + '_ {
        self.entries.iter().map(|e| (self.indices[e.row as usize], self.indices[e.col as usize], e.value))
    }

    fn position(&self, m: u64) -> Option<u32> {
        self.indices.binary_search(&m).ok().map(|i| i as u32)
    }

    /// Entry `(m, n)` by basis integers.
    pub fn get(&self, m: u64, n: u64) -> Complex64 {
        let (Some(r), Some(c)) = (self.position(m), self.position(n)) else {
            return Complex64::new(0.0, 0.0);
        };
        self.entries
            .binary_search_by_key(&(r, c), |e| (e.row, e.col))
            .map_or(Complex64::new(0.0, 0.0), |i| self.entries[i].value)
    }

    /// Compression to the basis integers in `[lo, hi]`.
    pub fn restrict(&self, lo: u64, hi: u64) -> Self {
        let keep: Vec<u64> = self.indices.iter().copied().filter(|&m| m >= lo && m <= hi).collect();
        let offset = self.indices.partition_point(|&m| m < lo) as u32;
        let dim = keep.len() as u32;
        let entries = self
            .entries
            .iter()
            .filter(|e| e.row >= offset && e.col >= offset && e.row - offset < dim && e.col - offset < dim)
            .map(|e| Entry { row: e.row - offset, col: e.col - offset, value: e.value })
            .collect();
        Self { indices: keep, entries }
    }

    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let n = self.dim();
        let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for e in &self.entries {
            out[e.row as usize][e.col as usize] = e.value;
        }
        out
    }

    /// Euclidean norm of the column at basis integer `n`.
    pub fn column_norm(&self, n: u64) -> f64 {
        let Some(c) = self.position(n) else { return 0.0 };
        let sq = self.entries.iter().filter(|e| e.col == c).map(|e| e.value.norm_sqr());
        libm::sqrt(crate::sum::sum(sq))
    }
}

impl LinearOperator for OperatorSection {
    fn rows(&self) -> usize {
        self.dim()
    }

    fn cols(&self) -> usize {
        self.dim()
    }

    fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        y.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        for e in &self.entries {
            y[e.row as usize] += e.value * x[e.col as usize];
        }
    }

    fn apply_adjoint(&self, x: &[Complex64], y: &mut [Complex64]) {
        y.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        for e in &self.entries {
            y[e.col as usize] += e.value.conj() * x[e.row as usize];
        }
    }
}

/// Shape of the weight `W_m(n)` in the homogeneous norm bound, without its
/// unknown constant: `1`, `log n / log log n`, `n^{(m−2)/m} / (log n)^{m−2}`.
pub fn homogeneous_weight_shape(m: u32, n: u64) -> Result<f64> {
    let l = libm::log(n as f64);
    match m {
        0 => Err(Error::invalid("homogeneity degree must be at least 1")),
        1 => Ok(1.0),
        2 if n >= 3 => Ok(l / libm::log(l)),
        2 => Err(Error::invalid("log log n needs n >= 3")),
        _ => {
            let m = f64::from(m);
            Ok(libm::pow(n as f64, (m - 2.0) / m) / libm::pow(l, m - 2.0))
        }
    }
}
