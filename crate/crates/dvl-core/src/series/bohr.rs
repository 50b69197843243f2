use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::DirichletSeries;
use crate::arith::PrimeTable;
use crate::error::{Error, Result};

/// Coefficients re-indexed by prime-exponent multi-indices `κ(n)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BohrLift {
    terms: BTreeMap<Vec<u32>, Complex64>,
}

impl BohrLift {
    pub(super) fn lift(f: &DirichletSeries, table: &PrimeTable) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (n, c) in f.support() {
            terms.insert(table.multi_index(n)?, c);
        }
        Ok(Self { terms })
    }

    pub fn get(&self, alpha: &[u32]) -> Complex64 {
        self.terms.get(alpha).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u32], Complex64)> {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    /// Back to `n ↦ aₙ` with `n = Π p_j^{α_j}`.
    pub fn unlift(&self, table: &PrimeTable, truncation: u64) -> Result<DirichletSeries> {
        let mut out = DirichletSeries::zero(truncation)?;
        for (alpha, &c) in &self.terms {
            let mut n: u64 = 1;
            for (j, &e) in alpha.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = table.nth(j + 1).ok_or_else(|| Error::invalid("multi-index longer than the prime table"))?;
                n = p
                    .checked_pow(e)
                    .and_then(|pe| n.checked_mul(pe))
                    .ok_or_else(|| Error::invalid("multi-index overflows 64-bit integers"))?;
            }
            out.set(n, c)?;
        }
        Ok(out)
    }
}
