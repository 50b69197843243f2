//! Numerical core for weighted Hilbert spaces of Dirichlet series.
//!
//! Everything here is `no_std` with `alloc`; the `dvl` crate adds IO, threads
//! and the command line on top.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod error;
pub mod exec;
pub mod experiments;
pub mod operators;
pub mod quad;
pub mod series;
pub mod spaces;
pub mod special;
pub mod sum;
pub mod weights;

pub use error::{Error, Result};
pub use num_complex::Complex64;
