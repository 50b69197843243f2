//! Ordered parallel map abstraction.
//!
//! Core algorithms split work into a fixed number of chunks and reduce the
//! results in chunk order, so the output never depends on how chunks are
//! scheduled. The std crate supplies a thread-pool backed executor.

use alloc::vec::Vec;

pub trait Executor: Sync {
    /// Evaluates `f(0), .., f(count - 1)` and returns the results in index order.
    fn map<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;

    fn threads(&self) -> usize {
        1
    }
}

/// Runs every chunk on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..count).map(f).collect()
    }
}
