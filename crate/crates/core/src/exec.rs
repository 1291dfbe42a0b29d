//! Execution strategy for independent quadrature nodes.
//!
//! Node evaluations are independent; solvers hand them to a [`NodeExecutor`]
//! and then reduce the returned values in a fixed order, so serial and
//! parallel executors give bit-identical sums.

use alloc::vec::Vec;

pub trait NodeExecutor: Sync {
    /// Evaluate `f(0), …, f(len − 1)` and return the results in index order.
    fn map_indexed<T, F>(&self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Evaluates nodes one after another on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Serial;

impl NodeExecutor for Serial {
    fn map_indexed<T, F>(&self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..len).map(f).collect()
    }
}
