use rayon::prelude::*;

use fracsinc_core::exec::NodeExecutor;

/// Evaluates quadrature nodes on the current rayon pool. Results come back
/// in index order, so the solvers' fixed reduction order is unaffected.
#[derive(Debug, Clone, Copy, Default)]
pub struct RayonExecutor;

impl NodeExecutor for RayonExecutor {
    fn map_indexed<T, F>(&self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..len).into_par_iter().map(f).collect()
    }
}

/// Runs `job` on a dedicated pool of `threads` workers.
pub fn with_threads<R: Send>(threads: usize, job: impl FnOnce() -> R + Send) -> Result<R, String> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| e.to_string())?;
    Ok(pool.install(job))
}
