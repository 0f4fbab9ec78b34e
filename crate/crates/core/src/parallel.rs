//! Replica-level parallelism with index-ordered results.

use std::sync::OnceLock;

use rayon::prelude::*;

/// Thread count from `PERCISO_THREADS`, defaulting to 1.
pub fn env_threads() -> usize {
    std::env::var("PERCISO_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or(1)
}

fn default_pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        rayon::ThreadPoolBuilder::new().num_threads(env_threads()).build().expect("thread pool")
    })
}

/// Runs `f` inside a pool of exactly `threads` workers.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build().expect("thread pool");
    pool.install(f)
}

/// `(0..n).map(f)` evaluated in parallel; output order is index order.
///
/// Inside [`with_threads`] the caller's pool is used, otherwise a pool sized
/// by `PERCISO_THREADS`.
pub fn map_indexed<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    if rayon::current_thread_index().is_some() {
        (0..n).into_par_iter().map(f).collect()
    } else {
        default_pool().install(|| (0..n).into_par_iter().map(f).collect())
    }
}
