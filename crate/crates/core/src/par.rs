//! Index-parallel map used by the batteries and the orbit expansion.
//!
//! With the `rayon` feature (on by default) work fans out over the global
//! rayon pool; without it everything runs on the calling thread. Results are
//! always returned in index order, so output does not depend on scheduling.

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "SCHATTEN_GEOM_THREADS";

/// `(0..len).map(f)` in index order, parallel when the `rayon` feature is on.
pub fn map_indexed<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "rayon")]
    {
        map_indexed_parallel(len, f)
    }
    #[cfg(not(feature = "rayon"))]
    {
        map_indexed_sequential(len, f)
    }
}

pub fn map_indexed_sequential<T, F>(len: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..len).map(f).collect()
}

#[cfg(feature = "rayon")]
pub fn map_indexed_parallel<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..len).into_par_iter().map(f).collect()
}

/// Sizes the global pool from [`THREADS_ENV`] if set. Returns the thread
/// count in effect; later calls after the pool is built are no-ops.
pub fn configure_threads() -> Result<usize, String> {
    let requested = match std::env::var(THREADS_ENV) {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {v:?}"))?,
        ),
        Err(_) => None,
    };
    #[cfg(feature = "rayon")]
    {
        if let Some(n) = requested {
            // Fails only if the pool already exists, in which case it is kept.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        Ok(rayon::current_num_threads())
    }
    #[cfg(not(feature = "rayon"))]
    {
        let _ = requested;
        Ok(1)
    }
}
