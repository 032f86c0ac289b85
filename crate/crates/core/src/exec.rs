//! Chunked map over an index range, run on a rayon pool when the `parallel`
//! feature is enabled and more than one job is requested.
//!
//! Results always come back in chunk order, so any fold over them is
//! independent of the number of workers.

/// Worker count meaning "use every available core".
pub const ALL_CORES: usize = 0;

/// Applies `f` to every chunk index in `0..chunks` and returns the results in
/// index order.
pub fn map_chunks<T, F>(chunks: usize, jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if jobs == 1 || chunks <= 1 {
        return (0..chunks).map(f).collect();
    }
    parallel_map(chunks, jobs, f)
}

#[cfg(feature = "parallel")]
fn parallel_map<T, F>(chunks: usize, jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;

    let run = || (0..chunks).into_par_iter().map(&f).collect();
    if jobs == ALL_CORES {
        return run();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(run),
        // fall back to the global pool
        Err(_) => run(),
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, F>(chunks: usize, _jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..chunks).map(f).collect()
}

/// Splits `0..total` into `chunk`-sized ranges; returns `(count, range_of)`.
pub fn chunk_range(total: u64, chunk: u64, index: usize) -> std::ops::Range<u64> {
    let start = index as u64 * chunk;
    start..(start + chunk).min(total)
}

pub fn chunk_count(total: u64, chunk: u64) -> usize {
    total.div_ceil(chunk) as usize
}
