// SPDX-License-Identifier: Apache-2.0

//! Data-parallel helpers.
//!
//! With the `parallel` feature these run on rayon's pool; without it they are
//! plain sequential loops. Results always come back in index order so every
//! reduction built on top is deterministic.

use std::ops::Range;

/// Ranges shorter than this stay on the calling thread.
const SEQUENTIAL_BELOW: usize = 32;

#[cfg(feature = "parallel")]
pub fn map_range<T, F>(range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    if range.len() < SEQUENTIAL_BELOW {
        return range.map(f).collect();
    }
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<T, F>(range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    let _ = SEQUENTIAL_BELOW;
    range.map(f).collect()
}

/// Maps `f` over the range and returns the first (lowest-index) maximum by `key`.
pub fn argmax_by_key<T, K, F, G>(range: Range<usize>, f: F, key: G) -> Option<(usize, T)>
where
    T: Send,
    K: Ord,
    F: Fn(usize) -> T + Sync + Send,
    G: Fn(&T) -> K,
{
    let start = range.start;
    let mut best: Option<(usize, T)> = None;
    for (i, v) in map_range(range, f).into_iter().enumerate() {
        if best.as_ref().is_none_or(|(_, b)| key(&v) > key(b)) {
            best = Some((start + i, v));
        }
    }
    best
}

/// Runs `op` with at most `workers` threads. A no-op wrapper without `parallel`.
#[cfg(feature = "parallel")]
pub fn with_workers<R, F>(workers: usize, op: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    match rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
    {
        Ok(pool) => pool.install(op),
        Err(_) => op(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_workers<R, F>(_workers: usize, op: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    op()
}

/// Sets the size of the global pool; returns false if it was already initialised.
#[cfg(feature = "parallel")]
pub fn set_global_workers(workers: usize) -> bool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build_global()
        .is_ok()
}

#[cfg(not(feature = "parallel"))]
pub fn set_global_workers(_workers: usize) -> bool {
    true
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
