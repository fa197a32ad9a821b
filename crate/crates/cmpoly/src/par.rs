//! Data-parallel helpers. With the `parallel` feature (default) the maps run
//! on rayon; without it they fall back to plain sequential iteration, so both
//! code paths stay available for benchmarking.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Sequential map, always available; the benchmark baseline.
pub fn map_sequential<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Reduces pairs (key, value) to the entry with the largest key, preferring
/// the earliest on ties so results do not depend on scheduling.
pub fn max_by_key_stable<T, K: Ord + Copy>(items: &[(K, T)]) -> Option<usize> {
    let mut best: Option<(K, usize)> = None;
    for (i, (k, _)) in items.iter().enumerate() {
        if best.map_or(true, |(bk, _)| *k > bk) {
            best = Some((*k, i));
        }
    }
    best.map(|(_, i)| i)
}
