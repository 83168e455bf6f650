//! Data-parallel helpers shared by the grid and lattice code paths.
//!
//! With the `parallel` feature (default) the `*_auto` functions fan out on
//! the rayon pool; without it they alias the sequential versions. Results
//! are always collected in input order, and reductions go through
//! [`pairwise_sum`], so the two paths produce bit-identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Fixed-order pairwise summation. Deterministic regardless of how the
/// addends were produced, and more accurate than a running sum for the
/// slab totals of the lattice oracle.
pub(crate) fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let (lo, hi) = values.split_at(n / 2);
            pairwise_sum(lo) + pairwise_sum(hi)
        }
    }
}

#[cfg(feature = "parallel")]
pub(crate) fn try_map_indexed_auto<T, E, F>(n: usize, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(usize) -> Result<T, E> + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn try_map_indexed_auto<T, E, F>(n: usize, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(usize) -> Result<T, E> + Sync + Send,
{
    try_map_indexed_seq(n, f)
}

pub(crate) fn try_map_indexed_seq<T, E, F>(n: usize, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(usize) -> Result<T, E> + Sync + Send,
{
    (0..n).map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn map_range_auto<T, F>(lo: i64, hi: i64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(i64) -> T + Sync + Send,
{
    (lo..=hi).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_range_auto<T, F>(lo: i64, hi: i64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(i64) -> T + Sync + Send,
{
    map_range_seq(lo, hi, f)
}

pub(crate) fn map_range_seq<T, F>(lo: i64, hi: i64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(i64) -> T + Sync + Send,
{
    (lo..=hi).map(f).collect()
}
