//! Execution strategy for the embarrassingly parallel grids and sieves.
//!
//! `Exec::Parallel` fans work out over rayon when the `parallel` feature is
//! enabled and silently degrades to the sequential path otherwise. Results
//! are merged in chunk order, so both strategies produce identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

/// Split `[lo, hi)` into chunks of at most `chunk` and map each through `f`,
/// returning results in chunk order.
pub fn map_ranges<T, F>(lo: u64, hi: u64, chunk: u64, exec: Exec, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync + Send,
{
    assert!(chunk > 0);
    let bounds: Vec<(u64, u64)> = {
        let mut v = Vec::new();
        let mut start = lo;
        while start < hi {
            let end = hi.min(start + chunk);
            v.push((start, end));
            start = end;
        }
        v
    };
    map_items(bounds, exec, |(a, b)| f(a, b))
}

/// Map a list of work items, in order, with the chosen strategy.
pub fn map_items<I, T, F>(items: Vec<I>, exec: Exec, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Exec::Parallel {
        return items.into_par_iter().map(f).collect();
    }
    let _ = exec;
    items.into_iter().map(f).collect()
}
