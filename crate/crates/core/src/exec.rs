//! Sequential or data-parallel execution of index-range scans.
//!
//! With the `parallel` feature (default) [`Execution::Parallel`] fans out
//! over rayon's pool; without it, it falls back to the sequential path.
//! Results are always aggregated in index order, so output is identical
//! either way.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run scans in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    pub fn map<R, F>(self, range: Range<u64>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => range.into_par_iter().map(f).collect(),
            _ => range.map(f).collect(),
        }
    }

    /// The result for the smallest index where `f` returns `Some`.
    pub fn find_first<R, F>(self, range: Range<u64>, f: F) -> Option<R>
    where
        R: Send,
        F: Fn(u64) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => range.into_par_iter().find_map_first(f),
            _ => range.into_iter().find_map(f),
        }
    }

    /// Maps over a slice, preserving order.
    pub fn map_slice<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let f = |i: u64| i * i;
        assert_eq!(Execution::Sequential.map(0..100, f), Execution::Parallel.map(0..100, f));
        let g = |i: u64| (i % 7 == 3 && i > 20).then_some(i);
        assert_eq!(Execution::Parallel.find_first(0..1000, g), Some(24));
        assert_eq!(Execution::Sequential.find_first(0..1000, g), Some(24));
    }
}
