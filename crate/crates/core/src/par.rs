//! Data-parallel scans with a sequential fallback.
//!
//! Every scan used by the crate is a search for the least qualifying index, a
//! count, or an order-preserving map, so results do not depend on the
//! execution strategy.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution strategy for the scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[derive(Default)]
pub enum Exec {
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}


impl Exec {
    /// First index in `range` (in increasing order) for which `f` yields a value.
    pub fn find_first<T, F>(self, range: Range<usize>, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        match self {
            Exec::Sequential => range.into_iter().find_map(f),
            #[cfg(feature = "parallel")]
            Exec::Parallel => range.into_par_iter().find_map_first(f),
        }
    }

    /// Number of indices in `range` satisfying `pred`.
    pub fn count<F>(self, range: Range<usize>, pred: F) -> usize
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        match self {
            Exec::Sequential => range.into_iter().filter(|&i| pred(i)).count(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => range.into_par_iter().filter(|&i| pred(i)).count(),
        }
    }

    /// `f` applied to each index, results in index order.
    pub fn map<T, F>(self, range: Range<usize>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Exec::Sequential => range.into_iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => range.into_par_iter().map(f).collect(),
        }
    }
}
