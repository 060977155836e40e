//! Data-parallel helpers with a sequential fallback.
//!
//! With the default `parallel` feature the indexed maps fan out over rayon;
//! without it they run inline. Results are collected in index order either
//! way, so callers see identical output from both paths.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this many items the parallel path runs inline; rayon setup would
/// dominate the work.
#[cfg(feature = "parallel")]
const PARALLEL_CUTOFF: usize = 64;

pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if n >= PARALLEL_CUTOFF {
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    map_indexed_seq(n, f)
}

pub(crate) fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_preserve_index_order() {
        let f = |i: usize| i * i;
        assert_eq!(map_indexed(1000, f), map_indexed_seq(1000, f));
    }
}
