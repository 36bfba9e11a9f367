//! Execution helpers for the data-parallel loops (column fits, replications,
//! threshold grids). With the `parallel` feature these dispatch to rayon;
//! without it they fall back to plain sequential loops. Results are always
//! collected in index order, so outputs do not depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..len`, parallel when the `parallel` feature is enabled.
pub fn map_indexed<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    #[cfg(feature = "parallel")]
    {
        map_indexed_par(len, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_indexed_seq(len, f)
    }
}

/// Sequential mapping over `0..len`; always available.
pub fn map_indexed_seq<T, F>(len: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..len).map(f).collect()
}

/// Rayon mapping over `0..len`.
#[cfg(feature = "parallel")]
pub fn map_indexed_par<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    (0..len).into_par_iter().map(f).collect()
}
