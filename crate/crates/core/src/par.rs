//! Data-parallel helpers. With the `parallel` feature these dispatch to rayon;
//! without it they run the same closures sequentially, in the same order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Whether the crate was built with the rayon backend.
pub const PARALLEL: bool = cfg!(feature = "parallel");

pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

pub fn all<T, F>(items: &[T], f: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().all(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().all(f)
    }
}

/// Number of work chunks to split a loop of `len` items into.
pub fn chunk_count(len: usize) -> usize {
    #[cfg(feature = "parallel")]
    let workers = rayon::current_num_threads();
    #[cfg(not(feature = "parallel"))]
    let workers = 1;
    (workers * 4).clamp(1, len.max(1))
}
