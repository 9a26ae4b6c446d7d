//! Data-parallel helpers. With the `parallel` feature these fan out over the
//! rayon pool; without it they run sequentially with identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, preserving order.
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

/// Sum of `f(i)` over `0..n`, split into contiguous chunks.
pub fn sum_range<F>(n: u64, f: F) -> i64
where
    F: Fn(u64, u64) -> i64 + Sync + Send,
{
    const CHUNK: u64 = 1 << 14;
    let chunks: Vec<(u64, u64)> = (0..n.div_ceil(CHUNK)).map(|k| (k * CHUNK, ((k + 1) * CHUNK).min(n))).collect();
    #[cfg(feature = "parallel")]
    {
        chunks.par_iter().map(|&(a, b)| f(a, b)).sum()
    }
    #[cfg(not(feature = "parallel"))]
    {
        chunks.iter().map(|&(a, b)| f(a, b)).sum()
    }
}

/// Whether the crate was built with the rayon backend.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
