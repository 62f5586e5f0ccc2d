//! Deterministic data-parallel building blocks.
//!
//! All hot loops in this crate are expressed as per-index computations that
//! get folded with a *fixed* chunking scheme: partial sums are produced per
//! chunk of `CHUNK` indices and then combined left to right. Because the
//! chunk boundaries and the final fold order never depend on the thread
//! count, the `parallel` feature (rayon) and the sequential fallback produce
//! bit-identical floating-point results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Indices per summation chunk. Fixed so results do not depend on threads.
const CHUNK: usize = 4096;

/// Below this many indices the rayon dispatch is pure overhead.
#[cfg(feature = "parallel")]
const PAR_MIN: usize = 8192;

/// Sum `f(i)` over `0..n` with the fixed chunk fold described above.
pub(crate) fn chunked_sum<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let chunk_sums = |lo: usize| -> f64 {
        let hi = (lo + CHUNK).min(n);
        let mut acc = 0.0;
        for i in lo..hi {
            acc += f(i);
        }
        acc
    };
    let starts: Vec<usize> = (0..n).step_by(CHUNK.max(1)).collect();
    let partials: Vec<f64>;
    #[cfg(feature = "parallel")]
    {
        if n >= PAR_MIN {
            partials = starts.par_iter().map(|&lo| chunk_sums(lo)).collect();
        } else {
            partials = starts.iter().map(|&lo| chunk_sums(lo)).collect();
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        partials = starts.iter().map(|&lo| chunk_sums(lo)).collect();
    }
    partials.into_iter().sum()
}

/// Fill `out[i] = f(i)`. Entries are independent, so parallelism cannot
/// change the result.
pub(crate) fn fill_indexed<F>(out: &mut [f64], f: F)
where
    F: Fn(usize) -> f64 + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if out.len() >= PAR_MIN {
            out.par_chunks_mut(CHUNK).enumerate().for_each(|(c, chunk)| {
                let base = c * CHUNK;
                for (j, slot) in chunk.iter_mut().enumerate() {
                    *slot = f(base + j);
                }
            });
            return;
        }
    }
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = f(i);
    }
}

/// Map `f` over `0..n`, preserving index order in the output. Used for the
/// per-community solves; each call must be independent of the others.
pub(crate) fn try_map_indexed<T, F>(n: usize, f: F) -> crate::Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> crate::Result<T> + Sync + Send,
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
