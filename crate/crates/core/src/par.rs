//! Data-parallel sweep helpers.
//!
//! Grid sweeps reduce through `min`/`max` only, so results are independent of
//! the parallel schedule. With the `parallel` feature enabled (the default)
//! the sweeps run on rayon; without it, or after [`set_sequential`], they run
//! sequentially. The runtime toggle exists so benchmarks can compare both
//! paths in one binary.

use std::sync::atomic::{AtomicBool, Ordering};

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Forces sequential execution even when the `parallel` feature is compiled in.
pub fn set_sequential(seq: bool) {
    FORCE_SEQUENTIAL.store(seq, Ordering::Relaxed);
}

/// True when sweeps will actually fan out.
pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.load(Ordering::Relaxed)
}

/// Minimizes `f` over `0..n`, returning `(argmin, min)`.
pub fn min_over<F>(n: usize, f: F) -> (usize, f64)
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    reduce_over(n, f, |a, b| a.1 <= b.1)
}

/// Maximizes `f` over `0..n`, returning `(argmax, max)`.
pub fn max_over<F>(n: usize, f: F) -> (usize, f64)
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    reduce_over(n, f, |a, b| a.1 >= b.1)
}

/// Applies `f` to every index and collects the results in order.
pub fn collect_over<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

fn reduce_over<F, K>(n: usize, f: F, keep_left: K) -> (usize, f64)
where
    F: Fn(usize) -> f64 + Sync + Send,
    K: Fn((usize, f64), (usize, f64)) -> bool + Sync + Send,
{
    assert!(n > 0, "empty sweep");
    let pick = |a: (usize, f64), b: (usize, f64)| {
        // Ties break towards the smaller index so sweeps stay deterministic.
        if keep_left(a, b) && (a.1 != b.1 || a.0 <= b.0) {
            a
        } else {
            b
        }
    };
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        use rayon::prelude::*;
        return (0..n)
            .into_par_iter()
            .map(|i| (i, f(i)))
            .reduce(|| (usize::MAX, f64::NAN), |a, b| {
                if a.0 == usize::MAX {
                    b
                } else if b.0 == usize::MAX {
                    a
                } else {
                    pick(a, b)
                }
            });
    }
    (0..n).map(|i| (i, f(i))).fold((usize::MAX, f64::NAN), |a, b| {
        if a.0 == usize::MAX {
            b
        } else {
            pick(a, b)
        }
    })
}
