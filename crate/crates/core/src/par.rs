//! Maybe-parallel iteration helpers.
//!
//! All heavy scans in this crate are pure and order-independent in their
//! verdicts; with the `parallel` feature they run on rayon, otherwise
//! sequentially. `find_first` keeps the sequential answer (the first match
//! in index order) so reports stay deterministic across thread counts.

#[cfg(feature = "parallel")]
use std::cell::Cell;

#[cfg(feature = "parallel")]
thread_local! {
    static FORCE_SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// Runs `f` with parallel dispatch disabled on the current thread.
/// Used by the benches to compare both code paths in one build.
pub fn with_sequential<R>(f: impl FnOnce() -> R) -> R {
    #[cfg(feature = "parallel")]
    {
        FORCE_SEQUENTIAL.with(|c| c.set(true));
        let r = f();
        FORCE_SEQUENTIAL.with(|c| c.set(false));
        r
    }
    #[cfg(not(feature = "parallel"))]
    f()
}

#[cfg(feature = "parallel")]
fn sequential_forced() -> bool {
    FORCE_SEQUENTIAL.with(|c| c.get())
}

/// First index in `0..n` where `pred` holds, in index order.
pub fn find_first(n: usize, pred: impl Fn(usize) -> bool + Sync + Send) -> Option<usize> {
    #[cfg(feature = "parallel")]
    if !sequential_forced() && n >= 4096 {
        use rayon::prelude::*;
        return (0..n).into_par_iter().find_first(|&i| pred(i));
    }
    (0..n).find(|&i| pred(i))
}

/// Whether `pred` holds for every index in `0..n`.
pub fn all(n: usize, pred: impl Fn(usize) -> bool + Sync + Send) -> bool {
    #[cfg(feature = "parallel")]
    if !sequential_forced() && n >= 4096 {
        use rayon::prelude::*;
        return (0..n).into_par_iter().all(pred);
    }
    (0..n).all(pred)
}

/// Index-ordered map over `0..n`.
pub fn map_indexed<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    if !sequential_forced() && n >= 64 {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}
