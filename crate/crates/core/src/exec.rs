//! Data-parallel helpers with a sequential fallback.
//!
//! Reductions are always performed over fixed-size chunks whose partial results
//! are combined in index order, so results are bit-identical whether the work
//! runs on one thread or many.

/// How the data-parallel inner loops are executed.
///
/// Without the `parallel` feature both variants run sequentially.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// Order-preserving map over `items`.
pub(crate) fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Sums `len`-vectors produced per chunk of `items`; chunk boundaries do not
/// depend on the thread count.
pub(crate) fn chunked_sum<T, F>(exec: Execution, items: &[T], chunk: usize, len: usize, f: F) -> Vec<f64>
where
    T: Sync,
    F: Fn(&[T], &mut [f64]) + Sync + Send,
{
    let chunk = chunk.max(1);
    let partial = |c: &[T]| {
        let mut acc = vec![0.0; len];
        f(c, &mut acc);
        acc
    };
    let chunks: Vec<&[T]> = items.chunks(chunk).collect();
    let partials = map(exec, &chunks, |c| partial(c));
    let mut total = vec![0.0; len];
    for p in partials {
        for (t, v) in total.iter_mut().zip(p) {
            *t += v;
        }
    }
    total
}
