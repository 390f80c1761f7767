//! Data-parallel helpers. With the `parallel` feature disabled every helper
//! runs sequentially; callers never depend on which path ran, and results
//! are always returned in input order.

use crate::config::Exec;

/// Map `f` over `items`, keeping input order.
pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Like [`map`] but short-circuits on the first error in input order.
pub fn try_map<T, R, E, F>(exec: Exec, items: &[T], f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    map(exec, items, f).into_iter().collect()
}

/// Whether this build can actually run in parallel.
pub const fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}

/// Configure the global worker pool. Has no effect without the `parallel`
/// feature, or if the pool was already initialised.
pub fn init_threads(n: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = n;
}
