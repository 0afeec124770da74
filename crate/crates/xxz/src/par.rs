//! Data-parallel map helper. With the `parallel` feature (default) work is
//! spread over a rayon pool; without it, or with XXZ_THREADS=1, the same
//! closure runs sequentially. XXZ_THREADS caps the pool size.

#[cfg(feature = "parallel")]
use once_cell::sync::Lazy;

#[cfg(feature = "parallel")]
static POOL: Lazy<Option<rayon::ThreadPool>> = Lazy::new(|| {
    let n = std::env::var("XXZ_THREADS").ok()?.parse::<usize>().ok()?;
    rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().ok()
});

/// Map `f` over `items`, in parallel when available.
#[cfg(feature = "parallel")]
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    match POOL.as_ref() {
        Some(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        None => items.par_iter().map(&f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Sequential reference path, always available (benchmark baseline).
pub fn map_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}
