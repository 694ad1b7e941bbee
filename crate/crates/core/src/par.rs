//! Data-parallel execution with a sequential fallback.
//!
//! With the `parallel` feature (on by default) work lists are spread over a
//! rayon pool sized by [`Parallelism`]; without it, or with one thread, they
//! run in order on the calling thread. Every caller merges results in input
//! order, so outputs never depend on the thread count.

/// Requested worker count. Zero means "all available cores".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Parallelism {
    threads: usize,
}

impl Parallelism {
    pub const fn sequential() -> Self {
        Self { threads: 1 }
    }

    pub const fn threads(threads: usize) -> Self {
        Self { threads }
    }

    pub const fn available() -> Self {
        Self { threads: 0 }
    }

    pub fn is_sequential(&self) -> bool {
        self.threads == 1 || !cfg!(feature = "parallel")
    }

    /// Effective worker count.
    pub fn worker_count(&self) -> usize {
        if self.is_sequential() {
            1
        } else if self.threads == 0 {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        } else {
            self.threads
        }
    }
}

/// Applies `f` to every item; results come back in input order.
pub fn map<T, R, F>(par: Parallelism, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    if par.is_sequential() || items.len() <= 1 {
        return items.into_iter().map(f).collect();
    }
    parallel_map(par, items, f)
}

#[cfg(feature = "parallel")]
fn parallel_map<T, R, F>(par: Parallelism, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    let run = || items.into_par_iter().map(&f).collect();
    match rayon::ThreadPoolBuilder::new()
        .num_threads(par.worker_count())
        .build()
    {
        Ok(pool) => pool.install(run),
        Err(e) => {
            log::warn!("thread pool unavailable ({e}); using the global pool");
            run()
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, R, F>(_: Parallelism, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    items.into_iter().map(f).collect()
}
