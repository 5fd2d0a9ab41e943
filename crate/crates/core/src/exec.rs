//! Execution policy for the data-parallel sweeps.
//!
//! Every sweep in this crate is written as an indexed map whose results are
//! collected in index order, so output never depends on the worker count.
//! Without the `parallel` feature every policy runs on the calling thread.

use std::num::NonZeroUsize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel { workers: usize },
}

impl Default for Exec {
    fn default() -> Self {
        Exec::with_workers(default_workers())
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(NonZeroUsize::get)
        .unwrap_or(1)
}

impl Exec {
    pub fn with_workers(workers: usize) -> Self {
        if workers <= 1 {
            Exec::Sequential
        } else {
            Exec::Parallel { workers }
        }
    }

    /// Worker count this policy asks for (1 for sequential).
    pub fn workers(self) -> usize {
        match self {
            Exec::Sequential => 1,
            Exec::Parallel { workers } => workers.max(1),
        }
    }

    /// Evaluates `f(0), …, f(len - 1)` and returns the results in index order.
    pub fn map_indexed<R, F>(self, len: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..len).map(f).collect(),
            Exec::Parallel { workers } => par_map_indexed(workers, len, f),
        }
    }

    /// Like [`Exec::map_indexed`] for fallible work; the error with the lowest
    /// index wins so failures are reported deterministically.
    pub fn try_map_indexed<R, E, F>(self, len: usize, f: F) -> Result<Vec<R>, E>
    where
        R: Send,
        E: Send,
        F: Fn(usize) -> Result<R, E> + Sync + Send,
    {
        self.map_indexed(len, f).into_iter().collect()
    }
}

#[cfg(feature = "parallel")]
fn par_map_indexed<R, F>(workers: usize, len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    use rayon::prelude::*;

    if workers == rayon::current_num_threads() {
        return (0..len).into_par_iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| (0..len).into_par_iter().map(&f).collect()),
        Err(_) => (0..len).map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn par_map_indexed<R, F>(_workers: usize, len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    (0..len).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn results_keep_index_order() {
        for exec in [Exec::Sequential, Exec::with_workers(2), Exec::with_workers(8)] {
            let out = exec.map_indexed(100, |i| i * i);
            assert_eq!(out, (0..100).map(|i| i * i).collect::<Vec<_>>());
        }
    }

    #[test]
    fn lowest_index_error_wins() {
        let err = Exec::with_workers(4)
            .try_map_indexed(50, |i| if i % 7 == 3 { Err(i) } else { Ok(i) })
            .unwrap_err();
        assert_eq!(err, 3);
    }

    #[test]
    fn one_worker_is_sequential() {
        assert_eq!(Exec::with_workers(1), Exec::Sequential);
        assert_eq!(Exec::with_workers(0).workers(), 1);
    }
}
