//! Execution strategy for the embarrassingly parallel loops: point counts
//! over an index range. Without the `parallel` feature every strategy runs
//! sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    #[default]
    Parallel,
}

impl Strategy {
    /// Whether this strategy actually runs on the thread pool in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }

    /// `f` over `0..len`, results in index order.
    pub fn map_range<T, F>(self, len: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// Number of indices in `0..len` satisfying `pred`.
    pub fn count_range<F>(self, len: u64, pred: F) -> u64
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..len).into_par_iter().filter(|&i| pred(i)).count() as u64;
        }
        (0..len).filter(|&i| pred(i)).count() as u64
    }

    /// First error produced by `f` over `0..len`, if any, else the count of
    /// `Ok(true)` results.
    pub fn try_count_range<E, F>(self, len: u64, f: F) -> Result<u64, E>
    where
        E: Send,
        F: Fn(u64) -> Result<bool, E> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..len)
                .into_par_iter()
                .map(|i| f(i).map(u64::from))
                .try_reduce(|| 0, |a, b| Ok(a + b));
        }
        let mut n = 0;
        for i in 0..len {
            n += f(i)? as u64;
        }
        Ok(n)
    }
}
