//! Sequential/parallel dispatch for the brute-force loops.
//!
//! Every loop that may run on rayon goes through these helpers so the
//! sequential path is always available and produces identical results.
//! Without the `parallel` feature, [`Exec::Parallel`] quietly runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this build can actually run work on a thread pool.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    fn is_parallel(self) -> bool {
        self == Exec::Parallel && Self::parallel_available()
    }

    /// `(0..n).map(f).collect()`, order preserved.
    pub fn map_range<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).collect();
        }
        let _ = self.is_parallel();
        (0..n).map(f).collect()
    }

    /// First `Some` in index order. Deterministic under both modes.
    pub fn find_map_first<T, F>(self, n: usize, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().find_map_first(f);
        }
        (0..n).find_map(f)
    }

    pub fn all<F>(self, n: usize, f: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        self.find_map_first(n, |i| if f(i) { None } else { Some(()) })
            .is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(exec.map_range(5, |i| i * i), vec![0, 1, 4, 9, 16]);
            assert_eq!(
                exec.find_map_first(100, |i| (i % 7 == 3 && i > 20).then_some(i)),
                Some(24)
            );
            assert!(exec.all(10, |i| i < 10));
            assert!(!exec.all(10, |i| i != 4));
        }
    }
}
