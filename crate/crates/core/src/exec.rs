//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] runs on the
//! rayon pool. Without it both variants run sequentially. Every helper
//! preserves input order, so results never depend on the schedule.

cfg_if::cfg_if! {
    if #[cfg(feature = "parallel")] {
        use rayon::prelude::*;
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Order-preserving map.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        cfg_if::cfg_if! {
            if #[cfg(feature = "parallel")] {
                if self == Exec::Parallel {
                    return items.par_iter().map(f).collect();
                }
            }
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving filter-map.
    pub fn filter_map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> Option<U> + Sync + Send,
    {
        cfg_if::cfg_if! {
            if #[cfg(feature = "parallel")] {
                if self == Exec::Parallel {
                    return items.par_iter().filter_map(f).collect();
                }
            }
        }
        items.iter().filter_map(f).collect()
    }

    /// Order-preserving filter-map over `0..n`.
    pub fn filter_map_range<U, F>(self, n: u64, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(u64) -> Option<U> + Sync + Send,
    {
        cfg_if::cfg_if! {
            if #[cfg(feature = "parallel")] {
                if self == Exec::Parallel {
                    return (0..n).into_par_iter().filter_map(f).collect();
                }
            }
        }
        (0..n).filter_map(f).collect()
    }

    pub fn all<T, F>(self, items: &[T], f: F) -> bool
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        cfg_if::cfg_if! {
            if #[cfg(feature = "parallel")] {
                if self == Exec::Parallel {
                    return items.par_iter().all(f);
                }
            }
        }
        items.iter().all(f)
    }

    pub fn all_range<F>(self, n: u64, f: F) -> bool
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        cfg_if::cfg_if! {
            if #[cfg(feature = "parallel")] {
                if self == Exec::Parallel {
                    return (0..n).into_par_iter().all(f);
                }
            }
        }
        (0..n).all(f)
    }
}
