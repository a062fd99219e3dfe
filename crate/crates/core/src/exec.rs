//! Execution strategy for the data-parallel inner loops.
//!
//! Every hot loop in the crate (series convolution, per-`m` coefficient
//! tables, oracle columns, asymptotic sweeps) maps an index range to
//! independent results. [`Exec`] selects whether that map runs on the rayon
//! pool or on the calling thread. Without the `parallel` feature both
//! variants run sequentially, so callers never need their own `cfg`.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when this strategy will actually use worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Maps `f` over `range`, preserving order.
    pub fn map_range<T, F>(self, range: Range<usize>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    /// Maps `f` over a slice, preserving order.
    pub fn map_slice<S, T, F>(self, items: &[S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&S) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Applies `f` to every element of `items` in place.
    pub fn for_each_mut<S, F>(self, items: &mut [S], f: F)
    where
        S: Send,
        F: Fn(usize, &mut S) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            items.par_iter_mut().enumerate().for_each(|(i, s)| f(i, s));
            return;
        }
        items.iter_mut().enumerate().for_each(|(i, s)| f(i, s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_strategies_agree_and_preserve_order() {
        let seq = Exec::Sequential.map_range(0..1000, |i| i * i);
        let par = Exec::Parallel.map_range(0..1000, |i| i * i);
        assert_eq!(seq, par);
        assert_eq!(seq[31], 961);

        let mut v = vec![0u64; 64];
        Exec::Parallel.for_each_mut(&mut v, |i, x| *x = i as u64 + 1);
        assert_eq!(v.iter().sum::<u64>(), 64 * 65 / 2);
    }

    #[test]
    fn sequential_never_reports_parallel() {
        assert!(!Exec::Sequential.is_parallel());
        assert_eq!(Exec::Parallel.is_parallel(), cfg!(feature = "parallel"));
    }
}
