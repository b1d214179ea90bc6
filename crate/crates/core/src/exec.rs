//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature off, or with [`Exec::Sequential`], every helper
//! runs on the calling thread. Results are always returned in input order.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Maps `f` over `items`, preserving order.
pub fn par_map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// True if `pred` holds for some item. Parallel runs may evaluate extra items.
pub fn par_any<T, F>(exec: Exec, items: &[T], pred: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().any(pred);
    }
    let _ = exec;
    items.iter().any(pred)
}

/// True if `pred` holds for every item.
pub fn par_all<T, F>(exec: Exec, items: &[T], pred: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    !par_any(exec, items, |t| !pred(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = par_map(Exec::Sequential, &xs, |x| x * x);
        let b = par_map(Exec::Parallel, &xs, |x| x * x);
        assert_eq!(a, b);
        assert!(par_any(Exec::Parallel, &xs, |&x| x == 999));
        assert!(!par_all(Exec::Sequential, &xs, |&x| x < 999));
    }
}
