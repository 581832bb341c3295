//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature (default) the work runs on the rayon pool;
//! without it the same call sites compile to plain iteration. Output order
//! always matches input order, so results are deterministic either way.

/// How a batch of independent jobs should be executed.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum ExecMode {
    /// Rayon when the `parallel` feature is enabled, sequential otherwise.
    #[default]
    Auto,
    /// Always sequential, even when the feature is enabled.
    Sequential,
}

/// Maps `f` over `items`, preserving order.
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Send + Sync,
{
    par_map_mode(ExecMode::Auto, items, f)
}

#[cfg(feature = "parallel")]
pub fn par_map_mode<T, U, F>(mode: ExecMode, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Send + Sync,
{
    use rayon::prelude::*;
    match mode {
        ExecMode::Auto => items.into_par_iter().map(f).collect(),
        ExecMode::Sequential => items.into_iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn par_map_mode<T, U, F>(_mode: ExecMode, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Send + Sync,
{
    items.into_iter().map(f).collect()
}

/// Maps `f` over an index range, preserving order.
pub fn par_map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Send + Sync,
{
    par_map((0..n).collect(), f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_stable() {
        let out = par_map((0..100).collect::<Vec<_>>(), |x| x * x);
        assert_eq!(out, (0..100).map(|x| x * x).collect::<Vec<_>>());
        let seq = par_map_mode(ExecMode::Sequential, (0..100).collect::<Vec<_>>(), |x| x * x);
        assert_eq!(out, seq);
    }
}
