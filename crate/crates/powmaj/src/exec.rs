//! Execution-mode plumbing: grid evaluations run data-parallel via rayon by
//! default (feature `parallel`, enabled), or sequentially either when the
//! feature is off or when callers ask for it. Both modes produce identical,
//! order-preserving results; all workloads are pure functions over immutable
//! inputs.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExecMode {
    /// Use rayon's work-stealing pool when compiled in; otherwise falls back
    /// to sequential evaluation.
    #[default]
    Parallel,
    Sequential,
}

/// Order-preserving map over owned items, parallelized per `mode`.
pub fn map<T, U, F>(mode: ExecMode, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if mode == ExecMode::Parallel {
            use rayon::prelude::*;
            return items.into_par_iter().map(f).collect();
        }
    }
    let _ = mode;
    items.into_iter().map(f).collect()
}
