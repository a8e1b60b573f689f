//! Data-parallel helpers. With the `parallel` feature these fan out over rayon; without it,
//! or with [`Strategy::Sequential`], they run in order on the calling thread. Results are
//! always returned in input order.

/// Execution strategy for batch checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Parallel,
    Sequential,
}

impl Strategy {
    /// `Parallel` only when the crate was built with rayon.
    pub fn effective(self) -> Strategy {
        if cfg!(feature = "parallel") {
            self
        } else {
            Strategy::Sequential
        }
    }

    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self.effective() {
            Strategy::Sequential => items.into_iter().map(f).collect(),
            Strategy::Parallel => par_map(items, f),
        }
    }

    /// True iff `f` holds for every item.
    pub fn all<T, F>(self, items: Vec<T>, f: F) -> bool
    where
        T: Send,
        F: Fn(T) -> bool + Sync + Send,
    {
        self.map(items, f).into_iter().all(|b| b)
    }
}

#[cfg(feature = "parallel")]
fn par_map<T: Send, R: Send, F: Fn(T) -> R + Sync + Send>(items: Vec<T>, f: F) -> Vec<R> {
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T: Send, R: Send, F: Fn(T) -> R + Sync + Send>(items: Vec<T>, f: F) -> Vec<R> {
    items.into_iter().map(f).collect()
}
