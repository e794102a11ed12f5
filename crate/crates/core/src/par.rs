//! Data-parallel sweep helpers. With the default `parallel` feature the
//! batch entry points fan out over rayon; without it they fall back to the
//! sequential versions, which are always compiled (the benchmarks compare
//! the two directly).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map_collect_seq<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    items.iter().map(f).collect()
}

pub fn all_seq<T: Sync>(items: &[T], f: impl Fn(&T) -> bool + Sync + Send) -> bool {
    items.iter().all(f)
}

#[cfg(feature = "parallel")]
pub fn map_collect<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    map_collect_seq(items, f)
}

#[cfg(feature = "parallel")]
pub fn all<T: Sync>(items: &[T], f: impl Fn(&T) -> bool + Sync + Send) -> bool {
    items.par_iter().all(f)
}

#[cfg(not(feature = "parallel"))]
pub fn all<T: Sync>(items: &[T], f: impl Fn(&T) -> bool + Sync + Send) -> bool {
    all_seq(items, f)
}

/// First failure among the items, if any. Used to report a witness from a
/// sweep without giving up parallelism.
pub fn find_failure<T: Sync + Clone>(items: &[T], ok: impl Fn(&T) -> bool + Sync + Send) -> Option<T> {
    let flags = map_collect(items, |t| ok(t));
    items
        .iter()
        .zip(flags)
        .find(|(_, pass)| !pass)
        .map(|(t, _)| t.clone())
}
