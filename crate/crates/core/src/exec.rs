//! Execution policy for the data-parallel sweeps (pair classification and
//! image enumeration). Work is split into index chunks, each chunk produces
//! an independent partial result, and partials are folded in chunk order, so
//! results are identical no matter how many threads run.

/// How a sweep should run. `Seq` is always available; `Par` uses the rayon
/// thread pool when the `parallel` feature is enabled and silently degrades
/// to sequential otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Seq,
    Par { threads: usize },
}

impl Exec {
    /// Policy for a requested thread count (1 means sequential).
    pub fn threads(n: usize) -> Exec {
        if n <= 1 {
            Exec::Seq
        } else {
            Exec::Par { threads: n }
        }
    }

    pub fn is_parallel(&self) -> bool {
        matches!(self, Exec::Par { .. })
    }
}

/// Split `len` items into chunk ranges of roughly `chunk` items.
fn chunk_ranges(len: u64, chunk: u64) -> Vec<(u64, u64)> {
    let chunk = chunk.max(1);
    let mut out = Vec::new();
    let mut start = 0u64;
    while start < len {
        let end = (start + chunk).min(len);
        out.push((start, end));
        start = end;
    }
    out
}

/// Run `map` over chunked subranges of `0..len` and fold the partial results
/// in chunk order. The fold order is fixed, so the result is deterministic
/// under any execution policy.
pub fn sweep<R, M, F>(exec: Exec, len: u64, chunk: u64, map: M, mut fold: F) -> Option<R>
where
    R: Send,
    M: Fn(u64, u64) -> R + Sync,
    F: FnMut(R, R) -> R,
{
    let ranges = chunk_ranges(len, chunk);
    if ranges.is_empty() {
        return None;
    }
    let partials: Vec<R> = match exec {
        Exec::Seq => ranges.iter().map(|&(a, b)| map(a, b)).collect(),
        Exec::Par { threads } => run_parallel(threads, &ranges, &map),
    };
    let mut iter = partials.into_iter();
    let first = iter.next()?;
    Some(iter.fold(first, &mut fold))
}

#[cfg(feature = "parallel")]
fn run_parallel<R, M>(threads: usize, ranges: &[(u64, u64)], map: &M) -> Vec<R>
where
    R: Send,
    M: Fn(u64, u64) -> R + Sync,
{
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build();
    match pool {
        Ok(pool) => pool.install(|| ranges.par_iter().map(|&(a, b)| map(a, b)).collect()),
        // Pool construction can only fail on resource exhaustion; run the
        // sweep anyway rather than aborting.
        Err(_) => ranges.iter().map(|&(a, b)| map(a, b)).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_parallel<R, M>(_threads: usize, ranges: &[(u64, u64)], map: &M) -> Vec<R>
where
    R: Send,
    M: Fn(u64, u64) -> R + Sync,
{
    ranges.iter().map(|&(a, b)| map(a, b)).collect()
}
