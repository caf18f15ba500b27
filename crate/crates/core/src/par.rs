//! Thin dispatch layer between rayon and plain loops.
//!
//! Reductions are blocked so that the summation order is fixed regardless of
//! the thread schedule: workers fill per-block partial results and the blocks
//! are folded sequentially afterwards. `Sequential` is always available and is
//! what the criterion benches compare against.

/// Execution strategy for the data-parallel kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    /// Rayon work-stealing pool (only with the `parallel` feature).
    #[default]
    Parallel,
    /// Single-threaded reference path.
    Sequential,
}

impl Exec {
    pub fn label(self) -> &'static str {
        match self {
            Exec::Parallel => "parallel",
            Exec::Sequential => "sequential",
        }
    }
}

/// Maps `f` over `0..n`, collecting into a `Vec` in index order.
pub fn map_indexed<T, F>(exec: Exec, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// Deterministic blocked sum: each block is summed in order, block results are
/// folded sequentially. Identical bit pattern for both execution modes.
pub fn block_sum<F>(exec: Exec, n: usize, block: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let block = block.max(1);
    let nblocks = n.div_ceil(block);
    let partials = map_indexed(exec, nblocks, |b| {
        let lo = b * block;
        let hi = (lo + block).min(n);
        let mut acc = 0.0;
        for i in lo..hi {
            acc += f(i);
        }
        acc
    });
    pairwise_sum(&partials)
}

/// Pairwise summation; used for Monte-Carlo statistics.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_sum_matches_sequential_bitwise() {
        let f = |i: usize| ((i as f64) * 0.37).sin() / (i as f64 + 1.0);
        let a = block_sum(Exec::Parallel, 10_000, 128, f);
        let b = block_sum(Exec::Sequential, 10_000, 128, f);
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn pairwise_sum_small() {
        assert_eq!(pairwise_sum(&[]), 0.0);
        assert_eq!(pairwise_sum(&[1.5]), 1.5);
        assert_eq!(pairwise_sum(&[1.0, 2.0, 3.0]), 6.0);
    }
}
