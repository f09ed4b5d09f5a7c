use std::num::NonZeroUsize;
use std::sync::Arc;

use lru::LruCache;

use crate::kernels::{KernelSpec, Matrix};

/// Row access to a training Gram matrix: either fully materialized or
/// computed on demand behind an LRU cache.
pub(crate) enum GramRows<'a> {
    Dense(Matrix),
    Cached {
        features: &'a [f64],
        d: usize,
        kernel: KernelSpec,
        diag: Vec<f64>,
        cache: LruCache<usize, Arc<[f64]>>,
    },
}

impl<'a> GramRows<'a> {
    pub(crate) fn dense(m: Matrix) -> Self {
        debug_assert_eq!(m.rows, m.cols);
        GramRows::Dense(m)
    }

    /// Cache holding as many rows as fit in `budget_bytes` (at least two).
    pub(crate) fn cached(features: &'a [f64], d: usize, kernel: KernelSpec, budget_bytes: u64) -> Self {
        let n = features.len().checked_div(d).unwrap_or(0);
        let row_bytes = (n as u64).max(1) * 8;
        let rows = usize::try_from(budget_bytes / row_bytes).unwrap_or(usize::MAX).max(2);
        let diag = (0..n)
            .map(|i| {
                let x = &features[i * d..(i + 1) * d];
                kernel.eval_unchecked(x, x)
            })
            .collect();
        GramRows::Cached {
            features,
            d,
            kernel,
            diag,
            cache: LruCache::new(NonZeroUsize::new(rows).unwrap()),
        }
    }

    pub(crate) fn n(&self) -> usize {
        match self {
            GramRows::Dense(m) => m.rows,
            GramRows::Cached { diag, .. } => diag.len(),
        }
    }

    pub(crate) fn diag(&self, i: usize) -> f64 {
        match self {
            GramRows::Dense(m) => m.get(i, i),
            GramRows::Cached { diag, .. } => diag[i],
        }
    }

    fn cached_row(&mut self, i: usize) -> Arc<[f64]> {
        let GramRows::Cached {
            features,
            d,
            kernel,
            cache,
            ..
        } = self
        else {
            unreachable!()
        };
        let d = *d;
        let n = features.len() / d;
        cache
            .get_or_insert(i, || {
                let xi = &features[i * d..(i + 1) * d];
                (0..n)
                    .map(|j| kernel.eval_unchecked(xi, &features[j * d..(j + 1) * d]))
                    .collect()
            })
            .clone()
    }

    pub(crate) fn with_rows<R>(&mut self, i: usize, j: usize, f: impl FnOnce(&[f64], &[f64]) -> R) -> R {
        match self {
            GramRows::Dense(m) => f(m.row(i), m.row(j)),
            GramRows::Cached { .. } => {
                let ri = self.cached_row(i);
                let rj = self.cached_row(j);
                f(&ri, &rj)
            }
        }
    }
}
