//! Soft-margin kernel SVM trained by SMO on the dual problem.

mod gram;
mod smo;

use serde::{Deserialize, Serialize};

use crate::dataset::{Label, LabeledDataset};
use crate::error::{Error, Result};
use crate::kernels::{self, KernelSpec, Matrix, RowMatrix};

use gram::GramRows;

/// Multipliers at or below this are treated as zero when extracting
/// support vectors.
pub const SUPPORT_THRESHOLD: f64 = 1e-9;

pub const DEFAULT_CACHE_BUDGET: u64 = 2 << 30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmConfig {
    pub kernel: KernelSpec,
    /// Box constraint.
    pub c: f64,
    pub kkt_tol: f64,
    pub eps: f64,
    /// Consecutive sweeps without objective progress before giving up.
    pub max_passes: usize,
    /// Iteration cap; `None` means `10 * n * 100`.
    pub max_iter: Option<usize>,
    /// The Gram matrix is materialized when `n * n * 8` fits, otherwise rows
    /// are computed on demand and LRU-cached within this budget.
    pub cache_budget_bytes: u64,
}

impl SvmConfig {
    pub fn new(kernel: KernelSpec, c: f64) -> Self {
        SvmConfig {
            kernel,
            c,
            kkt_tol: 1e-3,
            eps: 1e-12,
            max_passes: 5,
            max_iter: None,
            cache_budget_bytes: DEFAULT_CACHE_BUDGET,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.kernel.validate()?;
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::InvalidParameter(format!("C must be finite and > 0, got {}", self.c)));
        }
        if self.kkt_tol.is_nan() || self.kkt_tol <= 0.0 {
            return Err(Error::InvalidParameter("kkt_tol must be > 0".into()));
        }
        if self.eps.is_nan() || self.eps < 0.0 {
            return Err(Error::InvalidParameter("eps must be >= 0".into()));
        }
        if self.max_iter == Some(0) {
            return Err(Error::InvalidParameter("max_iter must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingMeta {
    pub iterations: u64,
    pub objective: f64,
    /// False when the iteration cap or stall limit hit before the KKT
    /// conditions were met; the model is still usable.
    pub converged: bool,
    /// Final `b_low - b_up` violation.
    pub kkt_gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvmModel {
    pub(crate) support_vectors: Vec<f64>,
    pub(crate) n_features: usize,
    pub(crate) dual_coefs: Vec<f64>,
    pub(crate) bias: f64,
    pub(crate) kernel: KernelSpec,
    pub(crate) meta: TrainingMeta,
}

/// A trained model plus the full multiplier vector it came from.
#[derive(Debug, Clone)]
pub struct SvmFit {
    pub model: SvmModel,
    /// One multiplier per training row.
    pub alphas: Vec<f64>,
}

impl SvmModel {
    pub fn support_vectors(&self) -> RowMatrix<'_> {
        RowMatrix::new(&self.support_vectors, self.n_features).unwrap()
    }

    pub fn n_support(&self) -> usize {
        self.dual_coefs.len()
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    /// Signed coefficients `alpha_i * y_i`.
    pub fn dual_coefs(&self) -> &[f64] {
        &self.dual_coefs
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn meta(&self) -> &TrainingMeta {
        &self.meta
    }

    /// `f(x) = sum_i coef_i K(sv_i, x) + bias`
    pub fn decision(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n_features {
            return Err(Error::DimensionMismatch {
                expected: self.n_features,
                got: x.len(),
            });
        }
        let sv = self.support_vectors();
        let mut acc = 0.0;
        for (i, &coef) in self.dual_coefs.iter().enumerate() {
            acc += coef * self.kernel.eval_unchecked(sv.row(i), x);
        }
        Ok(acc + self.bias)
    }

    /// Sign of the decision value; exactly 0.0 maps to `Positive`.
    pub fn predict(&self, x: &[f64]) -> Result<Label> {
        Ok(Label::from_sign(self.decision(x)?))
    }

    pub fn decision_batch(&self, ds: &LabeledDataset) -> Result<Vec<f64>> {
        ds.rows().map(|r| self.decision(r)).collect()
    }
}

fn check_training_set(ds: &LabeledDataset) -> Result<()> {
    if ds.n_samples() < 2 {
        if ds.n_samples() == 0 {
            return Err(Error::Empty("training set"));
        }
        return Err(Error::SingleClass);
    }
    if !ds.has_both_classes() {
        return Err(Error::SingleClass);
    }
    Ok(())
}

/// Trains on `ds`, building the Gram matrix according to the cache budget.
pub fn train_smo(ds: &LabeledDataset, cfg: &SvmConfig) -> Result<SvmModel> {
    Ok(train_smo_full(ds, cfg)?.model)
}

pub fn train_smo_full(ds: &LabeledDataset, cfg: &SvmConfig) -> Result<SvmFit> {
    cfg.validate()?;
    check_training_set(ds)?;
    let n = ds.n_samples() as u64;
    let mut rows = if n.saturating_mul(n).saturating_mul(8) <= cfg.cache_budget_bytes {
        GramRows::dense(kernels::gram(&cfg.kernel, ds_matrix(ds))?)
    } else {
        GramRows::cached(ds.features(), ds.n_features(), cfg.kernel, cfg.cache_budget_bytes)
    };
    fit(ds, cfg, &mut rows)
}

/// Trains with a caller-supplied Gram matrix over the rows of `ds`.
pub fn train_smo_with_gram(ds: &LabeledDataset, gram: Matrix, cfg: &SvmConfig) -> Result<SvmFit> {
    cfg.validate()?;
    check_training_set(ds)?;
    if gram.rows != ds.n_samples() || gram.cols != ds.n_samples() {
        return Err(Error::DimensionMismatch {
            expected: ds.n_samples(),
            got: gram.rows,
        });
    }
    fit(ds, cfg, &mut GramRows::dense(gram))
}

fn ds_matrix(ds: &LabeledDataset) -> RowMatrix<'_> {
    RowMatrix::new(ds.features(), ds.n_features()).unwrap()
}

fn fit(ds: &LabeledDataset, cfg: &SvmConfig, rows: &mut GramRows<'_>) -> Result<SvmFit> {
    let n = ds.n_samples();
    let labels: Vec<f64> = ds.labels().iter().map(|l| l.as_f64()).collect();
    let params = smo::SmoParams {
        c: cfg.c,
        tol: cfg.kkt_tol,
        eps: cfg.eps,
        max_passes: cfg.max_passes.max(1),
        max_iter: cfg.max_iter.unwrap_or(10 * n * 100).max(1),
    };
    let sol = smo::solve(rows, &labels, &params);
    if !sol.converged {
        log::warn!(
            "SMO stopped after {} iterations with KKT gap {:.3e} (tol {:.1e})",
            sol.iterations,
            sol.gap,
            cfg.kkt_tol
        );
    }

    let mut support_vectors = Vec::new();
    let mut dual_coefs = Vec::new();
    for (i, &a) in sol.alpha.iter().enumerate() {
        if a > SUPPORT_THRESHOLD {
            support_vectors.extend_from_slice(ds.row(i));
            dual_coefs.push(a * labels[i]);
        }
    }
    let model = SvmModel {
        support_vectors,
        n_features: ds.n_features(),
        dual_coefs,
        bias: sol.bias,
        kernel: cfg.kernel,
        meta: TrainingMeta {
            iterations: sol.iterations as u64,
            objective: sol.objective,
            converged: sol.converged,
            kkt_gap: sol.gap,
        },
    };
    Ok(SvmFit {
        model,
        alphas: sol.alpha,
    })
}

/// `W(a) = sum a_i - 1/2 sum_ij a_i a_j y_i y_j K_ij`
pub fn dual_objective(alphas: &[f64], labels: &[Label], gram: &Matrix) -> Result<f64> {
    let n = alphas.len();
    if labels.len() != n || gram.rows != n || gram.cols != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: if labels.len() != n { labels.len() } else { gram.rows },
        });
    }
    let ay: Vec<f64> = alphas.iter().zip(labels).map(|(a, l)| a * l.as_f64()).collect();
    let mut quad = 0.0;
    for i in 0..n {
        quad += ay[i] * kernels::dot(gram.row(i), &ay);
    }
    Ok(alphas.iter().sum::<f64>() - 0.5 * quad)
}
