//! Deterministic k-fold cross-validation and grid search.
//!
//! Fold assignment: indices `0..n` are shuffled with Fisher-Yates driven by
//! xoshiro256++ seeded through SplitMix64 (`seed_from_u64`), then dealt
//! round-robin, so shuffled position `p` lands in fold `p % k`. The
//! stratified variant shuffles each class separately and deals positives
//! first, continuing the round-robin into the negatives.
//!
//! Bounded draws use rejection sampling on the top of the 64-bit range, so
//! they are unbiased and independent of any library shuffle routine.

use std::cmp::Ordering;
use std::fmt;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{Label, LabeledDataset};
use crate::error::{Error, Result};
use crate::kernels::{KernelSpec, PairwiseProducts, RowMatrix};
use crate::logreg::{self, LogRegConfig};
use crate::svm::{self, SvmConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldPlan {
    pub k: usize,
    /// Fold index of each sample.
    pub assignment: Vec<usize>,
}

impl FoldPlan {
    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &f in &self.assignment {
            sizes[f] += 1;
        }
        sizes
    }

    /// `(train, validation)` indices for fold `f`, each ascending.
    pub fn split(&self, f: usize) -> (Vec<usize>, Vec<usize>) {
        let (val, train): (Vec<usize>, Vec<usize>) =
            (0..self.assignment.len()).partition(|&i| self.assignment[i] == f);
        (train, val)
    }
}

fn uniform_below(rng: &mut Xoshiro256PlusPlus, bound: u64) -> u64 {
    let zone = u64::MAX - u64::MAX % bound;
    loop {
        let r = rng.next_u64();
        if r < zone {
            return r % bound;
        }
    }
}

fn fisher_yates(items: &mut [usize], rng: &mut Xoshiro256PlusPlus) {
    for i in (1..items.len()).rev() {
        let j = uniform_below(rng, i as u64 + 1) as usize;
        items.swap(i, j);
    }
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("fold count must be >= 2, got {k}")));
    }
    if n < k {
        return Err(Error::InvalidParameter(format!("{n} samples cannot fill {k} folds")));
    }
    Ok(())
}

pub fn kfold_split(n: usize, k: usize, seed: u64) -> Result<FoldPlan> {
    check_k(n, k)?;
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    fisher_yates(&mut order, &mut rng);
    let mut assignment = vec![0; n];
    for (pos, &i) in order.iter().enumerate() {
        assignment[i] = pos % k;
    }
    Ok(FoldPlan { k, assignment })
}

pub fn kfold_split_stratified(labels: &[Label], k: usize, seed: u64) -> Result<FoldPlan> {
    check_k(labels.len(), k)?;
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut assignment = vec![0; labels.len()];
    let mut pos = 0usize;
    for class in [Label::Positive, Label::Negative] {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        fisher_yates(&mut members, &mut rng);
        for i in members {
            assignment[i] = pos % k;
            pos += 1;
        }
    }
    Ok(FoldPlan { k, assignment })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CvOptions {
    pub k: usize,
    pub seed: u64,
    pub stratified: bool,
}

impl CvOptions {
    pub fn plan(&self, ds: &LabeledDataset) -> Result<FoldPlan> {
        if self.stratified {
            kfold_split_stratified(ds.labels(), self.k, self.seed)
        } else {
            kfold_split(ds.n_samples(), self.k, self.seed)
        }
    }
}

/// Anything that can fit on some rows and label others.
pub trait Trainer: Sync {
    fn fit_predict(&self, ds: &LabeledDataset, train: &[usize], validate: &[usize]) -> Result<Vec<Label>>;
}

impl<F> Trainer for F
where
    F: Fn(&LabeledDataset, &[usize], &[usize]) -> Result<Vec<Label>> + Sync,
{
    fn fit_predict(&self, ds: &LabeledDataset, train: &[usize], validate: &[usize]) -> Result<Vec<Label>> {
        self(ds, train, validate)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldOutcome {
    pub accuracy: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvResult {
    pub folds: Vec<FoldOutcome>,
    /// Mean over successful folds; `None` when every fold failed.
    pub mean: Option<f64>,
}

impl CvResult {
    pub fn fold_accuracies(&self) -> Vec<Option<f64>> {
        self.folds.iter().map(|f| f.accuracy).collect()
    }

    pub fn failed_folds(&self) -> usize {
        self.folds.iter().filter(|f| f.accuracy.is_none()).count()
    }
}

pub fn cross_validate(ds: &LabeledDataset, trainer: &dyn Trainer, k: usize, seed: u64) -> Result<CvResult> {
    let plan = kfold_split(ds.n_samples(), k, seed)?;
    Ok(cross_validate_with_plan(ds, trainer, &plan))
}

/// Folds are independent; a failing fold is recorded and left out of the
/// mean.
pub fn cross_validate_with_plan(ds: &LabeledDataset, trainer: &dyn Trainer, plan: &FoldPlan) -> CvResult {
    let folds: Vec<FoldOutcome> = (0..plan.k)
        .into_par_iter()
        .map(|f| {
            let (train, val) = plan.split(f);
            match trainer.fit_predict(ds, &train, &val) {
                Ok(pred) => {
                    let correct = val.iter().zip(&pred).filter(|(&i, &p)| ds.labels()[i] == p).count();
                    FoldOutcome {
                        accuracy: Some(correct as f64 / val.len() as f64),
                        error: None,
                    }
                }
                Err(Error::SingleClass) => FoldOutcome {
                    accuracy: None,
                    error: Some("training split missing a class".into()),
                },
                Err(e) => FoldOutcome {
                    accuracy: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    let ok: Vec<f64> = folds.iter().filter_map(|f| f.accuracy).collect();
    let mean = (!ok.is_empty()).then(|| ok.iter().sum::<f64>() / ok.len() as f64);
    CvResult { folds, mean }
}

/// One grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum CellParams {
    Svm { kernel: KernelSpec, c: f64 },
    LogReg { config: LogRegConfig },
}

impl CellParams {
    fn c(&self) -> Option<f64> {
        match self {
            CellParams::Svm { c, .. } => Some(*c),
            CellParams::LogReg { .. } => None,
        }
    }

    /// Remaining parameters in tie-break order: kernel kind, then
    /// polynomial (degree, offset), gaussian (gamma), sigmoid (alpha, beta);
    /// for logistic regression (lambda, learning_rate, iterations).
    fn tie_key(&self) -> Vec<f64> {
        match self {
            CellParams::Svm { kernel, .. } => match *kernel {
                KernelSpec::Linear => vec![0.0],
                KernelSpec::Polynomial { offset, degree } => vec![1.0, f64::from(degree), offset],
                KernelSpec::Gaussian { gamma } => vec![2.0, gamma],
                KernelSpec::Sigmoid { alpha, beta } => vec![3.0, alpha, beta],
            },
            CellParams::LogReg { config } => {
                vec![config.lambda, config.learning_rate, config.iterations as f64]
            }
        }
    }
}

impl fmt::Display for CellParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellParams::Svm { kernel, c } => write!(f, "{kernel} C={c}"),
            CellParams::LogReg { config } => write!(
                f,
                "logreg(lambda={}, lr={}, iters={})",
                config.lambda, config.learning_rate, config.iterations
            ),
        }
    }
}

/// `Less` means `a` ranks ahead of `b`.
fn rank(a: (&CellParams, f64), b: (&CellParams, f64)) -> Ordering {
    b.1.total_cmp(&a.1)
        .then_with(|| match (a.0.c(), b.0.c()) {
            (Some(x), Some(y)) => x.total_cmp(&y),
            _ => Ordering::Equal,
        })
        .then_with(|| {
            let (ka, kb) = (a.0.tie_key(), b.0.tie_key());
            ka.iter()
                .zip(&kb)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or_else(|| ka.len().cmp(&kb.len()))
        })
}

/// The cells of one search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamGrid {
    pub cells: Vec<CellParams>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub params: CellParams,
    pub cv: CvResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSearchResult {
    pub rows: Vec<GridRow>,
    /// Index into `rows`.
    pub best: usize,
    pub plan: FoldPlan,
}

impl GridSearchResult {
    pub fn best_params(&self) -> &CellParams {
        &self.rows[self.best].params
    }

    pub fn best_mean(&self) -> f64 {
        self.rows[self.best].cv.mean.unwrap()
    }
}

/// Best row under the ranking rule, using only the table.
pub fn select_best(rows: &[GridRow]) -> Option<usize> {
    rows.iter()
        .enumerate()
        .filter_map(|(i, r)| r.cv.mean.map(|m| (i, &r.params, m)))
        .min_by(|a, b| rank((a.1, a.2), (b.1, b.2)).then(a.0.cmp(&b.0)))
        .map(|(i, _, _)| i)
}

/// SVM solver settings applied to every grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverSettings {
    pub kkt_tol: f64,
    pub eps: f64,
    pub max_passes: usize,
    pub max_iter: Option<usize>,
    pub cache_budget_bytes: u64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        let d = SvmConfig::new(KernelSpec::Linear, 1.0);
        SolverSettings {
            kkt_tol: d.kkt_tol,
            eps: d.eps,
            max_passes: d.max_passes,
            max_iter: d.max_iter,
            cache_budget_bytes: d.cache_budget_bytes,
        }
    }
}

impl SolverSettings {
    pub fn svm_config(&self, kernel: KernelSpec, c: f64) -> SvmConfig {
        SvmConfig {
            kernel,
            c,
            kkt_tol: self.kkt_tol,
            eps: self.eps,
            max_passes: self.max_passes,
            max_iter: self.max_iter,
            cache_budget_bytes: self.cache_budget_bytes,
        }
    }
}

/// Trains one grid cell, reusing precomputed pairwise products when
/// available.
pub struct CellTrainer<'a> {
    pub params: CellParams,
    pub solver: SolverSettings,
    pub products: Option<&'a PairwiseProducts>,
}

impl Trainer for CellTrainer<'_> {
    fn fit_predict(&self, ds: &LabeledDataset, train: &[usize], validate: &[usize]) -> Result<Vec<Label>> {
        let train_ds = ds.select(train);
        match self.params {
            CellParams::LogReg { config } => {
                let model = logreg::train_gd(&train_ds, &config)?;
                validate.iter().map(|&i| model.predict(ds.row(i))).collect()
            }
            CellParams::Svm { kernel, c } => {
                let cfg = self.solver.svm_config(kernel, c);
                match self.products.filter(|p| p.supports(&kernel) && p.n() == ds.n_samples()) {
                    Some(products) => {
                        let gram = products.gram(&kernel, train).unwrap();
                        let fit = svm::train_smo_with_gram(&train_ds, gram, &cfg)?;
                        let sv: Vec<usize> = (0..train.len())
                            .filter(|&j| fit.alphas[j] > svm::SUPPORT_THRESHOLD)
                            .collect();
                        let sv_rows: Vec<usize> = sv.iter().map(|&j| train[j]).collect();
                        let block = products.cross(&kernel, validate, &sv_rows).unwrap();
                        let coefs = fit.model.dual_coefs();
                        Ok((0..validate.len())
                            .map(|v| {
                                let mut acc = 0.0;
                                for (coef, k) in coefs.iter().zip(block.row(v)) {
                                    acc += coef * k;
                                }
                                Label::from_sign(acc + fit.model.bias())
                            })
                            .collect())
                    }
                    None => {
                        let model = svm::train_smo(&train_ds, &cfg)?;
                        validate.iter().map(|&i| model.predict(ds.row(i))).collect()
                    }
                }
            }
        }
    }
}

/// Precomputes the pairwise products a grid needs if they fit in `budget`.
pub fn products_for(ds: &LabeledDataset, grid: &ParamGrid, budget: u64) -> Option<PairwiseProducts> {
    let kernels: Vec<KernelSpec> = grid
        .cells
        .iter()
        .filter_map(|c| match c {
            CellParams::Svm { kernel, .. } => Some(*kernel),
            _ => None,
        })
        .collect();
    let need_dot = kernels.iter().any(|k| !k.uses_distance());
    let need_dist = kernels.iter().any(|k| k.uses_distance());
    let n = ds.n_samples() as u64;
    let bytes = n.saturating_mul(n).saturating_mul(8) * (u64::from(need_dot) + u64::from(need_dist));
    if !(need_dot || need_dist) || bytes > budget {
        return None;
    }
    let x = RowMatrix::new(ds.features(), ds.n_features()).ok()?;
    Some(PairwiseProducts::compute(x, need_dot, need_dist))
}

pub fn grid_search(ds: &LabeledDataset, grid: &ParamGrid, k: usize, seed: u64) -> Result<GridSearchResult> {
    let opts = CvOptions {
        k,
        seed,
        stratified: false,
    };
    grid_search_with(ds, grid, &opts, &SolverSettings::default(), None)
}

/// Every cell is scored on the same fold plan.
pub fn grid_search_with(
    ds: &LabeledDataset,
    grid: &ParamGrid,
    opts: &CvOptions,
    solver: &SolverSettings,
    products: Option<&PairwiseProducts>,
) -> Result<GridSearchResult> {
    if grid.cells.is_empty() {
        return Err(Error::Empty("parameter grid"));
    }
    let plan = opts.plan(ds)?;
    let owned;
    let products = match products {
        Some(p) => Some(p),
        None => {
            owned = products_for(ds, grid, solver.cache_budget_bytes);
            owned.as_ref()
        }
    };
    let rows: Vec<GridRow> = grid
        .cells
        .par_iter()
        .map(|&params| {
            let trainer = CellTrainer {
                params,
                solver: *solver,
                products,
            };
            GridRow {
                params,
                cv: cross_validate_with_plan(ds, &trainer, &plan),
            }
        })
        .collect();
    let best = select_best(&rows).ok_or(Error::AllCellsFailed)?;
    Ok(GridSearchResult { rows, best, plan })
}
