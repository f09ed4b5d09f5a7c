use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{load_dataset, Label, LabeledDataset};
use crate::error::{Error, Result};
use crate::kernels::PairwiseProducts;
use crate::logreg;
use crate::metrics::{self, ConfusionMatrix, Metric, RocCurve};
use crate::model_io::{self, Model};
use crate::model_select::{self, CellParams, CvOptions, GridSearchResult, ParamGrid, SolverSettings};
use crate::svm;

use super::config::{ExperimentConfig, ModelKind};
use super::prepare::cmd_prepare;

pub const REPORT_FILE: &str = "report.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub config_sha256: String,
    pub seed: u64,
    pub started_unix: u64,
    pub finished_unix: u64,
    pub library_version: String,
}

/// Held-out metrics for one fitted model on one dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub confusion: ConfusionMatrix,
    pub accuracy: f64,
    pub tpr: Metric,
    pub fpr: Metric,
    pub f1: Metric,
    /// Threshold-swept curve; absent when the set holds one class.
    pub roc: Option<RocCurve>,
    pub auc: Metric,
}

impl Evaluation {
    pub const CSV_HEADER: &'static str = "accuracy,tp,fp,fn,tn,tpr,fpr,f1,auc";

    pub fn csv_fields(&self) -> String {
        let cm = &self.confusion;
        format!(
            "{:.6},{},{},{},{},{},{},{},{}",
            self.accuracy, cm.tp, cm.fp, cm.fn_, cm.tn, self.tpr, self.fpr, self.f1, self.auc
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub model: ModelKind,
    pub test_set: String,
    pub resolution: u32,
    pub best_params: CellParams,
    pub cv_accuracy: f64,
    #[serde(flatten)]
    pub eval: Evaluation,
}

/// Operating points of one model across resolutions on one test set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolutionRoc {
    pub model: ModelKind,
    pub test_set: String,
    pub curve: RocCurve,
    pub auc: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub model: ModelKind,
    pub resolution: u32,
    /// `None` when the failure happened before evaluation.
    pub test_set: Option<String>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub provenance: Provenance,
    pub models: Vec<ModelKind>,
    pub resolutions: Vec<u32>,
    pub test_sets: Vec<String>,
    /// Ordered by model (request order), test set, then resolution.
    pub rows: Vec<ReportRow>,
    pub resolution_rocs: Vec<ResolutionRoc>,
    pub failures: Vec<Failure>,
}

impl SweepReport {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let text = serde_json::to_string_pretty(self).expect("report serializes");
        fs::write(path, text).map_err(|e| Error::io(path, e))
    }
}

/// Scores `model` on `ds`; a positive decision value predicts fire.
pub fn evaluate(model: &Model, ds: &LabeledDataset) -> Result<Evaluation> {
    if model.n_features() != ds.n_features() {
        return Err(Error::DimensionMismatch {
            expected: model.n_features(),
            got: ds.n_features(),
        });
    }
    let scores: Vec<f64> = (0..ds.n_samples())
        .into_par_iter()
        .map(|i| model.decision(ds.row(i)))
        .collect::<Result<_>>()?;
    let predictions: Vec<Label> = scores.iter().map(|&s| Label::from_sign(s)).collect();
    let confusion = metrics::confusion(ds.labels(), &predictions)?;
    let roc = metrics::roc_from_scores(ds.labels(), &scores).ok();
    let auc = roc.as_ref().map_or(Metric::Undefined, |c| Metric::Value(metrics::auc(c)));
    Ok(Evaluation {
        accuracy: metrics::accuracy(&confusion)?,
        tpr: metrics::tpr(&confusion),
        fpr: metrics::fpr(&confusion),
        f1: metrics::f1(&confusion),
        confusion,
        roc,
        auc,
    })
}

/// Fits one cell's parameters on every row of `ds`.
pub fn fit_params(
    ds: &LabeledDataset,
    params: &CellParams,
    solver: &SolverSettings,
    products: Option<&PairwiseProducts>,
) -> Result<Model> {
    match *params {
        CellParams::LogReg { config } => Ok(Model::LogReg(logreg::train_gd(ds, &config)?)),
        CellParams::Svm { kernel, c } => {
            let cfg = solver.svm_config(kernel, c);
            let all: Vec<usize> = (0..ds.n_samples()).collect();
            let gram = products
                .filter(|p| p.n() == ds.n_samples())
                .and_then(|p| p.gram(&kernel, &all));
            let model = match gram {
                Some(g) => svm::train_smo_with_gram(ds, g, &cfg)?.model,
                None => svm::train_smo(ds, &cfg)?,
            };
            if !model.meta().converged {
                log::warn!("{params}: solver stopped before convergence (gap {:.3e})", model.meta().kkt_gap);
            }
            Ok(Model::Svm(model))
        }
    }
}

/// Grid search followed by a refit of the winner on all of `ds`.
pub fn select_and_fit(
    cfg: &ExperimentConfig,
    model: ModelKind,
    ds: &LabeledDataset,
    products: Option<&PairwiseProducts>,
) -> Result<(GridSearchResult, Model)> {
    let grid = cfg.grids.cells(model, ds.n_features());
    let opts = CvOptions {
        k: cfg.folds,
        seed: cfg.seed,
        stratified: cfg.stratified,
    };
    let gs = model_select::grid_search_with(ds, &grid, &opts, &cfg.solver, products)?;
    let fitted = fit_params(ds, gs.best_params(), &cfg.solver, products)?;
    Ok((gs, fitted))
}

fn products_for_models(cfg: &ExperimentConfig, ds: &LabeledDataset) -> Option<PairwiseProducts> {
    let union = ParamGrid {
        cells: cfg
            .model_list()
            .into_iter()
            .flat_map(|m| cfg.grids.cells(m, ds.n_features()).cells)
            .collect(),
    };
    model_select::products_for(ds, &union, cfg.gram_cache_budget_bytes)
}

fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

/// Runs `f` on a pool sized by the config and `PYROCLASS_WORKERS`.
pub fn with_workers<T: Send>(cfg: &ExperimentConfig, f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.effective_workers()? {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn require(path: &Path) -> Result<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(Error::io(
            path,
            std::io::Error::new(std::io::ErrorKind::NotFound, "dataset not prepared (run `prepare` first)"),
        ))
    }
}

struct CellOutcome {
    rows: Vec<ReportRow>,
    failures: Vec<Failure>,
}

fn run_cell(
    cfg: &ExperimentConfig,
    model: ModelKind,
    resolution: u32,
    train: &LabeledDataset,
    tests: &[(String, LabeledDataset)],
    products: Option<&PairwiseProducts>,
) -> CellOutcome {
    let mut out = CellOutcome {
        rows: Vec::new(),
        failures: Vec::new(),
    };
    let (gs, fitted) = match select_and_fit(cfg, model, train, products) {
        Ok(v) => v,
        Err(e) => {
            log::warn!("{model} at {resolution}: {e}");
            out.failures.push(Failure {
                model,
                resolution,
                test_set: None,
                message: e.to_string(),
            });
            return out;
        }
    };
    for (name, ds) in tests {
        match evaluate(&fitted, ds) {
            Ok(eval) => out.rows.push(ReportRow {
                model,
                test_set: name.clone(),
                resolution,
                best_params: *gs.best_params(),
                cv_accuracy: gs.best_mean(),
                eval,
            }),
            Err(e) => out.failures.push(Failure {
                model,
                resolution,
                test_set: Some(name.clone()),
                message: e.to_string(),
            }),
        }
    }
    log::info!("{model} at {resolution}: best {} (cv {:.4})", gs.best_params(), gs.best_mean());
    out
}

fn resolution_rocs(cfg: &ExperimentConfig, rows: &[ReportRow]) -> Vec<ResolutionRoc> {
    let mut out = Vec::new();
    for model in cfg.model_list() {
        for test_set in cfg.test_roots.keys() {
            let points: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.model == model && &r.test_set == test_set)
                .filter_map(|r| Some((r.eval.fpr.value()?, r.eval.tpr.value()?)))
                .collect();
            if points.is_empty() {
                continue;
            }
            let curve = metrics::roc_from_points(&points).expect("rates lie in [0, 1]");
            out.push(ResolutionRoc {
                model,
                test_set: test_set.clone(),
                auc: metrics::auc(&curve),
                curve,
            });
        }
    }
    out
}

/// Grid search, refit, and held-out evaluation for every model and
/// resolution, writing `report.json` into the output directory.
///
/// With `prepare_first`, datasets are (re)built before the sweep.
pub fn cmd_sweep(cfg: &ExperimentConfig, prepare_first: bool) -> Result<SweepReport> {
    cfg.validate()?;
    let started_unix = unix_now();
    with_workers(cfg, || {
        if prepare_first {
            cmd_prepare(cfg)?;
        }
        let resolutions = cfg.resolution_list();
        for &r in &resolutions {
            require(&cfg.train_file(r))?;
            for name in cfg.test_roots.keys() {
                require(&cfg.test_file(name, r))?;
            }
        }
        let models = cfg.model_list();
        let mut rows = Vec::new();
        let mut failures = Vec::new();
        for &r in &resolutions {
            let train = load_dataset(cfg.train_file(r))?;
            let tests = cfg
                .test_roots
                .keys()
                .map(|name| Ok((name.clone(), load_dataset(cfg.test_file(name, r))?)))
                .collect::<Result<Vec<_>>>()?;
            let products = products_for_models(cfg, &train);
            let outcomes: Vec<CellOutcome> = models
                .par_iter()
                .map(|&m| run_cell(cfg, m, r, &train, &tests, products.as_ref()))
                .collect();
            for o in outcomes {
                rows.extend(o.rows);
                failures.extend(o.failures);
            }
        }
        let model_rank = |m: ModelKind| models.iter().position(|&x| x == m);
        rows.sort_by(|a, b| {
            model_rank(a.model)
                .cmp(&model_rank(b.model))
                .then_with(|| a.test_set.cmp(&b.test_set))
                .then(a.resolution.cmp(&b.resolution))
        });
        failures.sort_by(|a, b| {
            model_rank(a.model)
                .cmp(&model_rank(b.model))
                .then(a.resolution.cmp(&b.resolution))
                .then_with(|| a.test_set.cmp(&b.test_set))
        });
        let report = SweepReport {
            provenance: Provenance {
                config_sha256: cfg.hash(),
                seed: cfg.seed,
                started_unix,
                finished_unix: unix_now(),
                library_version: env!("CARGO_PKG_VERSION").to_string(),
            },
            models,
            resolutions,
            test_sets: cfg.test_roots.keys().cloned().collect(),
            resolution_rocs: resolution_rocs(cfg, &rows),
            rows,
            failures,
        };
        fs::create_dir_all(&cfg.output_dir).map_err(|e| Error::io(&cfg.output_dir, e))?;
        report.save(cfg.output_dir.join(REPORT_FILE))?;
        Ok(report)
    })?
}

/// Result of the `train` command.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainOutcome {
    pub params: CellParams,
    pub cv_accuracy: f64,
    pub model: Model,
    pub path: PathBuf,
}

/// Fits one model at one prepared resolution and saves it.
pub fn cmd_train(cfg: &ExperimentConfig, model: ModelKind, resolution: u32, out: &Path) -> Result<TrainOutcome> {
    cfg.validate()?;
    let path = cfg.train_file(resolution);
    require(&path)?;
    with_workers(cfg, || {
        let ds = load_dataset(&path)?;
        let products = model_select::products_for(
            &ds,
            &cfg.grids.cells(model, ds.n_features()),
            cfg.gram_cache_budget_bytes,
        );
        let (gs, fitted) = select_and_fit(cfg, model, &ds, products.as_ref())?;
        model_io::save_model(&fitted, out)?;
        Ok(TrainOutcome {
            params: *gs.best_params(),
            cv_accuracy: gs.best_mean(),
            model: fitted,
            path: out.to_path_buf(),
        })
    })?
}

/// Loads a model file and a dataset file and scores one against the other.
pub fn cmd_eval(model_file: &Path, data: &Path) -> Result<Evaluation> {
    let model = model_io::load_model(model_file)?;
    let ds = load_dataset(data)?;
    evaluate(&model, &ds)
}
