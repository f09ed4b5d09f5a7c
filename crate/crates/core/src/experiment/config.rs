use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::logreg::LogRegConfig;
use crate::model_select::{CellParams, ParamGrid, SolverSettings};
use crate::preprocess::AugmentPlan;
use crate::svm::DEFAULT_CACHE_BUDGET;

/// The four model families a sweep can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    #[serde(rename = "logreg")]
    LogReg,
    #[serde(rename = "svm-sigmoid")]
    SvmSigmoid,
    #[serde(rename = "svm-poly")]
    SvmPoly,
    #[serde(rename = "svm-gaussian")]
    SvmGaussian,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::LogReg,
        ModelKind::SvmSigmoid,
        ModelKind::SvmPoly,
        ModelKind::SvmGaussian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::LogReg => "logreg",
            ModelKind::SvmSigmoid => "svm-sigmoid",
            ModelKind::SvmPoly => "svm-poly",
            ModelKind::SvmGaussian => "svm-gaussian",
        }
    }

    pub fn valid_names() -> String {
        ModelKind::ALL.map(ModelKind::name).join(", ")
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownModel {
                name: s.to_string(),
                valid: ModelKind::valid_names(),
            })
    }
}

/// A grid value that is either fixed or `"1/d"`, the reciprocal of the
/// feature count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scale {
    Value(f64),
    Relative(RelativeScale),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelativeScale {
    #[serde(rename = "1/d")]
    InverseDim,
}

impl Scale {
    pub fn resolve(self, d: usize) -> f64 {
        match self {
            Scale::Value(v) => v,
            Scale::Relative(RelativeScale::InverseDim) => 1.0 / d.max(1) as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LogRegGrid {
    pub lambda: Vec<f64>,
    pub learning_rate: f64,
    pub iterations: usize,
}

impl Default for LogRegGrid {
    fn default() -> Self {
        let d = LogRegConfig::default();
        LogRegGrid {
            lambda: vec![d.lambda],
            learning_rate: d.learning_rate,
            iterations: d.iterations,
        }
    }
}

/// Hyperparameter values searched per model family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSpec {
    pub c: Vec<f64>,
    pub poly_degree: Vec<u32>,
    pub poly_offset: Vec<f64>,
    pub gaussian_gamma: Vec<Scale>,
    pub sigmoid_alpha: Vec<Scale>,
    pub sigmoid_beta: Vec<f64>,
    pub logreg: LogRegGrid,
}

impl Default for GridSpec {
    fn default() -> Self {
        let inv = Scale::Relative(RelativeScale::InverseDim);
        GridSpec {
            c: vec![0.1, 1.0, 10.0, 100.0],
            poly_degree: vec![2, 3, 4],
            poly_offset: vec![0.0, 1.0],
            gaussian_gamma: vec![inv, Scale::Value(0.01), Scale::Value(0.1), Scale::Value(1.0)],
            sigmoid_alpha: vec![inv, Scale::Value(0.01)],
            sigmoid_beta: vec![0.0, -1.0],
            logreg: LogRegGrid::default(),
        }
    }
}

impl GridSpec {
    fn kernels(&self, model: ModelKind, d: usize) -> Vec<KernelSpec> {
        match model {
            ModelKind::LogReg => Vec::new(),
            ModelKind::SvmPoly => self
                .poly_degree
                .iter()
                .flat_map(|&degree| {
                    self.poly_offset
                        .iter()
                        .map(move |&offset| KernelSpec::Polynomial { offset, degree })
                })
                .collect(),
            ModelKind::SvmGaussian => self
                .gaussian_gamma
                .iter()
                .map(|g| KernelSpec::Gaussian { gamma: g.resolve(d) })
                .collect(),
            ModelKind::SvmSigmoid => self
                .sigmoid_alpha
                .iter()
                .flat_map(|a| {
                    let alpha = a.resolve(d);
                    self.sigmoid_beta
                        .iter()
                        .map(move |&beta| KernelSpec::Sigmoid { alpha, beta })
                })
                .collect(),
        }
    }

    /// Grid cells for one model at feature dimension `d`.
    pub fn cells(&self, model: ModelKind, d: usize) -> ParamGrid {
        let cells = match model {
            ModelKind::LogReg => self
                .logreg
                .lambda
                .iter()
                .map(|&lambda| CellParams::LogReg {
                    config: LogRegConfig {
                        learning_rate: self.logreg.learning_rate,
                        iterations: self.logreg.iterations,
                        lambda,
                    },
                })
                .collect(),
            _ => self
                .kernels(model, d)
                .into_iter()
                .flat_map(|kernel| self.c.iter().map(move |&c| CellParams::Svm { kernel, c }))
                .collect(),
        };
        ParamGrid { cells }
    }
}

fn default_positive() -> String {
    "fire".into()
}

fn default_negative() -> String {
    "nofire".into()
}

fn default_resolutions() -> Vec<u32> {
    vec![10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 150, 200, 250]
}

fn default_models() -> Vec<ModelKind> {
    ModelKind::ALL.to_vec()
}

fn default_folds() -> usize {
    4
}

fn default_output() -> PathBuf {
    PathBuf::from("out")
}

fn default_budget() -> u64 {
    DEFAULT_CACHE_BUDGET
}

/// A complete experiment description, read from JSON.
///
/// Relative paths are resolved against the directory holding the config
/// file when loaded with [`ExperimentConfig::load`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub train_root: PathBuf,
    #[serde(default)]
    pub test_roots: BTreeMap<String, PathBuf>,
    #[serde(default = "default_positive")]
    pub positive_dir: String,
    #[serde(default = "default_negative")]
    pub negative_dir: String,
    #[serde(default = "default_resolutions")]
    pub resolutions: Vec<u32>,
    #[serde(default = "default_models")]
    pub models: Vec<ModelKind>,
    #[serde(default)]
    pub grids: GridSpec,
    #[serde(default = "default_folds")]
    pub folds: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub stratified: bool,
    #[serde(default)]
    pub augmentation: AugmentPlan,
    #[serde(default = "default_output")]
    pub output_dir: PathBuf,
    #[serde(default = "default_budget")]
    pub gram_cache_budget_bytes: u64,
    /// Thread count; `None` uses every core. `PYROCLASS_WORKERS` wins.
    #[serde(default)]
    pub workers: Option<usize>,
    #[serde(default)]
    pub solver: SolverSettings,
}

impl ExperimentConfig {
    /// A config with every optional field at its default.
    pub fn new(train_root: impl Into<PathBuf>) -> Self {
        serde_json::from_value(serde_json::json!({ "train_root": train_root.into() }))
            .expect("defaults deserialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::from_json(&text)?;
        if let Some(base) = path.parent() {
            cfg.rebase(base);
        }
        Ok(cfg)
    }

    fn rebase(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        fix(&mut self.train_root);
        fix(&mut self.output_dir);
        self.test_roots.values_mut().for_each(fix);
    }

    pub fn validate(&self) -> Result<()> {
        if self.resolutions.is_empty() {
            return Err(Error::Config("resolutions must not be empty".into()));
        }
        if self.resolutions.contains(&0) {
            return Err(Error::Config("resolutions must be >= 1".into()));
        }
        if self.folds < 2 {
            return Err(Error::Config(format!("folds must be >= 2, got {}", self.folds)));
        }
        if self.models.is_empty() {
            return Err(Error::Config("models must not be empty".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be >= 1".into()));
        }
        for name in self.test_roots.keys() {
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
                return Err(Error::Config(format!("test set name {name:?} must be [A-Za-z0-9_-]+")));
            }
        }
        self.augmentation.validate().map_err(|e| Error::Config(e.to_string()))
    }

    /// Sorted, de-duplicated resolutions.
    pub fn resolution_list(&self) -> Vec<u32> {
        let mut r = self.resolutions.clone();
        r.sort_unstable();
        r.dedup();
        r
    }

    /// Models in request order without repeats.
    pub fn model_list(&self) -> Vec<ModelKind> {
        let mut seen = Vec::new();
        for &m in &self.models {
            if !seen.contains(&m) {
                seen.push(m);
            }
        }
        seen
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn train_file(&self, resolution: u32) -> PathBuf {
        self.output_dir.join(format!("train_{resolution}.ffds"))
    }

    pub fn test_file(&self, name: &str, resolution: u32) -> PathBuf {
        self.output_dir.join(format!("test_{name}_{resolution}.ffds"))
    }

    /// Worker count after applying `PYROCLASS_WORKERS`.
    pub fn effective_workers(&self) -> Result<Option<usize>> {
        match std::env::var(WORKERS_ENV) {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(n) if n >= 1 => Ok(Some(n)),
                _ => Err(Error::Config(format!("{WORKERS_ENV} must be a positive integer, got {v:?}"))),
            },
            Err(_) => Ok(self.workers),
        }
    }
}

pub const WORKERS_ENV: &str = "PYROCLASS_WORKERS";
