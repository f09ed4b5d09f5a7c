//! Kernel SVM and logistic-regression image classification.
//!
//! The pipeline decodes class-labeled image folders, resizes and augments
//! training images, flattens them into RGB feature rows, and fits four
//! model families (logistic regression and SVMs with sigmoid, polynomial,
//! and Gaussian kernels) with k-fold grid search. Evaluation produces
//! confusion matrices, TPR/FPR/F1, ROC curves, and AUC, reported as CSV
//! and SVG across a sweep of input resolutions.
//!
//! See the crate's `examples/` directory for one runnable program per
//! capability, and the `pyroclass` binary for the experiment commands.

pub mod dataset;
pub mod error;
pub mod experiment;
pub mod kernels;
pub mod logreg;
pub mod metrics;
pub mod model_io;
pub mod model_select;
pub mod preprocess;
pub mod svm;

pub use dataset::{Label, LabeledDataset, RgbImage};
pub use error::{Error, Result};
pub use kernels::KernelSpec;
pub use svm::{SvmConfig, SvmModel};
