//! Logistic regression trained by full-batch gradient descent on the mean
//! log-loss plus `lambda / 2 * |w|^2` (the bias is not regularized).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{Label, LabeledDataset};
use crate::error::{Error, Result};
use crate::kernels::dot;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LogRegConfig {
    pub learning_rate: f64,
    pub iterations: usize,
    pub lambda: f64,
}

impl Default for LogRegConfig {
    fn default() -> Self {
        LogRegConfig {
            learning_rate: 0.1,
            iterations: 2000,
            lambda: 1e-4,
        }
    }
}

impl LogRegConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::InvalidParameter("learning_rate must be finite and > 0".into()));
        }
        if self.iterations < 1 {
            return Err(Error::InvalidParameter("iterations must be >= 1".into()));
        }
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidParameter("lambda must be finite and >= 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogRegModel {
    pub weights: Vec<f64>,
    pub bias: f64,
}

pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `ln(1 + exp(-m))` without overflow.
fn log1p_exp_neg(m: f64) -> f64 {
    if m > 0.0 {
        (-m).exp().ln_1p()
    } else {
        -m + m.exp().ln_1p()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LossGrad {
    pub loss: f64,
    pub grad_w: Vec<f64>,
    pub grad_b: f64,
}

/// Regularized mean log-loss and its exact gradient.
pub fn loss_and_grad(weights: &[f64], bias: f64, ds: &LabeledDataset, lambda: f64) -> Result<LossGrad> {
    if weights.len() != ds.n_features() {
        return Err(Error::DimensionMismatch {
            expected: ds.n_features(),
            got: weights.len(),
        });
    }
    let n = ds.n_samples();
    if n == 0 {
        return Err(Error::Empty("logistic regression data"));
    }
    // Per-sample terms in parallel, reduced below in row order.
    let terms: Vec<(f64, f64)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let z = dot(weights, ds.row(i)) + bias;
            let y = ds.labels()[i];
            let t = if y == Label::Positive { 1.0 } else { 0.0 };
            (log1p_exp_neg(y.as_f64() * z), sigmoid(z) - t)
        })
        .collect();

    let mut loss = 0.0;
    let mut grad_w = vec![0.0; weights.len()];
    let mut grad_b = 0.0;
    for (i, &(l, r)) in terms.iter().enumerate() {
        loss += l;
        grad_b += r;
        for (g, x) in grad_w.iter_mut().zip(ds.row(i)) {
            *g += r * x;
        }
    }
    let inv_n = 1.0 / n as f64;
    loss = loss * inv_n + 0.5 * lambda * dot(weights, weights);
    for (g, w) in grad_w.iter_mut().zip(weights) {
        *g = *g * inv_n + lambda * w;
    }
    Ok(LossGrad {
        loss,
        grad_w,
        grad_b: grad_b * inv_n,
    })
}

/// Runs exactly `cfg.iterations` gradient steps from zero.
pub fn train_gd(ds: &LabeledDataset, cfg: &LogRegConfig) -> Result<LogRegModel> {
    cfg.validate()?;
    if ds.n_samples() == 0 {
        return Err(Error::Empty("training set"));
    }
    let mut w = vec![0.0; ds.n_features()];
    let mut b = 0.0;
    for iteration in 0..cfg.iterations {
        let lg = loss_and_grad(&w, b, ds, cfg.lambda)?;
        if !lg.loss.is_finite() {
            return Err(Error::NonFiniteLoss { iteration });
        }
        for (wi, g) in w.iter_mut().zip(&lg.grad_w) {
            *wi -= cfg.learning_rate * g;
        }
        b -= cfg.learning_rate * lg.grad_b;
    }
    if !(b.is_finite() && w.iter().all(|v| v.is_finite())) {
        return Err(Error::NonFiniteLoss {
            iteration: cfg.iterations,
        });
    }
    Ok(LogRegModel { weights: w, bias: b })
}

impl LogRegModel {
    pub fn zeros(d: usize) -> Self {
        LogRegModel {
            weights: vec![0.0; d],
            bias: 0.0,
        }
    }

    pub fn n_features(&self) -> usize {
        self.weights.len()
    }

    pub fn decision(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.weights.len() {
            return Err(Error::DimensionMismatch {
                expected: self.weights.len(),
                got: x.len(),
            });
        }
        Ok(dot(&self.weights, x) + self.bias)
    }

    pub fn predict_proba(&self, x: &[f64]) -> Result<f64> {
        Ok(sigmoid(self.decision(x)?))
    }

    /// `Positive` iff the probability is at least 0.5.
    pub fn predict(&self, x: &[f64]) -> Result<Label> {
        Ok(if self.predict_proba(x)? >= 0.5 {
            Label::Positive
        } else {
            Label::Negative
        })
    }
}
