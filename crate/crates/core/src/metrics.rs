//! Confusion-matrix metrics, ROC construction, and trapezoidal AUC.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dataset::Label;
use crate::error::{Error, Result};

/// A rate whose denominator may be zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Metric {
    Value(f64),
    Undefined,
}

impl Metric {
    fn ratio(num: u64, den: u64) -> Metric {
        if den == 0 {
            Metric::Undefined
        } else {
            Metric::Value(num as f64 / den as f64)
        }
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Metric::Value(v) => Some(v),
            Metric::Undefined => None,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Value(v) => write!(f, "{v:.6}"),
            Metric::Undefined => f.write_str("n/a"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
}

impl ConfusionMatrix {
    /// From the `[[TP, FP], [FN, TN]]` layout.
    pub fn from_layout(m: [[u64; 2]; 2]) -> Self {
        ConfusionMatrix {
            tp: m[0][0],
            fp: m[0][1],
            fn_: m[1][0],
            tn: m[1][1],
        }
    }

    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }

    pub fn scaled(&self, k: u64) -> Self {
        ConfusionMatrix {
            tp: self.tp * k,
            fp: self.fp * k,
            fn_: self.fn_ * k,
            tn: self.tn * k,
        }
    }
}

impl fmt::Display for ConfusionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.tp, self.fp, self.fn_, self.tn)
    }
}

pub fn confusion(labels: &[Label], predictions: &[Label]) -> Result<ConfusionMatrix> {
    if labels.len() != predictions.len() {
        return Err(Error::DimensionMismatch {
            expected: labels.len(),
            got: predictions.len(),
        });
    }
    if labels.is_empty() {
        return Err(Error::Empty("confusion matrix input"));
    }
    let mut cm = ConfusionMatrix::default();
    for (l, p) in labels.iter().zip(predictions) {
        match (l, p) {
            (Label::Positive, Label::Positive) => cm.tp += 1,
            (Label::Negative, Label::Positive) => cm.fp += 1,
            (Label::Positive, Label::Negative) => cm.fn_ += 1,
            (Label::Negative, Label::Negative) => cm.tn += 1,
        }
    }
    Ok(cm)
}

/// Like [`confusion`] but from raw `+1/-1` values.
pub fn confusion_from_signs(labels: &[i8], predictions: &[i8]) -> Result<ConfusionMatrix> {
    let conv = |v: &[i8]| v.iter().map(|&x| Label::try_from(x)).collect::<Result<Vec<_>>>();
    confusion(&conv(labels)?, &conv(predictions)?)
}

/// `(TP + TN) / total`
pub fn accuracy(cm: &ConfusionMatrix) -> Result<f64> {
    if cm.total() == 0 {
        return Err(Error::Empty("confusion matrix"));
    }
    Ok((cm.tp + cm.tn) as f64 / cm.total() as f64)
}

/// `TP / (TP + FN)`
pub fn tpr(cm: &ConfusionMatrix) -> Metric {
    Metric::ratio(cm.tp, cm.tp + cm.fn_)
}

/// `FP / (FP + TN)`
pub fn fpr(cm: &ConfusionMatrix) -> Metric {
    Metric::ratio(cm.fp, cm.fp + cm.tn)
}

/// `2TP / (2TP + FP + FN)`
pub fn f1(cm: &ConfusionMatrix) -> Metric {
    Metric::ratio(2 * cm.tp, 2 * cm.tp + cm.fp + cm.fn_)
}

/// `(fpr, tpr)` points from `(0, 0)` to `(1, 1)`, both coordinates
/// non-decreasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RocCurve {
    pub points: Vec<(f64, f64)>,
}

/// Threshold sweep: scores sorted descending, one point per distinct score.
pub fn roc_from_scores(labels: &[Label], scores: &[f64]) -> Result<RocCurve> {
    if labels.len() != scores.len() {
        return Err(Error::DimensionMismatch {
            expected: labels.len(),
            got: scores.len(),
        });
    }
    if scores.iter().any(|s| s.is_nan()) {
        return Err(Error::InvalidParameter("NaN score".into()));
    }
    let pos = labels.iter().filter(|&&l| l == Label::Positive).count();
    let neg = labels.len() - pos;
    if pos == 0 || neg == 0 {
        return Err(Error::SingleClass);
    }
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));

    let mut points = vec![(0.0, 0.0)];
    let (mut tp, mut fp) = (0usize, 0usize);
    let mut k = 0;
    while k < order.len() {
        let s = scores[order[k]];
        while k < order.len() && scores[order[k]] == s {
            match labels[order[k]] {
                Label::Positive => tp += 1,
                Label::Negative => fp += 1,
            }
            k += 1;
        }
        points.push((fp as f64 / neg as f64, tp as f64 / pos as f64));
    }
    if points.last() != Some(&(1.0, 1.0)) {
        points.push((1.0, 1.0));
    }
    Ok(RocCurve { points })
}

/// Curve through a set of operating points: sorted by fpr then tpr, with
/// tpr replaced by its running maximum.
pub fn roc_from_points(points: &[(f64, f64)]) -> Result<RocCurve> {
    for &(x, y) in points {
        if !((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y)) {
            return Err(Error::InvalidParameter(format!("ROC point ({x}, {y}) outside [0, 1]")));
        }
    }
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut out = Vec::with_capacity(sorted.len() + 2);
    out.push((0.0, 0.0));
    let mut best = 0.0f64;
    for (x, y) in sorted {
        best = best.max(y);
        out.push((x, best));
    }
    out.push((1.0, 1.0));
    Ok(RocCurve { points: out })
}

/// Trapezoidal area under the curve.
pub fn auc(curve: &RocCurve) -> f64 {
    curve
        .points
        .windows(2)
        .map(|w| (w[1].0 - w[0].0) * (w[0].1 + w[1].1) / 2.0)
        .sum()
}
