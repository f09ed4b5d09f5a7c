//! Confusion-matrix metrics, threshold and operating-point ROC curves,
//! and trapezoidal AUC.

use pyroclass::metrics::{accuracy, auc, f1, fpr, roc_from_points, roc_from_scores, tpr, ConfusionMatrix};
use pyroclass::Label::{Negative as N, Positive as P};

fn main() -> pyroclass::Result<()> {
    let cm = ConfusionMatrix::from_layout([[173, 17], [18, 172]]);
    println!("{cm}");
    println!(
        "accuracy {:.6}  tpr {}  fpr {}  f1 {}",
        accuracy(&cm)?,
        tpr(&cm),
        fpr(&cm),
        f1(&cm)
    );
    let no_negatives = ConfusionMatrix::from_layout([[5, 0], [2, 0]]);
    println!("{no_negatives}: fpr {}", fpr(&no_negatives));

    let labels = [P, N, P, N, P, P, N, N];
    let scores = [0.95, 0.9, 0.8, 0.6, 0.55, 0.4, 0.3, 0.1];
    let curve = roc_from_scores(&labels, &scores)?;
    println!("threshold sweep {:?}", curve.points);
    println!("auc {:.4}", auc(&curve));

    let points = [(0.09, 0.91), (0.08, 0.89), (0.12, 0.9)];
    let curve = roc_from_points(&points)?;
    println!("operating points {:?}", curve.points);
    println!("auc {:.4}", auc(&curve));
    Ok(())
}
