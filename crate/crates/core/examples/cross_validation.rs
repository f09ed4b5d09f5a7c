//! K-fold cross-validation and grid search over SVM and logistic
//! regression cells.

use pyroclass::logreg::LogRegConfig;
use pyroclass::model_select::{grid_search, kfold_split, CellParams, ParamGrid};
use pyroclass::{KernelSpec, Label, LabeledDataset};

fn main() -> pyroclass::Result<()> {
    // Concentric rings: inside is positive.
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for i in 0..120 {
        let angle = i as f64 * 0.61;
        let r = if i % 2 == 0 { 0.2 } else { 0.8 } + 0.05 * (i as f64 * 1.7).sin();
        rows.push(vec![r * angle.cos(), r * angle.sin()]);
        labels.push(if i % 2 == 0 { Label::Positive } else { Label::Negative });
    }
    let ds = LabeledDataset::from_rows(&rows, labels)?;

    let plan = kfold_split(ds.n_samples(), 4, 11)?;
    println!("fold sizes {:?}", plan.fold_sizes());

    let mut cells = vec![CellParams::LogReg {
        config: LogRegConfig::default(),
    }];
    for kernel in [
        KernelSpec::Linear,
        KernelSpec::Polynomial { offset: 1.0, degree: 2 },
        KernelSpec::Gaussian { gamma: 1.0 },
    ] {
        for c in [0.1, 1.0, 10.0] {
            cells.push(CellParams::Svm { kernel, c });
        }
    }
    let result = grid_search(&ds, &ParamGrid { cells }, 4, 11)?;
    for row in &result.rows {
        let mean = row.cv.mean.map_or("n/a".into(), |m| format!("{m:.3}"));
        println!("{mean}  {}", row.params);
    }
    println!("best: {} ({:.3})", result.best_params(), result.best_mean());
    Ok(())
}
