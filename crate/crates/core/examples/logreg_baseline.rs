//! Gradient-descent logistic regression on a noisy two-cluster problem.

use pyroclass::logreg::{loss_and_grad, train_gd, LogRegConfig};
use pyroclass::{Label, LabeledDataset};

fn main() -> pyroclass::Result<()> {
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for i in 0..200 {
        let t = i as f64 / 200.0;
        let wobble = (i as f64 * 12.9898).sin() * 0.3;
        if i % 2 == 0 {
            rows.push(vec![0.7 + wobble, 0.3 + t * 0.2]);
            labels.push(Label::Positive);
        } else {
            rows.push(vec![0.3 + wobble, 0.5 - t * 0.2]);
            labels.push(Label::Negative);
        }
    }
    let ds = LabeledDataset::from_rows(&rows, labels)?;
    let cfg = LogRegConfig::default();
    let model = train_gd(&ds, &cfg)?;
    let start = loss_and_grad(&[0.0, 0.0], 0.0, &ds, cfg.lambda)?.loss;
    let end = loss_and_grad(&model.weights, model.bias, &ds, cfg.lambda)?.loss;
    let correct = ds
        .rows()
        .zip(ds.labels())
        .filter(|(r, l)| model.predict(r).ok() == Some(**l))
        .count();
    println!("loss {start:.4} -> {end:.4}");
    println!("weights {:?}, bias {:.4}", model.weights, model.bias);
    println!("training accuracy {:.3}", correct as f64 / ds.n_samples() as f64);
    Ok(())
}
