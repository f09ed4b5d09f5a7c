//! Trains soft-margin SVMs with SMO on small problems and inspects the
//! solution.

use pyroclass::svm::{train_smo_full, SvmConfig};
use pyroclass::{KernelSpec, Label, LabeledDataset};

fn main() -> pyroclass::Result<()> {
    // Two points on a line: the dual has a closed-form answer.
    let ds = LabeledDataset::from_rows(&[vec![0.0], vec![1.0]], vec![Label::Negative, Label::Positive])?;
    let fit = train_smo_full(&ds, &SvmConfig::new(KernelSpec::Linear, 100.0))?;
    println!("alphas {:?}, bias {}", fit.alphas, fit.model.bias());
    println!("f(0.5) = {}", fit.model.decision(&[0.5])?);

    // XOR needs a non-linear kernel.
    let rows = vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0], vec![1.0, 0.0]];
    let labels = vec![Label::Negative, Label::Negative, Label::Positive, Label::Positive];
    let xor = LabeledDataset::from_rows(&rows, labels)?;
    for kernel in [KernelSpec::Linear, KernelSpec::Gaussian { gamma: 2.0 }] {
        let model = train_smo_full(&xor, &SvmConfig::new(kernel, 10.0))?.model;
        let correct = rows
            .iter()
            .zip(xor.labels())
            .filter(|(r, l)| model.predict(r).ok() == Some(**l))
            .count();
        let meta = model.meta();
        println!(
            "{kernel}: {correct}/4 correct, {} support vectors, {} iterations, converged {}",
            model.n_support(),
            meta.iterations,
            meta.converged
        );
    }
    Ok(())
}
