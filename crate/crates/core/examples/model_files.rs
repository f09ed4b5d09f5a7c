//! Saving and loading trained models and FFDS datasets.

use pyroclass::dataset::{load_dataset, save_dataset};
use pyroclass::model_io::{load_model, save_model, Model};
use pyroclass::svm::train_smo;
use pyroclass::{KernelSpec, Label, LabeledDataset, SvmConfig};

fn main() -> pyroclass::Result<()> {
    let dir = std::env::temp_dir().join(format!("pyroclass-model-files-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| pyroclass::Error::Config(e.to_string()))?;

    let ds = LabeledDataset::from_rows(
        &[vec![0.1, 0.9], vec![0.2, 0.8], vec![0.9, 0.1], vec![0.8, 0.3]],
        vec![Label::Positive, Label::Positive, Label::Negative, Label::Negative],
    )?;
    let data_path = dir.join("toy.ffds");
    save_dataset(&ds, &data_path)?;
    let reloaded = load_dataset(&data_path)?;
    println!("dataset {} x {} round-trips: {}", reloaded.n_samples(), reloaded.n_features(), reloaded == ds);

    let model = Model::Svm(train_smo(&ds, &SvmConfig::new(KernelSpec::Gaussian { gamma: 0.5 }, 1.0))?);
    let model_path = dir.join("toy.svmm");
    save_model(&model, &model_path)?;
    let back = load_model(&model_path)?;
    println!("model round-trips: {}", back == model);
    println!("decision at (0.15, 0.85): {:.4}", back.decision(&[0.15, 0.85])?);

    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}
