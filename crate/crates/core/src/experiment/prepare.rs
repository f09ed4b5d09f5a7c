use std::fs;
use std::path::PathBuf;

use rayon::prelude::*;

use crate::dataset::{ingest_directory, save_dataset, vectorize_all, Label, RgbImage};
use crate::error::{Error, Result};
use crate::preprocess::{augment, resize_bilinear, AugmentPlan};

use super::config::ExperimentConfig;

/// What `prepare` wrote.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreparedFile {
    pub path: PathBuf,
    pub resolution: u32,
    /// `None` for the training file.
    pub test_set: Option<String>,
    pub n_samples: usize,
    pub n_features: usize,
}

fn resized(images: &[(RgbImage, Label)], r: u32) -> Result<Vec<(RgbImage, Label)>> {
    images
        .par_iter()
        .map(|(img, label)| Ok((resize_bilinear(img, r as usize, r as usize)?, *label)))
        .collect()
}

/// Resize, augment, and vectorize `images` at resolution `r`.
pub fn training_set(
    images: &[(RgbImage, Label)],
    r: u32,
    plan: &AugmentPlan,
) -> Result<crate::dataset::LabeledDataset> {
    let small = resized(images, r)?;
    vectorize_all(&augment(&small, plan)?, r)
}

/// Resize and vectorize without augmentation.
pub fn test_set(images: &[(RgbImage, Label)], r: u32) -> Result<crate::dataset::LabeledDataset> {
    vectorize_all(&resized(images, r)?, r)
}

/// Writes `train_R.ffds` and `test_<name>_R.ffds` for every resolution.
///
/// All image trees are read before anything is written, so an ingestion
/// error leaves the output directory untouched.
pub fn cmd_prepare(cfg: &ExperimentConfig) -> Result<Vec<PreparedFile>> {
    cfg.validate()?;
    let train = ingest_directory(&cfg.train_root, &cfg.positive_dir, &cfg.negative_dir)?;
    let tests = cfg
        .test_roots
        .iter()
        .map(|(name, root)| Ok((name.clone(), ingest_directory(root, &cfg.positive_dir, &cfg.negative_dir)?)))
        .collect::<Result<Vec<_>>>()?;
    log::info!(
        "ingested {} training images ({} skipped), {} test sets",
        train.entries.len(),
        train.skipped,
        tests.len()
    );

    fs::create_dir_all(&cfg.output_dir).map_err(|e| Error::io(&cfg.output_dir, e))?;
    let train_images = train.labeled_images();
    let test_images: Vec<(String, Vec<(RgbImage, Label)>)> =
        tests.into_iter().map(|(n, t)| (n, t.labeled_images())).collect();

    let mut written = Vec::new();
    for r in cfg.resolution_list() {
        let ds = training_set(&train_images, r, &cfg.augmentation)?;
        let path = cfg.train_file(r);
        save_dataset(&ds, &path)?;
        written.push(PreparedFile {
            path,
            resolution: r,
            test_set: None,
            n_samples: ds.n_samples(),
            n_features: ds.n_features(),
        });
        for (name, images) in &test_images {
            let ds = test_set(images, r)?;
            let path = cfg.test_file(name, r);
            save_dataset(&ds, &path)?;
            written.push(PreparedFile {
                path,
                resolution: r,
                test_set: Some(name.clone()),
                n_samples: ds.n_samples(),
                n_features: ds.n_features(),
            });
        }
        log::info!("prepared resolution {r}");
    }
    Ok(written)
}
