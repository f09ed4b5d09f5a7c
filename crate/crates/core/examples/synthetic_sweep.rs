//! End-to-end run on a generated corpus: writes red-dominant "fire" and
//! green-dominant "nofire" images, then prepares, sweeps, and reports.
//!
//! ```text
//! cargo run --release --example synthetic_sweep [output-dir]
//! ```

use std::path::{Path, PathBuf};

use pyroclass::experiment::{self, ExperimentConfig, ModelKind};

fn write_class(dir: &Path, red: bool, count: u32, seed: u32) {
    std::fs::create_dir_all(dir).unwrap();
    let mut state = seed.wrapping_mul(2_654_435_761).max(1);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 17;
        state ^= state << 5;
        (state >> 24) as u8
    };
    for i in 0..count {
        let mut buf = Vec::new();
        for _ in 0..24 * 24 {
            let hi = 120 + next() / 2;
            let lo = next() / 2;
            let blue = next() / 3;
            buf.extend_from_slice(&if red { [hi, lo, blue] } else { [lo, hi, blue] });
        }
        image::save_buffer(dir.join(format!("{i:03}.png")), &buf, 24, 24, image::ExtendedColorType::Rgb8).unwrap();
    }
}

fn main() -> pyroclass::Result<()> {
    let root: PathBuf = std::env::args()
        .nth(1)
        .map_or_else(|| std::env::temp_dir().join("pyroclass-synthetic"), PathBuf::from);
    for (split, n, seed) in [("train", 60, 1), ("test", 30, 2)] {
        write_class(&root.join(split).join("fire"), true, n, seed);
        write_class(&root.join(split).join("nofire"), false, n, seed + 10);
    }

    let mut cfg = ExperimentConfig::new(root.join("train"));
    cfg.test_roots.insert("balanced".into(), root.join("test"));
    cfg.resolutions = vec![8, 16];
    cfg.models = ModelKind::ALL.to_vec();
    cfg.output_dir = root.join("out");

    let report = experiment::cmd_sweep(&cfg, true)?;
    for row in &report.rows {
        println!(
            "{:<13} {:>3}  acc {:.3}  {}  best {}",
            row.model.name(),
            row.resolution,
            row.eval.accuracy,
            row.eval.confusion,
            row.best_params
        );
    }
    let outputs = experiment::cmd_report(&report, &cfg.output_dir)?;
    println!("wrote {} and {} figures", outputs.csv.display(), outputs.svgs.len());
    Ok(())
}
