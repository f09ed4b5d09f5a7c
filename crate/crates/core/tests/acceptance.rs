//! Acceptance suite. Each test covers one criterion and prints one
//! `PASS`/`FAIL` line per check plus a summary line for the criterion.
//!
//! Lines go straight to stderr so they show up without `--nocapture`.
//!
//! Checks listed in [`KNOWN_RED`] are expected to fail for reasons
//! documented in the README; they are reported but do not fail the run.

mod common;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, SymmetricEigen};
use pyroclass::dataset::{Label, LabeledDataset, RgbImage};
use pyroclass::experiment::{self, ExperimentConfig, ModelKind};
use pyroclass::kernels::{gram, RowMatrix};
use pyroclass::logreg::loss_and_grad;
use pyroclass::metrics::{self, auc, roc_from_scores, ConfusionMatrix};
use pyroclass::preprocess::{augment, flip_horizontal, median_blur, resize_bilinear, AugmentPlan};
use pyroclass::svm::{self, SvmConfig};
use pyroclass::KernelSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::tables::{CONFUSION_TABLES, RATE_TABLES};
use common::*;

const TABLE_TOL: f64 = 1e-6;
const TABLE_RUNTIME: Duration = Duration::from_secs(1);

const ORACLE_INSTANCES: usize = 240;
const ORACLE_REL_TOL: f64 = 1e-4;
const ORACLE_SMO_KKT_TOL: f64 = 1e-6;
const ORACLE_SIGMOID_STARTS: usize = 8;
const FEASIBILITY_BOX_SLACK: f64 = 1e-9;
const FEASIBILITY_EQ_FACTOR: f64 = 1e-6;
const ORACLE_RUNTIME: Duration = Duration::from_secs(30);

const TOY_TOL: f64 = 1e-6;

const GRAD_INSTANCES: usize = 120;
const GRAD_STEP: f64 = 1e-6;
const GRAD_REL_TOL: f64 = 1e-5;
const GRAD_RUNTIME: Duration = Duration::from_secs(5);

const PSD_GRAMS_PER_KERNEL: usize = 60;
const PSD_REL_TOL: f64 = 1e-8;

const SWEEP_GAUSSIAN_MIN: f64 = 0.95;
const SWEEP_LOGREG_MIN: f64 = 0.90;
const SWEEP_RUNTIME: Duration = Duration::from_secs(120);

const REFERENCE_GAUSSIAN_250: f64 = 0.918;
const REFERENCE_GAUSSIAN_BAND: f64 = 0.05;

/// Checks that fail by construction.
const KNOWN_RED: &[&str] = &[
    // Sigmoid Grams are indefinite; SMO stops at a KKT point that can sit
    // below the global maximum found by the multi-start oracle.
    "2: dual objective matches oracle (sigmoid)",
    // The listed points belong to a four-sample input; the three-sample
    // input has one negative and its exact AUC is 0.5.
    "7: three-sample curve AUC is 0.75",
];

macro_rules! say {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stderr(), $($t)*);
    }};
}

struct Criterion {
    id: u32,
    title: &'static str,
    checks: Vec<(String, bool, String)>,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Criterion {
            id,
            title,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.checks.push((format!("{}: {name}", self.id), ok, detail.into()));
    }

    fn runtime(&mut self, started: Instant, limit: Duration) {
        let took = started.elapsed();
        self.check(
            &format!("runtime under {limit:?}"),
            took < limit,
            format!("{:.2}s", took.as_secs_f64()),
        );
    }

    fn finish(self) {
        let mut unexpected = Vec::new();
        for (name, ok, detail) in &self.checks {
            let known = KNOWN_RED.contains(&name.as_str());
            let tag = match (ok, known) {
                (true, _) => "PASS",
                (false, true) => "FAIL (known)",
                (false, false) => "FAIL",
            };
            say!("  [{tag}] {name}  {detail}");
            if !ok && !known {
                unexpected.push(name.clone());
            }
        }
        let all = self.checks.iter().all(|c| c.1);
        say!(
            "criterion {} {}: {}",
            self.id,
            self.title,
            if all { "PASS" } else { "FAIL" }
        );
        assert!(unexpected.is_empty(), "unexpected failures: {unexpected:?}");
    }
}

fn cm_of(m: [[u64; 2]; 2]) -> ConfusionMatrix {
    ConfusionMatrix::from_layout(m)
}

#[test]
fn criterion_1_metric_reproduction() {
    let started = Instant::now();
    let mut c = Criterion::new(1, "metric reproduction");
    let mut worst = 0.0f64;
    let mut rows = 0;
    for (name, table) in &CONFUSION_TABLES {
        for &(res, acc, m) in table {
            let got = metrics::accuracy(&cm_of(m)).unwrap();
            let err = (got - acc).abs();
            worst = worst.max(err);
            rows += 1;
            if err > TABLE_TOL {
                say!("    accuracy mismatch: {name} {res}: {got} vs {acc}");
            }
        }
    }
    c.check(
        "accuracy column of every confusion table",
        worst <= TABLE_TOL,
        format!("{rows} rows, max err {worst:.2e}"),
    );

    let mut worst = 0.0f64;
    let mut rows = 0;
    for (t, (name, rates)) in RATE_TABLES.iter().enumerate() {
        let (_, cms) = &CONFUSION_TABLES[2 * t];
        for (&(res, tpr, fpr, f1), &(cm_res, _, m)) in rates.iter().zip(cms.iter()) {
            assert_eq!(res, cm_res);
            let cm = cm_of(m);
            for (what, got, want) in [
                ("tpr", metrics::tpr(&cm), tpr),
                ("fpr", metrics::fpr(&cm), fpr),
                ("f1", metrics::f1(&cm), f1),
            ] {
                let err = got.value().map_or(f64::INFINITY, |v| (v - want).abs());
                worst = worst.max(err);
                if err > TABLE_TOL {
                    say!("    {what} mismatch: {name} {res}: {got} vs {want}");
                }
            }
            rows += 1;
        }
    }
    c.check(
        "tpr/fpr/f1 of the balanced tables",
        worst <= TABLE_TOL,
        format!("{rows} rows, max err {worst:.2e}"),
    );
    c.runtime(started, TABLE_RUNTIME);
    c.finish();
}

fn random_kernel(rng: &mut ChaCha8Rng, which: usize, d: usize) -> KernelSpec {
    match which {
        0 => KernelSpec::Linear,
        1 => KernelSpec::Polynomial {
            offset: [0.0, 1.0][rng.gen_range(0..2)],
            degree: rng.gen_range(2..=4),
        },
        2 => KernelSpec::Gaussian {
            gamma: [1.0 / d as f64, 0.1, 1.0, 5.0][rng.gen_range(0..4)],
        },
        _ => KernelSpec::Sigmoid {
            alpha: [1.0 / d as f64, 0.01, 0.5, 1.0][rng.gen_range(0..4)],
            beta: [0.0, -1.0][rng.gen_range(0..2)],
        },
    }
}

#[test]
fn criterion_2_dual_solver_oracle() {
    let started = Instant::now();
    let mut c = Criterion::new(2, "dual solver vs projected-gradient oracle");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let names = ["linear", "polynomial", "gaussian", "sigmoid"];
    let mut worst = [0.0f64; 4];
    let mut misses = [0usize; 4];
    let mut counts = [0usize; 4];
    let mut box_ok = true;
    let mut eq_ok = true;
    let mut kkt_ok = true;
    let mut converged = 0;
    for inst in 0..ORACLE_INSTANCES {
        let which = inst % 4;
        let n = rng.gen_range(2..=8);
        let d = rng.gen_range(1..=3);
        let rows: Vec<Vec<f64>> = (0..n).map(|_| (0..d).map(|_| rng.gen::<f64>()).collect()).collect();
        let labels = random_labels(&mut rng, n);
        let cbox = if rng.gen_bool(0.5) { 0.5 } else { 10.0 };
        let kernel = random_kernel(&mut rng, which, d);

        let ds = LabeledDataset::from_rows(&rows, labels.clone()).unwrap();
        let mut cfg = SvmConfig::new(kernel, cbox);
        cfg.kkt_tol = ORACLE_SMO_KKT_TOL;
        let fit = svm::train_smo_full(&ds, &cfg).unwrap();
        let y: Vec<f64> = labels.iter().map(|l| l.as_f64()).collect();
        let q = q_matrix(&kernel, &rows, &y);
        let w_smo = dual_value(&q, &fit.alphas);
        let starts = if which == 3 { ORACLE_SIGMOID_STARTS } else { 1 };
        let w_oracle = pg_dual_max(&q, &y, cbox, starts, inst as u64);
        let rel = (w_smo - w_oracle).abs() / w_oracle.abs().max(f64::MIN_POSITIVE);
        counts[which] += 1;
        worst[which] = worst[which].max(rel);
        if rel > ORACLE_REL_TOL {
            misses[which] += 1;
        }

        box_ok &= fit.alphas.iter().all(|&a| (0.0..=cbox + FEASIBILITY_BOX_SLACK).contains(&a));
        let eq: f64 = fit.alphas.iter().zip(&y).map(|(a, y)| a * y).sum();
        eq_ok &= eq.abs() <= FEASIBILITY_EQ_FACTOR * cbox * n as f64;

        if fit.model.meta().converged {
            converged += 1;
            for (i, row) in rows.iter().enumerate() {
                let margin = y[i] * fit.model.decision(row).unwrap();
                let a = fit.alphas[i];
                let tol = ORACLE_SMO_KKT_TOL;
                let ok = if a <= svm::SUPPORT_THRESHOLD {
                    margin >= 1.0 - tol
                } else if a >= cbox - svm::SUPPORT_THRESHOLD {
                    margin <= 1.0 + tol
                } else {
                    (margin - 1.0).abs() <= tol
                };
                kkt_ok &= ok;
            }
        }
    }
    for k in 0..4 {
        c.check(
            &format!("dual objective matches oracle ({})", names[k]),
            misses[k] == 0,
            format!(
                "{} instances, {} beyond {ORACLE_REL_TOL:e}, worst rel {:.2e}",
                counts[k], misses[k], worst[k]
            ),
        );
    }
    c.check("box constraints", box_ok, "");
    c.check("equality constraint", eq_ok, "");
    c.check(
        "per-point KKT conditions at convergence",
        kkt_ok,
        format!("{converged}/{ORACLE_INSTANCES} converged"),
    );
    c.runtime(started, ORACLE_RUNTIME);
    c.finish();
}

#[test]
fn criterion_3_analytic_toy() {
    let mut c = Criterion::new(3, "analytic two-point QP");
    let ds = LabeledDataset::from_rows(&[vec![0.0], vec![1.0]], vec![Label::Negative, Label::Positive]).unwrap();
    let fit = svm::train_smo_full(&ds, &SvmConfig::new(KernelSpec::Linear, 100.0)).unwrap();
    c.check(
        "alpha = (2, 2)",
        fit.alphas.iter().all(|a| (a - 2.0).abs() <= TOY_TOL),
        format!("{:?}", fit.alphas),
    );
    c.check(
        "bias = -1",
        (fit.model.bias() + 1.0).abs() <= TOY_TOL,
        format!("{}", fit.model.bias()),
    );
    let d = fit.model.decision(&[0.5]).unwrap();
    c.check("decision(0.5) = 0", d.abs() <= TOY_TOL, format!("{d:e}"));
    c.finish();
}

#[test]
fn criterion_4_gradient_check() {
    let started = Instant::now();
    let mut c = Criterion::new(4, "logistic gradient vs finite differences");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut worst = 0.0f64;
    for _ in 0..GRAD_INSTANCES {
        let n = rng.gen_range(2..=12);
        let d = rng.gen_range(1..=6);
        let rows: Vec<Vec<f64>> = (0..n).map(|_| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        let labels: Vec<Label> = (0..n)
            .map(|_| if rng.gen_bool(0.5) { Label::Positive } else { Label::Negative })
            .collect();
        let ds = LabeledDataset::from_rows(&rows, labels).unwrap();
        let w: Vec<f64> = (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let b = rng.gen_range(-1.0..1.0);
        let lambda = [0.0, 1e-4, 0.1][rng.gen_range(0..3)];
        let g = loss_and_grad(&w, b, &ds, lambda).unwrap();

        let loss = |w: &[f64], b: f64| loss_and_grad(w, b, &ds, lambda).unwrap().loss;
        let mut analytic = g.grad_w.clone();
        analytic.push(g.grad_b);
        let mut numeric = Vec::with_capacity(d + 1);
        for j in 0..d {
            let (mut wp, mut wm) = (w.clone(), w.clone());
            wp[j] += GRAD_STEP;
            wm[j] -= GRAD_STEP;
            numeric.push((loss(&wp, b) - loss(&wm, b)) / (2.0 * GRAD_STEP));
        }
        numeric.push((loss(&w, b + GRAD_STEP) - loss(&w, b - GRAD_STEP)) / (2.0 * GRAD_STEP));

        let diff: f64 = analytic.iter().zip(&numeric).map(|(a, n)| (a - n).powi(2)).sum::<f64>().sqrt();
        let scale = analytic
            .iter()
            .map(|a| a * a)
            .sum::<f64>()
            .sqrt()
            .max(numeric.iter().map(|a| a * a).sum::<f64>().sqrt())
            .max(1e-8);
        worst = worst.max(diff / scale);
    }
    c.check(
        "relative gradient error",
        worst < GRAD_REL_TOL,
        format!("{GRAD_INSTANCES} instances, worst {worst:.2e}"),
    );
    c.runtime(started, GRAD_RUNTIME);
    c.finish();
}

#[test]
fn criterion_5_kernel_properties() {
    let mut c = Criterion::new(5, "kernel properties");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut symmetric = true;
    for which in 0..4 {
        for _ in 0..20 {
            let d = rng.gen_range(1..=6);
            let k = random_kernel(&mut rng, which, d);
            let x: Vec<f64> = (0..d).map(|_| rng.gen()).collect();
            let y: Vec<f64> = (0..d).map(|_| rng.gen()).collect();
            symmetric &= k.eval(&x, &y).unwrap().to_bits() == k.eval(&y, &x).unwrap().to_bits();
            let data: Vec<f64> = (0..8 * d).map(|_| rng.gen()).collect();
            let g = gram(&k, RowMatrix::new(&data, d).unwrap()).unwrap();
            for i in 0..8 {
                for j in 0..8 {
                    symmetric &= g.get(i, j).to_bits() == g.get(j, i).to_bits();
                }
            }
        }
    }
    c.check("symmetry is bit-exact (pairs and Grams)", symmetric, "");

    for which in 0..3 {
        let mut worst = f64::INFINITY;
        let mut ok = true;
        for _ in 0..PSD_GRAMS_PER_KERNEL {
            let d = rng.gen_range(1..=5);
            let k = random_kernel(&mut rng, which, d);
            let data: Vec<f64> = (0..10 * d).map(|_| rng.gen()).collect();
            let g = gram(&k, RowMatrix::new(&data, d).unwrap()).unwrap();
            let m = DMatrix::from_fn(10, 10, |i, j| g.get(i, j));
            let trace = m.trace();
            let min = SymmetricEigen::new(m).eigenvalues.min();
            ok &= min >= -PSD_REL_TOL * trace;
            worst = worst.min(min / trace.max(f64::MIN_POSITIVE));
        }
        let name = ["linear", "polynomial", "gaussian"][which];
        c.check(
            &format!("Gram PSD ({name})"),
            ok,
            format!("{PSD_GRAMS_PER_KERNEL} Grams, min eig/trace {worst:.2e}"),
        );
    }
    c.finish();
}

fn random_image(rng: &mut ChaCha8Rng, w: usize, h: usize) -> RgbImage {
    RgbImage::from_fn(w, h, |_, _| [rng.gen(), rng.gen(), rng.gen()])
}

#[test]
fn criterion_6_preprocessing_properties() {
    let mut c = Criterion::new(6, "preprocessing properties");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut flip = true;
    let mut identity = true;
    let mut const_resize = true;
    let mut const_blur = true;
    for _ in 0..50 {
        let (w, h) = (rng.gen_range(1..20), rng.gen_range(1..20));
        let img = random_image(&mut rng, w, h);
        flip &= flip_horizontal(&flip_horizontal(&img)) == img;
        identity &= resize_bilinear(&img, w, h).unwrap() == img;
        let color = [rng.gen(), rng.gen(), rng.gen()];
        let flat = RgbImage::filled(w, h, color);
        let (tw, th) = (rng.gen_range(1..30), rng.gen_range(1..30));
        const_resize &= resize_bilinear(&flat, tw, th).unwrap() == RgbImage::filled(tw, th, color);
        let window = [3, 5, 7][rng.gen_range(0..3)];
        const_blur &= median_blur(&flat, window).unwrap() == flat;
    }
    c.check("flip is an involution", flip, "");
    c.check("same-size resize is the identity", identity, "");
    c.check("constant image fixed under resize", const_resize, "");
    c.check("constant image fixed under median blur", const_blur, "");

    let n = 13;
    let images: Vec<(RgbImage, Label)> = (0..n)
        .map(|i| {
            let label = if i % 3 == 0 { Label::Positive } else { Label::Negative };
            (random_image(&mut rng, 6, 5), label)
        })
        .collect();
    let out = augment(&images, &AugmentPlan::default()).unwrap();
    c.check("augmentation yields 4N", out.len() == 4 * n, format!("{} from {n}", out.len()));
    let labels_kept = out
        .chunks(4)
        .zip(&images)
        .all(|(group, (_, l))| group.iter().all(|(_, gl)| gl == l));
    c.check("augmentation preserves labels", labels_kept, "");
    c.finish();
}

#[test]
fn criterion_7_roc_auc_properties() {
    use Label::{Negative as N, Positive as P};
    let mut c = Criterion::new(7, "ROC / AUC properties");

    let perfect = auc(&roc_from_scores(&[P, P, N, N], &[0.9, 0.8, 0.3, 0.1]).unwrap());
    c.check("perfect ranking gives AUC 1", perfect == 1.0, format!("{perfect}"));
    let ties = auc(&roc_from_scores(&[P, N, P, N, N], &[0.4; 5]).unwrap());
    c.check("all-equal scores give AUC 0.5", ties == 0.5, format!("{ties}"));

    let three = roc_from_scores(&[P, N, P], &[0.9, 0.8, 0.1]).unwrap();
    let three_auc = auc(&three);
    c.check(
        "three-sample curve AUC is 0.75",
        three_auc == 0.75,
        format!("got {three_auc} from points {:?}", three.points),
    );
    let four = roc_from_scores(&[P, N, P, N], &[0.9, 0.8, 0.7, 0.1]).unwrap();
    c.check(
        "four-sample curve matches hand enumeration, AUC 0.75",
        four.points == [(0.0, 0.0), (0.0, 0.5), (0.5, 0.5), (0.5, 1.0), (1.0, 1.0)] && auc(&four) == 0.75,
        format!("{:?}", four.points),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut monotone = true;
    let mut endpoints = true;
    let mut in_range = true;
    for _ in 0..200 {
        let n = rng.gen_range(2..40);
        let labels = random_labels(&mut rng, n);
        let scores: Vec<f64> = (0..n).map(|_| (rng.gen_range(0..10) as f64) / 10.0).collect();
        let curve = roc_from_scores(&labels, &scores).unwrap();
        monotone &= curve.points.windows(2).all(|w| w[1].0 >= w[0].0 && w[1].1 >= w[0].1);
        endpoints &= curve.points.first() == Some(&(0.0, 0.0)) && curve.points.last() == Some(&(1.0, 1.0));
        let a = auc(&curve);
        let oracle = rank_auc(&labels, &scores);
        in_range &= (0.0..=1.0).contains(&a) && (a - oracle).abs() < 1e-12;
    }
    c.check("curves are monotone", monotone, "200 random score vectors");
    c.check("curves start at (0,0) and end at (1,1)", endpoints, "");
    c.check("AUC equals the rank statistic", in_range, "");
    c.finish();
}

fn write_config(dir: &Path, out: &str, seed: u64) -> std::path::PathBuf {
    let cfg = serde_json::json!({
        "train_root": "train",
        "test_roots": { "heldout": "heldout" },
        "resolutions": [10, 30],
        "models": ["logreg", "svm-sigmoid", "svm-poly", "svm-gaussian"],
        "seed": seed,
        "output_dir": out,
    });
    let path = dir.join(format!("{out}.json"));
    fs::write(&path, serde_json::to_string_pretty(&cfg).unwrap()).unwrap();
    path
}

#[test]
fn criterion_8_end_to_end_synthetic_sweep() {
    let started = Instant::now();
    let mut c = Criterion::new(8, "end-to-end synthetic sweep");
    let dir = tempfile::tempdir().unwrap();
    write_color_corpus(&dir.path().join("train"), "fire", "nofire", 100, 32, 8001);
    write_color_corpus(&dir.path().join("heldout"), "fire", "nofire", 50, 32, 8002);

    let mut csvs = Vec::new();
    let mut last = None;
    for out in ["run_a", "run_b"] {
        let cfg = ExperimentConfig::load(write_config(dir.path(), out, 42)).unwrap();
        let report = experiment::cmd_sweep(&cfg, true).unwrap();
        let outputs = experiment::cmd_report(&report, &cfg.output_dir).unwrap();
        csvs.push(fs::read(&outputs.csv).unwrap());
        last = Some(report);
    }
    let report = last.unwrap();
    c.check(
        "one row per model, resolution and test set",
        report.rows.len() == 8 && report.failures.is_empty(),
        format!("{} rows, {} failures", report.rows.len(), report.failures.len()),
    );
    for (model, min) in [(ModelKind::SvmGaussian, SWEEP_GAUSSIAN_MIN), (ModelKind::LogReg, SWEEP_LOGREG_MIN)] {
        let accs: Vec<f64> = report
            .rows
            .iter()
            .filter(|r| r.model == model)
            .map(|r| r.eval.accuracy)
            .collect();
        c.check(
            &format!("{model} held-out accuracy >= {min}"),
            accs.len() == 2 && accs.iter().all(|&a| a >= min),
            format!("{accs:?}"),
        );
    }
    c.check("reruns give byte-identical CSV", csvs[0] == csvs[1], "");
    c.runtime(started, SWEEP_RUNTIME);
    c.finish();
}

/// Runs only when `PYROCLASS_REAL_DATA_CONFIG` names a config for the real
/// image folders (with a `balanced` test set). Never fails.
#[test]
fn criterion_9_real_data_optional() {
    let Ok(path) = std::env::var("PYROCLASS_REAL_DATA_CONFIG") else {
        say!("criterion 9 real-data reproduction: SKIP (PYROCLASS_REAL_DATA_CONFIG unset)");
        return;
    };
    let mut cfg = match ExperimentConfig::load(&path) {
        Ok(cfg) => cfg,
        Err(e) => {
            say!("criterion 9 real-data reproduction: SKIP ({e})");
            return;
        }
    };
    cfg.resolutions = vec![250];
    cfg.models = ModelKind::ALL.to_vec();
    let report = match experiment::cmd_sweep(&cfg, true) {
        Ok(r) => r,
        Err(e) => {
            say!("criterion 9 real-data reproduction: FAIL ({e}) [not gating]");
            return;
        }
    };
    let acc = |m: ModelKind| {
        report
            .rows
            .iter()
            .find(|r| r.model == m && r.test_set == "balanced")
            .map(|r| r.eval.accuracy)
    };
    let accs: Vec<Option<f64>> = [ModelKind::SvmSigmoid, ModelKind::LogReg, ModelKind::SvmPoly, ModelKind::SvmGaussian]
        .into_iter()
        .map(acc)
        .collect();
    let band = accs[3].is_some_and(|a| (a - REFERENCE_GAUSSIAN_250).abs() <= REFERENCE_GAUSSIAN_BAND);
    let ordered = accs.iter().all(Option::is_some) && accs.windows(2).all(|w| w[0] < w[1]);
    say!(
        "  [{}] 9: gaussian balanced accuracy at 250 within {REFERENCE_GAUSSIAN_BAND} of {REFERENCE_GAUSSIAN_250}  {:?}",
        if band { "PASS" } else { "FAIL" },
        accs[3]
    );
    say!(
        "  [{}] 9: sigmoid < logreg < poly < gaussian  {accs:?}",
        if ordered { "PASS" } else { "FAIL" }
    );
    say!(
        "criterion 9 real-data reproduction: {} [not gating]",
        if band && ordered { "PASS" } else { "FAIL" }
    );
}
