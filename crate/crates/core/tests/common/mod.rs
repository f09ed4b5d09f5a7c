//! Independent reference implementations used by the integration tests.

#![allow(dead_code)]

pub mod tables;

use std::fs;
use std::path::Path;

use pyroclass::dataset::Label;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Direct kernel formulas, written out separately from the library.
pub fn kernel_value(kind: &pyroclass::KernelSpec, x: &[f64], y: &[f64]) -> f64 {
    use pyroclass::KernelSpec::*;
    let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    match *kind {
        Linear => dot,
        Polynomial { offset, degree } => (dot + offset).powi(degree as i32),
        Gaussian { gamma } => {
            let d2: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
            (-gamma * d2).exp()
        }
        Sigmoid { alpha, beta } => (alpha * dot + beta).tanh(),
    }
}

/// `Q_ij = y_i y_j K_ij`
pub fn q_matrix(kind: &pyroclass::KernelSpec, rows: &[Vec<f64>], y: &[f64]) -> Vec<Vec<f64>> {
    let n = rows.len();
    (0..n)
        .map(|i| (0..n).map(|j| y[i] * y[j] * kernel_value(kind, &rows[i], &rows[j])).collect())
        .collect()
}

pub fn dual_value(q: &[Vec<f64>], a: &[f64]) -> f64 {
    let n = a.len();
    let mut quad = 0.0;
    for i in 0..n {
        for j in 0..n {
            quad += a[i] * a[j] * q[i][j];
        }
    }
    a.iter().sum::<f64>() - 0.5 * quad
}

/// Euclidean projection onto `{0 <= a <= C, y . a = 0}` by bisection on
/// the multiplier of the equality constraint.
pub fn project(v: &[f64], y: &[f64], c: f64) -> Vec<f64> {
    let at = |lam: f64| -> Vec<f64> { v.iter().zip(y).map(|(vi, yi)| (vi - lam * yi).clamp(0.0, c)).collect() };
    let h = |a: &[f64]| -> f64 { a.iter().zip(y).map(|(ai, yi)| ai * yi).sum() };
    let span = v.iter().map(|x| x.abs()).fold(0.0, f64::max) + c + 1.0;
    let (mut lo, mut hi) = (-span, span);
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        if h(&at(mid)) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    at(0.5 * (lo + hi))
}

/// Projected-gradient ascent (accelerated, with restarts) on the dual,
/// from several starting points; returns the best objective found.
pub fn pg_dual_max(q: &[Vec<f64>], y: &[f64], c: f64, starts: usize, seed: u64) -> f64 {
    let n = y.len();
    let lip = q.iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max).max(1e-12);
    let step = 1.0 / lip;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::NEG_INFINITY;
    for s in 0..starts {
        let init: Vec<f64> = if s == 0 { vec![0.0; n] } else { (0..n).map(|_| rng.gen::<f64>() * c).collect() };
        let mut a = project(&init, y, c);
        let mut z = a.clone();
        let mut t = 1.0f64;
        let mut fa = dual_value(q, &a);
        let mut stalled = 0;
        for _ in 0..20000 {
            let grad: Vec<f64> = (0..n).map(|i| 1.0 - (0..n).map(|j| q[i][j] * z[j]).sum::<f64>()).collect();
            let v: Vec<f64> = (0..n).map(|i| z[i] + step * grad[i]).collect();
            let a_next = project(&v, y, c);
            let f_next = dual_value(q, &a_next);
            if f_next < fa {
                // restart momentum
                z = a.clone();
                t = 1.0;
                stalled += 1;
                if stalled >= 200 {
                    break;
                }
                continue;
            }
            stalled = if f_next - fa <= 1e-15 * fa.abs().max(1.0) { stalled + 1 } else { 0 };
            let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt());
            z = (0..n).map(|i| a_next[i] + (t - 1.0) / t_next * (a_next[i] - a[i])).collect();
            t = t_next;
            a = a_next;
            fa = f_next;
            if stalled >= 200 {
                break;
            }
        }
        best = best.max(fa);
    }
    best
}

/// Writes a synthetic fire / no-fire corpus: red-dominant noise for the
/// positive class, green-dominant for the negative class.
pub fn write_color_corpus(root: &Path, pos: &str, neg: &str, n_each: usize, size: u32, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (dir, red) in [(pos, true), (neg, false)] {
        let d = root.join(dir);
        fs::create_dir_all(&d).unwrap();
        for i in 0..n_each {
            let mut buf = Vec::with_capacity((size * size * 3) as usize);
            for _ in 0..size * size {
                let hi = rng.gen_range(120u8..=255);
                let lo1 = rng.gen_range(0u8..=140);
                let lo2 = rng.gen_range(0u8..=110);
                if red {
                    buf.extend_from_slice(&[hi, lo1, lo2]);
                } else {
                    buf.extend_from_slice(&[lo1, hi, lo2]);
                }
            }
            image::save_buffer(d.join(format!("img_{i:04}.png")), &buf, size, size, image::ExtendedColorType::Rgb8)
                .unwrap();
        }
    }
}

pub fn random_labels(rng: &mut ChaCha8Rng, n: usize) -> Vec<Label> {
    loop {
        let v: Vec<Label> = (0..n).map(|_| if rng.gen_bool(0.5) { Label::Positive } else { Label::Negative }).collect();
        if v.contains(&Label::Positive) && v.contains(&Label::Negative) {
            return v;
        }
    }
}

/// Mann-Whitney statistic: the probability that a random positive outscores
/// a random negative, ties counting one half.
pub fn rank_auc(labels: &[Label], scores: &[f64]) -> f64 {
    let mut wins = 0.0;
    let mut pairs = 0.0;
    for (i, li) in labels.iter().enumerate() {
        for (j, lj) in labels.iter().enumerate() {
            if *li == Label::Positive && *lj == Label::Negative {
                pairs += 1.0;
                if scores[i] > scores[j] {
                    wins += 1.0;
                } else if scores[i] == scores[j] {
                    wins += 0.5;
                }
            }
        }
    }
    wins / pairs
}
