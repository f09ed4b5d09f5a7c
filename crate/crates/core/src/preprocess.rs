//! Resize, flip, and median-blur transforms plus the training-set
//! augmentation pipeline.

use serde::{Deserialize, Serialize};

use crate::dataset::{Label, RgbImage};
use crate::error::{Error, Result};

/// Bilinear resize with pixel-center sampling:
/// `src = (dst + 0.5) * (src_size / dst_size) - 0.5`, clamped to the image.
/// Results are rounded half-up to 8 bits.
pub fn resize_bilinear(img: &RgbImage, target_w: usize, target_h: usize) -> Result<RgbImage> {
    if target_w == 0 || target_h == 0 {
        return Err(Error::InvalidParameter(format!(
            "resize target must be >= 1, got {target_w}x{target_h}"
        )));
    }
    let xs = sample_axis(img.width(), target_w);
    let ys = sample_axis(img.height(), target_h);
    Ok(RgbImage::from_fn(target_w, target_h, |x, y| {
        let (x0, x1, tx) = xs[x];
        let (y0, y1, ty) = ys[y];
        let (p00, p10) = (img.get(x0, y0), img.get(x1, y0));
        let (p01, p11) = (img.get(x0, y1), img.get(x1, y1));
        let mut out = [0u8; 3];
        for c in 0..3 {
            let top = lerp(f64::from(p00[c]), f64::from(p10[c]), tx);
            let bottom = lerp(f64::from(p01[c]), f64::from(p11[c]), tx);
            let v = lerp(top, bottom, ty);
            out[c] = (v + 0.5).floor().clamp(0.0, 255.0) as u8;
        }
        out
    }))
}

fn lerp(a: f64, b: f64, t: f64) -> f64 {
    a + (b - a) * t
}

fn sample_axis(src: usize, dst: usize) -> Vec<(usize, usize, f64)> {
    let scale = src as f64 / dst as f64;
    let max = (src - 1) as f64;
    (0..dst)
        .map(|d| {
            let s = ((d as f64 + 0.5) * scale - 0.5).clamp(0.0, max);
            let i0 = s.floor() as usize;
            let i1 = (i0 + 1).min(src - 1);
            (i0, i1, s - i0 as f64)
        })
        .collect()
}

/// Mirrors the image left to right.
pub fn flip_horizontal(img: &RgbImage) -> RgbImage {
    let w = img.width();
    RgbImage::from_fn(w, img.height(), |x, y| img.get(w - 1 - x, y))
}

/// Per-channel median over a `window x window` neighborhood with
/// edge-replicated borders.
pub fn median_blur(img: &RgbImage, window: usize) -> Result<RgbImage> {
    check_window(window)?;
    let half = (window / 2) as isize;
    let (w, h) = (img.width() as isize, img.height() as isize);
    let mid = window * window / 2;
    let mut buf: [Vec<u8>; 3] = Default::default();
    Ok(RgbImage::from_fn(img.width(), img.height(), |x, y| {
        for b in buf.iter_mut() {
            b.clear();
        }
        for dy in -half..=half {
            let sy = (y as isize + dy).clamp(0, h - 1) as usize;
            for dx in -half..=half {
                let sx = (x as isize + dx).clamp(0, w - 1) as usize;
                let px = img.get(sx, sy);
                for c in 0..3 {
                    buf[c].push(px[c]);
                }
            }
        }
        let mut out = [0u8; 3];
        for c in 0..3 {
            out[c] = *buf[c].select_nth_unstable(mid).1;
        }
        out
    }))
}

fn check_window(window: usize) -> Result<()> {
    if window < 3 || window.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "median window must be odd and >= 3, got {window}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AugmentPlan {
    pub enable_flip: bool,
    pub enable_median_blur: bool,
    pub blur_window: usize,
}

impl Default for AugmentPlan {
    fn default() -> Self {
        AugmentPlan {
            enable_flip: true,
            enable_median_blur: true,
            blur_window: 3,
        }
    }
}

impl AugmentPlan {
    pub fn none() -> Self {
        AugmentPlan {
            enable_flip: false,
            enable_median_blur: false,
            blur_window: 3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_window(self.blur_window)
    }

    /// Number of output images per input image.
    pub fn multiplier(&self) -> usize {
        (1 + usize::from(self.enable_flip)) * (1 + usize::from(self.enable_median_blur))
    }
}

/// Expands each input into `[original, flipped, blurred(original), blurred(flipped)]`,
/// dropping the variants whose flag is off. Labels are copied unchanged.
pub fn augment(images: &[(RgbImage, Label)], plan: &AugmentPlan) -> Result<Vec<(RgbImage, Label)>> {
    plan.validate()?;
    let mut out = Vec::with_capacity(images.len() * plan.multiplier());
    for (img, label) in images {
        let mut variants = vec![img.clone()];
        if plan.enable_flip {
            variants.push(flip_horizontal(img));
        }
        if plan.enable_median_blur {
            let blurred = variants
                .iter()
                .map(|v| median_blur(v, plan.blur_window))
                .collect::<Result<Vec<_>>>()?;
            variants.extend(blurred);
        }
        out.extend(variants.into_iter().map(|v| (v, *label)));
    }
    Ok(out)
}
