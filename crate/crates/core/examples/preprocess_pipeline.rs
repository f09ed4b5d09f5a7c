//! Resize, flip, median blur, augmentation, and vectorization of an image.

use pyroclass::dataset::{vectorize, vectorize_all};
use pyroclass::preprocess::{augment, flip_horizontal, median_blur, resize_bilinear, AugmentPlan};
use pyroclass::{Label, RgbImage};

fn main() -> pyroclass::Result<()> {
    let img = RgbImage::from_fn(16, 12, |x, y| [(x * 16) as u8, (y * 20) as u8, if (x + y) % 7 == 0 { 255 } else { 0 }]);
    let small = resize_bilinear(&img, 4, 4)?;
    println!("resized {}x{} -> {}x{}", img.width(), img.height(), small.width(), small.height());
    println!("first row {:?}", &small.pixels()[..4]);
    println!("flipped first row {:?}", &flip_horizontal(&small).pixels()[..4]);
    println!("blurred first row {:?}", &median_blur(&small, 3)?.pixels()[..4]);

    let features = vectorize(&small);
    println!("{} features, first three {:?}", features.len(), &features[..3]);

    let batch = vec![(small.clone(), Label::Positive), (small, Label::Negative)];
    let augmented = augment(&batch, &AugmentPlan::default())?;
    let ds = vectorize_all(&augmented, 4)?;
    println!("{} images -> {} rows of {} features", batch.len(), ds.n_samples(), ds.n_features());
    Ok(())
}
