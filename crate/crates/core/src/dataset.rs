//! Image decoding, directory ingestion, vectorization, and the FFDS
//! binary dataset format.
//!
//! FFDS layout (little-endian, no padding):
//!
//! ```text
//! magic        4 bytes  "FFDS"
//! version      u32      1
//! n_samples    u64
//! n_features   u64
//! resolution   u32      0 when rows are not square-image derived
//! labels       n_samples x i8, each +1 or -1
//! features     n_samples * n_features x f64, row-major
//! ```

use std::fs;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use image::{ImageError, ImageReader};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const FFDS_MAGIC: [u8; 4] = *b"FFDS";
pub const FFDS_VERSION: u32 = 1;

/// Class label. `Positive` is the fire class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Positive,
    Negative,
}

impl Label {
    pub fn from_sign(v: f64) -> Label {
        if v >= 0.0 {
            Label::Positive
        } else {
            Label::Negative
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Label::Positive => 1,
            Label::Negative => -1,
        }
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.as_i8())
    }
}

impl TryFrom<i8> for Label {
    type Error = Error;

    fn try_from(v: i8) -> Result<Label> {
        match v {
            1 => Ok(Label::Positive),
            -1 => Ok(Label::Negative),
            other => Err(Error::InvalidLabel(i64::from(other))),
        }
    }
}

/// A width x height grid of 8-bit RGB pixels, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    width: usize,
    height: usize,
    pixels: Vec<[u8; 3]>,
}

impl RgbImage {
    pub fn new(width: usize, height: usize, pixels: Vec<[u8; 3]>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter(format!(
                "image dimensions must be >= 1, got {width}x{height}"
            )));
        }
        if pixels.len() != width * height {
            return Err(Error::DimensionMismatch {
                expected: width * height,
                got: pixels.len(),
            });
        }
        Ok(RgbImage {
            width,
            height,
            pixels,
        })
    }

    /// Builds an image from a per-pixel function `f(x, y)`.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> [u8; 3]) -> Self {
        assert!(width >= 1 && height >= 1, "image dimensions must be >= 1");
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        RgbImage {
            width,
            height,
            pixels,
        }
    }

    pub fn filled(width: usize, height: usize, color: [u8; 3]) -> Self {
        Self::from_fn(width, height, |_, _| color)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> [u8; 3] {
        self.pixels[y * self.width + x]
    }
}

/// Row-major feature matrix with one label per row.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LabeledDataset {
    features: Vec<f64>,
    n_features: usize,
    labels: Vec<Label>,
    pub feature_names: Option<Vec<String>>,
    /// Square side length the rows were produced at, 0 if not image-derived.
    pub resolution: u32,
}

impl LabeledDataset {
    pub fn new(features: Vec<f64>, n_features: usize, labels: Vec<Label>) -> Result<Self> {
        if features.len() != labels.len() * n_features {
            return Err(Error::DimensionMismatch {
                expected: labels.len() * n_features,
                got: features.len(),
            });
        }
        Ok(LabeledDataset {
            features,
            n_features,
            labels,
            feature_names: None,
            resolution: 0,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>], labels: Vec<Label>) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                got: rows.len(),
            });
        }
        let d = rows.first().map_or(0, Vec::len);
        let mut features = Vec::with_capacity(rows.len() * d);
        for row in rows {
            if row.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: row.len(),
                });
            }
            features.extend_from_slice(row);
        }
        Self::new(features, d, labels)
    }

    pub fn with_resolution(mut self, resolution: u32) -> Self {
        self.resolution = resolution;
        self
    }

    pub fn n_samples(&self) -> usize {
        self.labels.len()
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn features(&self) -> &[f64] {
        &self.features
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.n_features..(i + 1) * self.n_features]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> + '_ {
        (0..self.n_samples()).map(move |i| self.row(i))
    }

    pub fn count(&self, label: Label) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    pub fn has_both_classes(&self) -> bool {
        self.count(Label::Positive) > 0 && self.count(Label::Negative) > 0
    }

    /// Copies the given rows, in the given order, into a new dataset.
    pub fn select(&self, indices: &[usize]) -> LabeledDataset {
        let mut features = Vec::with_capacity(indices.len() * self.n_features);
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            features.extend_from_slice(self.row(i));
            labels.push(self.labels[i]);
        }
        LabeledDataset {
            features,
            n_features: self.n_features,
            labels,
            feature_names: self.feature_names.clone(),
            resolution: self.resolution,
        }
    }
}

/// Decodes a PNG or JPEG file into RGB. Grayscale is replicated across
/// channels and alpha is composited over black.
pub fn load_image(path: impl AsRef<Path>) -> Result<RgbImage> {
    let path = path.as_ref();
    let reader = ImageReader::open(path)
        .map_err(|e| Error::io(path, e))?
        .with_guessed_format()
        .map_err(|e| Error::io(path, e))?;
    match reader.format() {
        Some(image::ImageFormat::Png) | Some(image::ImageFormat::Jpeg) => {}
        _ => {
            return Err(Error::UnsupportedFormat {
                path: path.to_path_buf(),
            })
        }
    }
    let decoded = reader.decode().map_err(|e| match e {
        ImageError::Unsupported(_) => Error::UnsupportedFormat {
            path: path.to_path_buf(),
        },
        other => Error::CorruptImage {
            path: path.to_path_buf(),
            reason: other.to_string(),
        },
    })?;
    let rgba = decoded.to_rgba8();
    let (w, h) = (rgba.width() as usize, rgba.height() as usize);
    let pixels = rgba
        .pixels()
        .map(|p| {
            let [r, g, b, a] = p.0;
            [over_black(r, a), over_black(g, a), over_black(b, a)]
        })
        .collect();
    RgbImage::new(w, h, pixels)
}

/// `round_half_up(c * a / 255)`.
fn over_black(c: u8, a: u8) -> u8 {
    let num = 2 * u32::from(c) * u32::from(a) + 255;
    (num / 510) as u8
}

fn is_image_path(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .map(|e| matches!(e.to_ascii_lowercase().as_str(), "png" | "jpg" | "jpeg"))
        .unwrap_or(false)
}

/// One decoded image and where it came from.
#[derive(Debug, Clone)]
pub struct IngestedImage {
    pub path: PathBuf,
    pub image: RgbImage,
    pub label: Label,
}

#[derive(Debug, Clone)]
pub struct Ingested {
    /// Sorted by file path.
    pub entries: Vec<IngestedImage>,
    /// Files skipped because their extension is not png/jpg/jpeg.
    pub skipped: usize,
}

impl Ingested {
    pub fn labeled_images(&self) -> Vec<(RgbImage, Label)> {
        self.entries
            .iter()
            .map(|e| (e.image.clone(), e.label))
            .collect()
    }
}

fn list_images(dir: &Path) -> Result<(Vec<PathBuf>, usize)> {
    if !dir.is_dir() {
        return Err(Error::MissingDirectory(dir.to_path_buf()));
    }
    let mut images = Vec::new();
    let mut skipped = 0;
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        if !path.is_file() {
            continue;
        }
        if is_image_path(&path) {
            images.push(path);
        } else {
            skipped += 1;
        }
    }
    if images.is_empty() {
        return Err(Error::NoImages(dir.to_path_buf()));
    }
    Ok((images, skipped))
}

/// Reads `root/positive_dir` (label +1) and `root/negative_dir` (label -1).
pub fn ingest_directory(root: impl AsRef<Path>, positive_dir: &str, negative_dir: &str) -> Result<Ingested> {
    let root = root.as_ref();
    let (pos, pos_skipped) = list_images(&root.join(positive_dir))?;
    let (neg, neg_skipped) = list_images(&root.join(negative_dir))?;
    let skipped = pos_skipped + neg_skipped;
    if skipped > 0 {
        log::warn!("{}: skipped {skipped} non-image files", root.display());
    }

    let mut tagged: Vec<(PathBuf, Label)> = pos
        .into_iter()
        .map(|p| (p, Label::Positive))
        .chain(neg.into_iter().map(|p| (p, Label::Negative)))
        .collect();
    tagged.sort_by(|a, b| a.0.cmp(&b.0));

    let entries = tagged
        .into_iter()
        .map(|(path, label)| {
            let image = load_image(&path)?;
            Ok(IngestedImage { path, image, label })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Ingested { entries, skipped })
}

/// Flattens an image to `[r, g, b, r, g, b, ...]` in row-major pixel order,
/// each channel scaled into [0, 1].
pub fn vectorize(image: &RgbImage) -> Vec<f64> {
    image
        .pixels
        .iter()
        .flat_map(|px| px.iter().map(|&c| f64::from(c) / 255.0))
        .collect()
}

/// Vectorizes equally sized images into a dataset.
pub fn vectorize_all(images: &[(RgbImage, Label)], resolution: u32) -> Result<LabeledDataset> {
    let d = images.first().map_or(0, |(img, _)| img.width * img.height * 3);
    let mut features = Vec::with_capacity(images.len() * d);
    let mut labels = Vec::with_capacity(images.len());
    for (img, label) in images {
        let row = vectorize(img);
        if row.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: row.len(),
            });
        }
        features.extend(row);
        labels.push(*label);
    }
    Ok(LabeledDataset::new(features, d, labels)?.with_resolution(resolution))
}

pub fn write_dataset<W: Write>(ds: &LabeledDataset, mut w: W) -> std::io::Result<()> {
    w.write_all(&FFDS_MAGIC)?;
    w.write_all(&FFDS_VERSION.to_le_bytes())?;
    w.write_all(&(ds.n_samples() as u64).to_le_bytes())?;
    w.write_all(&(ds.n_features as u64).to_le_bytes())?;
    w.write_all(&ds.resolution.to_le_bytes())?;
    let labels: Vec<u8> = ds.labels.iter().map(|l| l.as_i8() as u8).collect();
    w.write_all(&labels)?;
    for v in &ds.features {
        w.write_all(&v.to_le_bytes())?;
    }
    w.flush()
}

pub fn save_dataset(ds: &LabeledDataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_dataset(ds, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

pub(crate) struct ByteCursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> ByteCursor<'a> {
    pub(crate) fn new(buf: &'a [u8]) -> Self {
        ByteCursor { buf, pos: 0 }
    }

    pub(crate) fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&end| end <= self.buf.len())
            .ok_or_else(|| Error::Truncated(format!("{what} at byte {}", self.pos)))?;
        let out = &self.buf[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    pub(crate) fn magic(&mut self) -> Result<[u8; 4]> {
        Ok(self.take(4, "magic")?.try_into().unwrap())
    }

    pub(crate) fn u8(&mut self, what: &str) -> Result<u8> {
        Ok(self.take(1, what)?[0])
    }

    pub(crate) fn u32(&mut self, what: &str) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }

    pub(crate) fn u64(&mut self, what: &str) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }

    pub(crate) fn f64(&mut self, what: &str) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }

    pub(crate) fn f64_vec(&mut self, len: usize, what: &str) -> Result<Vec<f64>> {
        let bytes_len = len
            .checked_mul(8)
            .ok_or_else(|| Error::Truncated(format!("{what}: length overflow")))?;
        let bytes = self.take(bytes_len, what)?;
        Ok(bytes
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect())
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.pos == self.buf.len()
    }
}

pub(crate) fn check_magic(found: [u8; 4], expected: [u8; 4]) -> Result<()> {
    if found != expected {
        return Err(Error::BadMagic { expected, found });
    }
    Ok(())
}

pub fn parse_dataset(bytes: &[u8]) -> Result<LabeledDataset> {
    let mut cur = ByteCursor::new(bytes);
    check_magic(cur.magic()?, FFDS_MAGIC)?;
    let version = cur.u32("version")?;
    if version != FFDS_VERSION {
        return Err(Error::VersionMismatch {
            expected: FFDS_VERSION,
            found: version,
        });
    }
    let n = usize::try_from(cur.u64("n_samples")?).map_err(|_| Error::Truncated("n_samples".into()))?;
    let d = usize::try_from(cur.u64("n_features")?).map_err(|_| Error::Truncated("n_features".into()))?;
    let resolution = cur.u32("resolution")?;
    let labels = cur
        .take(n, "labels")?
        .iter()
        .map(|&b| Label::try_from(b as i8))
        .collect::<Result<Vec<_>>>()?;
    let total = n
        .checked_mul(d)
        .ok_or_else(|| Error::Truncated("feature count overflow".into()))?;
    let features = cur.f64_vec(total, "features")?;
    if !cur.is_empty() {
        return Err(Error::Truncated("trailing bytes after features".into()));
    }
    Ok(LabeledDataset::new(features, d, labels)?.with_resolution(resolution))
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<LabeledDataset> {
    let path = path.as_ref();
    let mut bytes = Vec::new();
    fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::io(path, e))?;
    parse_dataset(&bytes)
}
