//! Binary model files.
//!
//! All integers and floats are little-endian, no padding.
//!
//! ```text
//! SVMM: magic "SVMM" | version u32 = 1 | kernel tag u8 | kernel params
//!       | m u64 | d u64 | bias f64 | iterations u64 | objective f64
//!       | converged u8 | kkt_gap f64 | dual_coefs m x f64
//!       | support vectors m*d x f64 (row-major)
//!
//! kernel params by tag: 0 linear (none); 1 polynomial offset f64, degree u32;
//!                       2 gaussian gamma f64; 3 sigmoid alpha f64, beta f64
//!
//! LOGR: magic "LOGR" | version u32 = 1 | d u64 | bias f64 | weights d x f64
//! ```

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::dataset::{check_magic, ByteCursor};
use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::logreg::LogRegModel;
use crate::svm::{SvmModel, TrainingMeta};

pub const SVMM_MAGIC: [u8; 4] = *b"SVMM";
pub const LOGR_MAGIC: [u8; 4] = *b"LOGR";
pub const MODEL_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Svm(SvmModel),
    LogReg(LogRegModel),
}

impl Model {
    pub fn n_features(&self) -> usize {
        match self {
            Model::Svm(m) => m.n_features(),
            Model::LogReg(m) => m.n_features(),
        }
    }

    /// Real-valued score; larger means more likely positive.
    pub fn decision(&self, x: &[f64]) -> Result<f64> {
        match self {
            Model::Svm(m) => m.decision(x),
            Model::LogReg(m) => m.decision(x),
        }
    }

    pub fn predict(&self, x: &[f64]) -> Result<crate::dataset::Label> {
        match self {
            Model::Svm(m) => m.predict(x),
            Model::LogReg(m) => m.predict(x),
        }
    }
}

pub fn encode_svm(m: &SvmModel) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(&SVMM_MAGIC);
    out.extend_from_slice(&MODEL_VERSION.to_le_bytes());
    out.push(m.kernel.tag());
    match m.kernel {
        KernelSpec::Linear => {}
        KernelSpec::Polynomial { offset, degree } => {
            out.extend_from_slice(&offset.to_le_bytes());
            out.extend_from_slice(&degree.to_le_bytes());
        }
        KernelSpec::Gaussian { gamma } => out.extend_from_slice(&gamma.to_le_bytes()),
        KernelSpec::Sigmoid { alpha, beta } => {
            out.extend_from_slice(&alpha.to_le_bytes());
            out.extend_from_slice(&beta.to_le_bytes());
        }
    }
    out.extend_from_slice(&(m.dual_coefs.len() as u64).to_le_bytes());
    out.extend_from_slice(&(m.n_features as u64).to_le_bytes());
    out.extend_from_slice(&m.bias.to_le_bytes());
    out.extend_from_slice(&m.meta.iterations.to_le_bytes());
    out.extend_from_slice(&m.meta.objective.to_le_bytes());
    out.push(u8::from(m.meta.converged));
    out.extend_from_slice(&m.meta.kkt_gap.to_le_bytes());
    for v in m.dual_coefs.iter().chain(&m.support_vectors) {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn encode_logreg(m: &LogRegModel) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(&LOGR_MAGIC);
    out.extend_from_slice(&MODEL_VERSION.to_le_bytes());
    out.extend_from_slice(&(m.weights.len() as u64).to_le_bytes());
    out.extend_from_slice(&m.bias.to_le_bytes());
    for v in &m.weights {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn encode(m: &Model) -> Vec<u8> {
    match m {
        Model::Svm(m) => encode_svm(m),
        Model::LogReg(m) => encode_logreg(m),
    }
}

fn version(cur: &mut ByteCursor<'_>) -> Result<()> {
    let v = cur.u32("version")?;
    if v != MODEL_VERSION {
        return Err(Error::VersionMismatch {
            expected: MODEL_VERSION,
            found: v,
        });
    }
    Ok(())
}

fn len(v: u64, what: &str) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::Truncated(format!("{what} too large")))
}

fn decode_svm(cur: &mut ByteCursor<'_>) -> Result<SvmModel> {
    version(cur)?;
    let kernel = match cur.u8("kernel tag")? {
        0 => KernelSpec::Linear,
        1 => KernelSpec::Polynomial {
            offset: cur.f64("offset")?,
            degree: cur.u32("degree")?,
        },
        2 => KernelSpec::Gaussian {
            gamma: cur.f64("gamma")?,
        },
        3 => KernelSpec::Sigmoid {
            alpha: cur.f64("alpha")?,
            beta: cur.f64("beta")?,
        },
        t => return Err(Error::InvalidParameter(format!("unknown kernel tag {t}"))),
    };
    kernel.validate()?;
    let m = len(cur.u64("m")?, "m")?;
    let d = len(cur.u64("d")?, "d")?;
    let bias = cur.f64("bias")?;
    let meta = TrainingMeta {
        iterations: cur.u64("iterations")?,
        objective: cur.f64("objective")?,
        converged: cur.u8("converged")? != 0,
        kkt_gap: cur.f64("kkt_gap")?,
    };
    let dual_coefs = cur.f64_vec(m, "dual coefficients")?;
    let sv_len = m
        .checked_mul(d)
        .ok_or_else(|| Error::Truncated("support vector size overflow".into()))?;
    let support_vectors = cur.f64_vec(sv_len, "support vectors")?;
    Ok(SvmModel {
        support_vectors,
        n_features: d,
        dual_coefs,
        bias,
        kernel,
        meta,
    })
}

fn decode_logreg(cur: &mut ByteCursor<'_>) -> Result<LogRegModel> {
    version(cur)?;
    let d = len(cur.u64("d")?, "d")?;
    let bias = cur.f64("bias")?;
    let weights = cur.f64_vec(d, "weights")?;
    Ok(LogRegModel { weights, bias })
}

/// Decodes either model kind, dispatching on the magic bytes.
pub fn decode(bytes: &[u8]) -> Result<Model> {
    let mut cur = ByteCursor::new(bytes);
    let magic = cur.magic()?;
    let model = match magic {
        SVMM_MAGIC => Model::Svm(decode_svm(&mut cur)?),
        LOGR_MAGIC => Model::LogReg(decode_logreg(&mut cur)?),
        other => {
            check_magic(other, SVMM_MAGIC)?;
            unreachable!()
        }
    };
    if !cur.is_empty() {
        return Err(Error::Truncated("trailing bytes after model".into()));
    }
    Ok(model)
}

pub fn save_model(m: &Model, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::File::create(path)
        .and_then(|mut f| f.write_all(&encode(m)))
        .map_err(|e| Error::io(path, e))
}

pub fn load_model(path: impl AsRef<Path>) -> Result<Model> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode(&bytes)
}
