//! The four kernels and Gram matrix construction.
//!
//! All dot products and squared distances are accumulated strictly left to
//! right, so `eval(x, y)` and `eval(y, x)` are bit-identical and a Gram
//! entry always equals the direct pairwise evaluation.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum KernelSpec {
    /// `x . y`
    Linear,
    /// `(x . y + offset)^degree`
    Polynomial { offset: f64, degree: u32 },
    /// `exp(-gamma * |x - y|^2)`, with `gamma = 1 / (2 sigma^2)`.
    Gaussian { gamma: f64 },
    /// `tanh(alpha * x . y + beta)`
    Sigmoid { alpha: f64, beta: f64 },
}

impl KernelSpec {
    /// Gaussian kernel from its width `sigma`.
    pub fn gaussian_from_sigma(sigma: f64) -> Result<Self> {
        let spec = KernelSpec::Gaussian {
            gamma: 1.0 / (2.0 * sigma * sigma),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            KernelSpec::Linear => Ok(()),
            KernelSpec::Polynomial { offset, degree } => {
                if degree < 1 {
                    return Err(Error::InvalidParameter("polynomial degree must be >= 1".into()));
                }
                if !(offset >= 0.0 && offset.is_finite()) {
                    return Err(Error::InvalidParameter(format!(
                        "polynomial offset must be finite and >= 0, got {offset}"
                    )));
                }
                Ok(())
            }
            KernelSpec::Gaussian { gamma } => {
                if !(gamma > 0.0 && gamma.is_finite()) {
                    return Err(Error::InvalidParameter(format!(
                        "gaussian gamma must be finite and > 0, got {gamma}"
                    )));
                }
                Ok(())
            }
            KernelSpec::Sigmoid { alpha, beta } => {
                if !(alpha.is_finite() && beta.is_finite()) {
                    return Err(Error::InvalidParameter("sigmoid parameters must be finite".into()));
                }
                Ok(())
            }
        }
    }

    /// Whether the kernel is a function of the squared distance rather
    /// than the dot product.
    pub fn uses_distance(&self) -> bool {
        matches!(self, KernelSpec::Gaussian { .. })
    }

    /// Kernel value given the dot product (or squared distance, for the
    /// Gaussian kernel) of the two inputs.
    #[inline]
    pub fn apply(&self, base: f64) -> f64 {
        match *self {
            KernelSpec::Linear => base,
            KernelSpec::Polynomial { offset, degree } => (base + offset).powi(degree as i32),
            KernelSpec::Gaussian { gamma } => (-gamma * base).exp(),
            KernelSpec::Sigmoid { alpha, beta } => (alpha * base + beta).tanh(),
        }
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, x: &[f64], y: &[f64]) -> f64 {
        if self.uses_distance() {
            self.apply(sq_dist(x, y))
        } else {
            self.apply(dot(x, y))
        }
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                got: y.len(),
            });
        }
        if x.is_empty() {
            return Err(Error::Empty("kernel input"));
        }
        Ok(self.eval_unchecked(x, y))
    }

    pub(crate) fn tag(&self) -> u8 {
        match self {
            KernelSpec::Linear => 0,
            KernelSpec::Polynomial { .. } => 1,
            KernelSpec::Gaussian { .. } => 2,
            KernelSpec::Sigmoid { .. } => 3,
        }
    }
}

impl fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelSpec::Linear => write!(f, "linear"),
            KernelSpec::Polynomial { offset, degree } => write!(f, "polynomial(degree={degree}, offset={offset})"),
            KernelSpec::Gaussian { gamma } => write!(f, "gaussian(gamma={gamma})"),
            KernelSpec::Sigmoid { alpha, beta } => write!(f, "sigmoid(alpha={alpha}, beta={beta})"),
        }
    }
}

#[inline]
pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (a, b) in x.iter().zip(y) {
        acc += a * b;
    }
    acc
}

#[inline]
pub fn sq_dist(x: &[f64], y: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (a, b) in x.iter().zip(y) {
        let t = a - b;
        acc += t * t;
    }
    acc
}

/// Borrowed row-major `n x d` matrix.
#[derive(Debug, Clone, Copy)]
pub struct RowMatrix<'a> {
    data: &'a [f64],
    n_cols: usize,
}

impl<'a> RowMatrix<'a> {
    pub fn new(data: &'a [f64], n_cols: usize) -> Result<Self> {
        let ok = if n_cols == 0 { data.is_empty() } else { data.len().is_multiple_of(n_cols) };
        if !ok {
            return Err(Error::DimensionMismatch {
                expected: n_cols,
                got: data.len(),
            });
        }
        Ok(RowMatrix { data, n_cols })
    }

    pub fn n_rows(&self) -> usize {
        self.data.len().checked_div(self.n_cols).unwrap_or(0)
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn row(&self, i: usize) -> &'a [f64] {
        &self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }
}

/// Owned row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Matrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

/// Symmetric `n x n` Gram matrix. Each unordered pair is evaluated once
/// and mirrored.
pub fn gram(spec: &KernelSpec, x: RowMatrix<'_>) -> Result<Matrix> {
    let n = x.n_rows();
    if n == 0 {
        return Err(Error::Empty("gram input"));
    }
    let upper: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| (i..n).map(|j| spec.eval_unchecked(x.row(i), x.row(j))).collect())
        .collect();
    let mut data = vec![0.0; n * n];
    for (i, row) in upper.iter().enumerate() {
        for (off, &v) in row.iter().enumerate() {
            let j = i + off;
            data[i * n + j] = v;
            data[j * n + i] = v;
        }
    }
    Ok(Matrix { rows: n, cols: n, data })
}

/// `n x m` matrix of `eval(x_i, z_j)`.
pub fn gram_cross(spec: &KernelSpec, x: RowMatrix<'_>, z: RowMatrix<'_>) -> Result<Matrix> {
    let (n, m) = (x.n_rows(), z.n_rows());
    if n > 0 && m > 0 && x.n_cols() != z.n_cols() {
        return Err(Error::DimensionMismatch {
            expected: x.n_cols(),
            got: z.n_cols(),
        });
    }
    let data: Vec<f64> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| (0..m).map(move |j| spec.eval_unchecked(x.row(i), z.row(j))))
        .collect();
    Ok(Matrix { rows: n, cols: m, data })
}

/// Precomputed pairwise dot products and squared distances over one
/// dataset. Every kernel's Gram matrix on any subset of the rows can be
/// derived from these without touching the features again, and the values
/// are identical to direct evaluation.
#[derive(Debug, Clone)]
pub struct PairwiseProducts {
    n: usize,
    dots: Option<Vec<f64>>,
    sq_dists: Option<Vec<f64>>,
}

impl PairwiseProducts {
    pub fn compute(x: RowMatrix<'_>, with_dots: bool, with_sq_dists: bool) -> Self {
        let n = x.n_rows();
        let build = |f: fn(&[f64], &[f64]) -> f64| {
            let upper: Vec<Vec<f64>> = (0..n)
                .into_par_iter()
                .map(|i| (i..n).map(|j| f(x.row(i), x.row(j))).collect())
                .collect();
            let mut data = vec![0.0; n * n];
            for (i, row) in upper.iter().enumerate() {
                for (off, &v) in row.iter().enumerate() {
                    data[i * n + i + off] = v;
                    data[(i + off) * n + i] = v;
                }
            }
            data
        };
        PairwiseProducts {
            n,
            dots: with_dots.then(|| build(dot)),
            sq_dists: with_sq_dists.then(|| build(sq_dist)),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn supports(&self, spec: &KernelSpec) -> bool {
        if spec.uses_distance() {
            self.sq_dists.is_some()
        } else {
            self.dots.is_some()
        }
    }

    /// Gram matrix over the rows `indices`, in that order.
    pub fn gram(&self, spec: &KernelSpec, indices: &[usize]) -> Option<Matrix> {
        let base = if spec.uses_distance() {
            self.sq_dists.as_ref()?
        } else {
            self.dots.as_ref()?
        };
        let m = indices.len();
        let mut data = Vec::with_capacity(m * m);
        for &i in indices {
            let row = &base[i * self.n..(i + 1) * self.n];
            data.extend(indices.iter().map(|&j| spec.apply(row[j])));
        }
        Some(Matrix { rows: m, cols: m, data })
    }

    /// `rows x cols` block of kernel values.
    pub fn cross(&self, spec: &KernelSpec, rows: &[usize], cols: &[usize]) -> Option<Matrix> {
        let base = if spec.uses_distance() {
            self.sq_dists.as_ref()?
        } else {
            self.dots.as_ref()?
        };
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            let row = &base[i * self.n..(i + 1) * self.n];
            data.extend(cols.iter().map(|&j| spec.apply(row[j])));
        }
        Some(Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const ALL: [KernelSpec; 4] = [
        KernelSpec::Linear,
        KernelSpec::Polynomial { offset: 1.0, degree: 3 },
        KernelSpec::Gaussian { gamma: 0.7 },
        KernelSpec::Sigmoid { alpha: 0.5, beta: -0.2 },
    ];

    #[test]
    fn formula_examples() {
        let (x, y) = ([1.0, 2.0], [3.0, 4.0]);
        assert_eq!(KernelSpec::Linear.eval(&x, &y).unwrap(), 11.0);
        assert_eq!(
            KernelSpec::Polynomial { offset: 1.0, degree: 2 }.eval(&x, &y).unwrap(),
            144.0
        );
        assert_eq!(KernelSpec::Gaussian { gamma: 3.0 }.eval(&x, &x).unwrap(), 1.0);
        assert_eq!(
            KernelSpec::Sigmoid { alpha: 1.0, beta: 0.0 }
                .eval(&[1.0, 0.0], &[0.0, 1.0])
                .unwrap(),
            0.0
        );
        // |x - y|^2 = 8
        let g = KernelSpec::Gaussian { gamma: 0.25 }.eval(&x, &y).unwrap();
        assert_eq!(g, (-2.0f64).exp());
    }

    #[test]
    fn sigma_mapping() {
        let k = KernelSpec::gaussian_from_sigma(2.0).unwrap();
        assert_eq!(k, KernelSpec::Gaussian { gamma: 0.125 });
        assert!(KernelSpec::gaussian_from_sigma(0.0).is_err());
    }

    #[test]
    fn eval_dimension_mismatch() {
        assert!(matches!(
            KernelSpec::Linear.eval(&[1.0], &[1.0, 2.0]),
            Err(Error::DimensionMismatch { expected: 1, got: 2 })
        ));
    }

    #[test]
    fn validate_rejects_bad_params() {
        assert!(KernelSpec::Polynomial { offset: 0.0, degree: 0 }.validate().is_err());
        assert!(KernelSpec::Polynomial { offset: -1.0, degree: 2 }.validate().is_err());
        assert!(KernelSpec::Gaussian { gamma: 0.0 }.validate().is_err());
        assert!(KernelSpec::Sigmoid { alpha: f64::NAN, beta: 0.0 }.validate().is_err());
    }

    #[test]
    fn gram_single_point() {
        let x = [0.3, 0.4];
        let g = gram(&ALL[1], RowMatrix::new(&x, 2).unwrap()).unwrap();
        assert_eq!(g.data, vec![ALL[1].eval(&x, &x).unwrap()]);
    }

    #[test]
    fn gram_cross_shapes() {
        let x = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6];
        let z = [0.9, 0.8, 0.7];
        let xm = RowMatrix::new(&x, 3).unwrap();
        let g = gram_cross(&ALL[0], xm, RowMatrix::new(&z, 3).unwrap()).unwrap();
        assert_eq!((g.rows, g.cols), (2, 1));
        // 0.1*0.9 + 0.2*0.8 + 0.3*0.7, 0.4*0.9 + 0.5*0.8 + 0.6*0.7
        assert_eq!(g.data, vec![0.1 * 0.9 + 0.2 * 0.8 + 0.3 * 0.7, 0.4 * 0.9 + 0.5 * 0.8 + 0.6 * 0.7]);
        let empty = gram_cross(&ALL[0], xm, RowMatrix::new(&[], 3).unwrap()).unwrap();
        assert_eq!((empty.rows, empty.cols), (2, 0));
        assert!(gram_cross(&ALL[0], xm, RowMatrix::new(&[1.0, 2.0], 2).unwrap()).is_err());
    }

    fn arb_rows() -> impl Strategy<Value = (Vec<f64>, usize)> {
        (1usize..7, 1usize..5)
            .prop_flat_map(|(n, d)| (proptest::collection::vec(0.0f64..=1.0, n * d), Just(d)))
    }

    proptest! {
        #[test]
        fn symmetric_to_zero_ulps(
            x in proptest::collection::vec(-2.0f64..2.0, 5),
            y in proptest::collection::vec(-2.0f64..2.0, 5),
        ) {
            for k in ALL {
                prop_assert_eq!(k.eval(&x, &y).unwrap().to_bits(), k.eval(&y, &x).unwrap().to_bits());
            }
        }

        #[test]
        fn gram_matches_pairwise((data, d) in arb_rows()) {
            let x = RowMatrix::new(&data, d).unwrap();
            for k in ALL {
                let g = gram(&k, x).unwrap();
                let c = gram_cross(&k, x, x).unwrap();
                prop_assert_eq!(&g, &c);
                let pp = PairwiseProducts::compute(x, true, true);
                let idx: Vec<usize> = (0..x.n_rows()).collect();
                prop_assert_eq!(&pp.gram(&k, &idx).unwrap(), &g);
                for i in 0..x.n_rows() {
                    for j in 0..x.n_rows() {
                        prop_assert_eq!(g.get(i, j).to_bits(), k.eval(x.row(i), x.row(j)).unwrap().to_bits());
                    }
                }
            }
        }

        #[test]
        fn gaussian_range((data, d) in arb_rows(), gamma in 0.01f64..10.0) {
            let k = KernelSpec::Gaussian { gamma };
            let g = gram(&k, RowMatrix::new(&data, d).unwrap()).unwrap();
            for i in 0..g.rows {
                prop_assert_eq!(g.get(i, i), 1.0);
                for j in 0..g.cols {
                    prop_assert!(g.get(i, j) > 0.0 && g.get(i, j) <= 1.0);
                }
            }
        }
    }
}
