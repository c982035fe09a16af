//! Dense complex linear algebra: Kronecker products, partial trace and
//! transpose, Hermitian eigendecomposition, and the spectral functionals
//! (von Neumann entropy, purity) built on top of it.
//!
//! Conventions used throughout the crate:
//! - the leftmost tensor factor is the most significant index in every
//!   Kronecker product, and subsystem specs index factors left to right;
//! - entropies are in bits (base-2 logarithms);
//! - eigenvalues in `[-1e-10, 0)` are round-off and clamped to zero, while
//!   anything more negative is treated as a genuine positivity violation.

use nalgebra::DMatrix;
use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Entrywise tolerance (relative to the largest entry) for Hermiticity
/// checks at the eigensolver boundary.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Eigenvalues above this (negative) threshold count as zero; below it they
/// are an error. Also the PPT decision threshold.
pub const EIGENVALUE_CLAMP: f64 = -1e-10;

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![C64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C64::ONE;
        }
        m
    }

    /// Build from row-major data; panics if the length does not match.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major data length mismatch");
        Self { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Real-valued matrix from row-major f64 entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self {
            rows,
            cols,
            data: entries.iter().map(|&x| C64::new(x, 0.0)).collect(),
        }
    }

    /// Rank-1 projector |v><v| (v need not be normalized).
    pub fn outer(v: &[C64], w: &[C64]) -> Self {
        Self::from_fn(v.len(), w.len(), |i, j| v[i] * w[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: C64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == C64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "matvec shape mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * v[j])
                    .sum::<C64>()
            })
            .collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn conjugate(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace requires a square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise |a - b|.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest |m[i][j] - conj(m[j][i])|.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermiticity_deviation() <= tol
    }
}

/// Kronecker product a (x) b, with `a` as the most significant factor.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows() * b.rows();
    let cols = a.cols() * b.cols();
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ia in 0..a.rows() {
        for ja in 0..a.cols() {
            let av = a.get(ia, ja);
            if av == C64::ZERO {
                continue;
            }
            for ib in 0..b.rows() {
                for jb in 0..b.cols() {
                    out.set(ia * b.rows() + ib, ja * b.cols() + jb, av * b.get(ib, jb));
                }
            }
        }
    }
    out
}

/// Kronecker product of two vectors, leftmost most significant.
pub fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

/// Which tensor factors to keep under a partial trace, indexed left to
/// right. Indices are stored sorted so kept subsystems retain their
/// original order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsystemSpec {
    keep: Vec<usize>,
}

impl SubsystemSpec {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut keep: Vec<usize> = indices.into_iter().collect();
        keep.sort_unstable();
        keep.dedup();
        Self { keep }
    }

    pub fn indices(&self) -> &[usize] {
        &self.keep
    }

    pub fn validate(&self, n_factors: usize) -> Result<()> {
        for &k in &self.keep {
            if k >= n_factors {
                return Err(Error::IndexOutOfRange {
                    what: "subsystem index",
                    index: k,
                    max: n_factors - 1,
                });
            }
        }
        Ok(())
    }
}

/// Hermitian, unit-trace matrix together with the dimensions of the tensor
/// factors it lives on.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

/// Construction tolerances for [`DensityMatrix`]: Hermiticity and trace are
/// enforced to 1e-12 entrywise.
pub const DENSITY_TOL: f64 = 1e-12;

impl DensityMatrix {
    /// Wraps a matrix after checking squareness, factor dimensions,
    /// Hermiticity, and unit trace. Positivity is checked spectrally by
    /// [`DensityMatrix::spectrum`], not here.
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidDensity {
                reason: format!("matrix is {}x{}", matrix.rows(), matrix.cols()),
            });
        }
        let prod: usize = dims.iter().product();
        if dims.is_empty() || prod != matrix.rows() {
            return Err(Error::InvalidDensity {
                reason: format!("factor dims {:?} do not multiply to {}", dims, matrix.rows()),
            });
        }
        let dev = matrix.hermiticity_deviation();
        if dev > DENSITY_TOL {
            return Err(Error::NotHermitian {
                deviation: dev,
                tolerance: DENSITY_TOL,
            });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return Err(Error::InvalidDensity {
                reason: format!("trace = {} + {}i", tr.re, tr.im),
            });
        }
        Ok(Self { matrix, dims })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total dimension (product of the factor dimensions).
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        hermitian_spectrum(&self.matrix)
    }

    /// Trace distance (1/2)||rho - sigma||_1.
    pub fn trace_distance(&self, other: &Self) -> Result<f64> {
        let diff = self.matrix.sub(&other.matrix);
        let s = hermitian_spectrum(&diff)?;
        Ok(0.5 * s.values().iter().map(|v| v.abs()).sum::<f64>())
    }
}

/// Real eigenvalues in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    /// Sorts the given eigenvalues into descending order.
    pub fn from_values(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(|a, b| b.partial_cmp(a).expect("NaN eigenvalue"));
        Self { eigenvalues }
    }

    pub fn values(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn min(&self) -> f64 {
        *self.eigenvalues.last().expect("empty spectrum")
    }

    /// Eigenvalues above `cutoff`, preserving descending order.
    pub fn nonzero(&self, cutoff: f64) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .copied()
            .filter(|v| v.abs() > cutoff)
            .collect()
    }
}

/// Eigenvalues of a Hermitian matrix, descending.
///
/// The input must be Hermitian to within [`HERMITICITY_TOL`] relative to its
/// largest entry.
pub fn hermitian_spectrum(m: &ComplexMatrix) -> Result<Spectrum> {
    Ok(Spectrum::from_values(hermitian_eigen(m)?.0))
}

/// Full eigendecomposition of a Hermitian matrix: unsorted eigenvalues and
/// the matching eigenvector columns.
pub(crate) fn hermitian_eigen(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition requires a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    // Tolerance is relative to the largest entry magnitude.
    let scale = m.max_abs();
    let dev = m.hermiticity_deviation();
    if dev > HERMITICITY_TOL * scale {
        return Err(Error::NotHermitian {
            deviation: dev,
            tolerance: HERMITICITY_TOL * scale,
        });
    }
    let n = m.rows();
    let dm = DMatrix::from_fn(n, n, |i, j| m.get(i, j));
    let eig = dm.symmetric_eigen();
    let vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let vecs = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, j)]);
    Ok((vals, vecs))
}

/// Partial trace onto the kept subsystems, preserving their order.
pub fn partial_trace(rho: &DensityMatrix, keep: &SubsystemSpec) -> Result<DensityMatrix> {
    keep.validate(rho.dims().len())?;
    let dims = rho.dims();
    let kept: Vec<usize> = keep.indices().to_vec();
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !kept.contains(i)).collect();

    let kept_dims: Vec<usize> = kept.iter().map(|&i| dims[i]).collect();
    let kept_dim: usize = kept_dims.iter().product();
    let env_dims: Vec<usize> = traced.iter().map(|&i| dims[i]).collect();
    let env_dim: usize = env_dims.iter().product();

    // Row-major strides of each factor in the full index.
    let strides = factor_strides(dims);

    let mut out = ComplexMatrix::zeros(kept_dim, kept_dim);
    for ik in 0..kept_dim {
        let base_i = compose_index(ik, &kept_dims, &kept, &strides);
        for jk in 0..kept_dim {
            let base_j = compose_index(jk, &kept_dims, &kept, &strides);
            let mut sum = C64::ZERO;
            for e in 0..env_dim {
                let off = compose_index(e, &env_dims, &traced, &strides);
                sum += rho.matrix().get(base_i + off, base_j + off);
            }
            out.set(ik, jk, sum);
        }
    }
    DensityMatrix::new(out, kept_dims)
}

/// Transpose of a single tensor factor; Hermiticity and trace are preserved
/// but positivity need not be, so the result is a plain matrix.
pub fn partial_transpose(rho: &DensityMatrix, subsystem: usize) -> Result<ComplexMatrix> {
    let dims = rho.dims();
    if subsystem >= dims.len() {
        return Err(Error::IndexOutOfRange {
            what: "subsystem index",
            index: subsystem,
            max: dims.len() - 1,
        });
    }
    let strides = factor_strides(dims);
    let d_s = dims[subsystem];
    let stride_s = strides[subsystem];
    let dim = rho.dim();

    let mut out = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        let is = (i / stride_s) % d_s;
        let i_rest = i - is * stride_s;
        for j in 0..dim {
            let js = (j / stride_s) % d_s;
            let j_rest = j - js * stride_s;
            // Swap the subsystem index between row and column.
            out.set(i, j, rho.matrix().get(i_rest + js * stride_s, j_rest + is * stride_s));
        }
    }
    Ok(out)
}

/// Von Neumann entropy in bits of a density-matrix spectrum, with the
/// convention 0 log 0 = 0.
pub fn von_neumann_entropy(s: &Spectrum) -> Result<f64> {
    let sum = s.sum();
    if (sum - 1.0).abs() > 1e-10 {
        return Err(Error::SpectrumNotNormalized { sum });
    }
    let mut entropy = 0.0;
    for &v in s.values() {
        if v < EIGENVALUE_CLAMP {
            return Err(Error::NegativeEigenvalue { value: v });
        }
        if v > 0.0 {
            entropy -= v * v.log2();
        }
    }
    Ok(entropy)
}

/// Tr rho^2, in (0, 1]. Equals the sum of squared eigenvalues; computed
/// entrywise via Hermiticity as sum |rho_ij|^2.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.matrix().entries().iter().map(|z| z.norm_sqr()).sum()
}

/// Row-major stride of each tensor factor.
pub(crate) fn factor_strides(dims: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    strides
}

/// Expand a packed multi-index over `sub_dims` (factors `positions` of the
/// full layout) into a full-index offset using the full strides.
pub(crate) fn compose_index(
    packed: usize,
    sub_dims: &[usize],
    positions: &[usize],
    strides: &[usize],
) -> usize {
    let mut rem = packed;
    let mut offset = 0;
    for k in (0..sub_dims.len()).rev() {
        let digit = rem % sub_dims[k];
        rem /= sub_dims[k];
        offset += digit * strides[positions[k]];
    }
    offset
}

/// Gram-form reduction of a pure state: rho[i][j] = sum_e psi[i,e] psi*[j,e].
///
/// `keep` and `dims` describe the factor layout of `amps`; rows are computed
/// independently, in parallel.
pub(crate) fn reduce_pure_state(
    amps: &[C64],
    dims: &[usize],
    keep: &SubsystemSpec,
) -> Result<DensityMatrix> {
    keep.validate(dims.len())?;
    let kept: Vec<usize> = keep.indices().to_vec();
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !kept.contains(i)).collect();
    let kept_dims: Vec<usize> = kept.iter().map(|&i| dims[i]).collect();
    let env_dims: Vec<usize> = traced.iter().map(|&i| dims[i]).collect();
    let kept_dim: usize = kept_dims.iter().product();
    let env_dim: usize = env_dims.iter().product();
    let strides = factor_strides(dims);

    let kept_offsets: Vec<usize> = (0..kept_dim)
        .map(|ik| compose_index(ik, &kept_dims, &kept, &strides))
        .collect();
    let env_offsets: Vec<usize> = (0..env_dim)
        .map(|e| compose_index(e, &env_dims, &traced, &strides))
        .collect();

    let rows: Vec<Vec<C64>> = (0..kept_dim)
        .into_par_iter()
        .map(|ik| {
            let base_i = kept_offsets[ik];
            (0..kept_dim)
                .map(|jk| {
                    let base_j = kept_offsets[jk];
                    env_offsets
                        .iter()
                        .map(|&off| amps[base_i + off] * amps[base_j + off].conj())
                        .sum()
                })
                .collect()
        })
        .collect();

    let data: Vec<C64> = rows.into_iter().flatten().collect();
    DensityMatrix::new(
        ComplexMatrix::from_row_major(kept_dim, kept_dim, data),
        kept_dims,
    )
}
