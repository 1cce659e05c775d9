//! Small dense real linear algebra: the handful of kernels the rest of the
//! crate needs (largest singular value, symmetric eigenvalues, Kronecker
//! products and inversion).
//!
//! Matrices here are tiny (2x2 Jacobians, Laplacians of a few dozen nodes),
//! so everything is a straightforward row-major `Vec<f64>`.

use std::fmt;
use std::ops::{Deref, Index};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerances used by the kernels in this module.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinalgConfig {
    /// Relative residual tolerance for power iteration on `AᵀA`.
    pub power_rel_tol: f64,
    pub power_max_iter: usize,
    /// If power iteration runs out of iterations (clustered top singular
    /// values), finish with Jacobi on `AᵀA` instead of failing.
    pub power_jacobi_fallback: bool,
    /// Off-diagonal Frobenius norm threshold, relative to `‖S‖_F`.
    pub jacobi_rel_tol: f64,
    pub jacobi_max_sweeps: usize,
    /// Absolute entrywise tolerance for accepting a matrix as symmetric.
    pub symmetry_tol: f64,
    /// Pivots below `singular_rel_tol * max|entry|` are treated as zero.
    pub singular_rel_tol: f64,
}

impl Default for LinalgConfig {
    fn default() -> Self {
        Self {
            power_rel_tol: 1e-12,
            power_max_iter: 10_000,
            power_jacobi_fallback: true,
            jacobi_rel_tol: 1e-12,
            jacobi_max_sweeps: 100,
            symmetry_tol: 1e-12,
            singular_rel_tol: 1e-14,
        }
    }
}

/// Dense real matrix stored row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Builds a matrix from row-major entries, rejecting empty shapes and
    /// non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty);
        }
        if data.len() != rows * cols {
            return Err(Error::dims(rows * cols, data.len()));
        }
        if let Some(index) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from a slice of equally long rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != ncols {
                return Err(Error::dims(ncols, row.len()));
            }
            data.extend_from_slice(row);
        }
        Self::new(nrows, ncols, data)
    }

    /// Internal constructor for results of arithmetic on valid matrices.
    /// Entries may overflow; callers that care check [`Matrix::is_finite`].
    pub(crate) fn from_parts(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self::from_parts(rows, cols, vec![0.0; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Square diagonal matrix. Panics on an empty or non-finite diagonal.
    pub fn diag(entries: &[f64]) -> Self {
        assert!(entries.iter().all(|v| v.is_finite()), "diagonal must be finite");
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in entries.iter().enumerate() {
            m.data[i * n + i] = v;
        }
        m
    }

    /// 1x1 matrix.
    pub fn scalar(v: f64) -> Self {
        Self::diag(&[v])
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

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = vec![0.0; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        Self::from_parts(self.cols, self.rows, out)
    }

    pub fn scaled(&self, s: f64) -> Matrix {
        Self::from_parts(self.rows, self.cols, self.data.iter().map(|v| v * s).collect())
    }

    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::dims(format!("{} rows on the right", self.cols), format!("{}x{}", rhs.rows, rhs.cols)));
        }
        Ok(self.mul_unchecked(rhs))
    }

    pub(crate) fn mul_unchecked(&self, rhs: &Matrix) -> Matrix {
        let (n, m, p) = (self.rows, self.cols, rhs.cols);
        let mut out = vec![0.0; n * p];
        for i in 0..n {
            for k in 0..m {
                let a = self.data[i * m + k];
                if a == 0.0 {
                    continue;
                }
                let rrow = &rhs.data[k * p..(k + 1) * p];
                let orow = &mut out[i * p..(i + 1) * p];
                for (o, r) in orow.iter_mut().zip(rrow) {
                    *o += a * r;
                }
            }
        }
        Self::from_parts(n, p, out)
    }

    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.cols {
            return Err(Error::dims(self.cols, v.len()));
        }
        Ok(self.mul_vec_unchecked(v))
    }

    pub(crate) fn mul_vec_unchecked(&self, v: &[f64]) -> Vec<f64> {
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    fn zip_with(&self, rhs: &Matrix, f: impl Fn(f64, f64) -> f64) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::dims(format!("{}x{}", self.rows, self.cols), format!("{}x{}", rhs.rows, rhs.cols)));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self::from_parts(self.rows, self.cols, data))
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// Largest `|S_ij − S_ji|`; `None` for non-square matrices.
    pub fn max_asymmetry(&self) -> Option<f64> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in (i + 1)..n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        Some(worst)
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j) == 0.0))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[f64]> = (0..self.rows).map(|i| self.row(i)).collect();
        f.debug_struct("Matrix").field("rows", &self.rows).field("cols", &self.cols).field("entries", &rows).finish()
    }
}

/// Dense real vector with finite entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(index) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self(entries))
    }

    pub fn from_slice(entries: &[f64]) -> Result<Self> {
        Self::new(entries.to_vec())
    }

    /// Unit vector `e_i` in dimension `dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        Self(v)
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<f64>) -> Self {
        Self(entries)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn norm2(&self) -> f64 {
        norm2(&self.0)
    }
}

impl Deref for Vector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Self {
        v.0
    }
}

pub(crate) fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Largest singular value with default tolerances.
pub fn spectral_norm(a: &Matrix) -> Result<f64> {
    spectral_norm_with(a, &LinalgConfig::default())
}

/// Closed form for 2x2: `σ1² = (‖A‖_F² + √(‖A‖_F⁴ − 4 det²)) / 2`.
fn spectral_norm_2x2(a: &Matrix) -> f64 {
    let (p, q, r, s) = (a.data[0], a.data[1], a.data[2], a.data[3]);
    let fro2 = p * p + q * q + r * r + s * s;
    let det = p * s - q * r;
    let disc = (fro2 * fro2 - 4.0 * det * det).max(0.0);
    ((fro2 + disc.sqrt()) / 2.0).sqrt()
}

pub fn spectral_norm_with(a: &Matrix, cfg: &LinalgConfig) -> Result<f64> {
    match (a.rows, a.cols) {
        (1, 1) => return Ok(a.data[0].abs()),
        (2, 2) => return Ok(spectral_norm_2x2(a)),
        _ => {}
    }
    if a.rows == 1 || a.cols == 1 {
        return Ok(norm2(&a.data));
    }
    if a.max_abs() == 0.0 {
        return Ok(0.0);
    }
    // Keep the Gram matrix well scaled.
    let scale = a.max_abs();
    let a = a.scaled(1.0 / scale);
    let gram = a.transpose().mul_unchecked(&a);
    let n = gram.rows;

    let ones = vec![1.0; n];
    let first = power_iterate(&gram, ones.clone(), cfg);
    let top = match first {
        // Converging almost immediately means the all-ones start was already
        // an eigenvector, possibly not the dominant one: rerun from a
        // perturbed start and keep the larger estimate.
        Ok((mu, iters)) if iters <= 1 => {
            let mut start = ones;
            start[0] += 1e-9;
            match power_iterate(&gram, start, cfg) {
                Ok((mu2, _)) => mu.max(mu2),
                Err(e) => return fallback_or(e, &gram, cfg).map(|m| m.sqrt() * scale),
            }
        }
        Ok((mu, _)) => mu,
        Err(e) => return fallback_or(e, &gram, cfg).map(|m| m.sqrt() * scale),
    };
    Ok(top.max(0.0).sqrt() * scale)
}

fn fallback_or(err: Error, gram: &Matrix, cfg: &LinalgConfig) -> Result<f64> {
    if !cfg.power_jacobi_fallback {
        return Err(err);
    }
    let eig = symmetric_eigenvalues_with(gram, cfg)?;
    Ok(*eig.last().expect("nonempty spectrum"))
}

/// Power iteration on a symmetric positive semidefinite matrix. Returns the
/// dominant eigenvalue and the iteration count at which the relative
/// residual `‖Bv − μv‖ / μ` dropped below tolerance.
fn power_iterate(b: &Matrix, start: Vec<f64>, cfg: &LinalgConfig) -> Result<(f64, usize)> {
    let mut v = start;
    let nv = norm2(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    let mut residual = f64::INFINITY;
    for it in 0..cfg.power_max_iter {
        let w = b.mul_vec_unchecked(&v);
        let mu: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
        let wn = norm2(&w);
        if wn == 0.0 {
            // Start vector annihilated; nudge it off the null space.
            v = vec![1.0; v.len()];
            v[0] += 1e-9 + it as f64;
            let nv = norm2(&v);
            v.iter_mut().for_each(|x| *x /= nv);
            continue;
        }
        residual = w.iter().zip(&v).map(|(wi, vi)| (wi - mu * vi).powi(2)).sum::<f64>().sqrt();
        if residual <= cfg.power_rel_tol * mu.abs() {
            return Ok((mu, it));
        }
        v = w.into_iter().map(|x| x / wn).collect();
    }
    Err(Error::NoConvergence { what: "power iteration", iterations: cfg.power_max_iter, residual, last: v })
}

/// All eigenvalues of a symmetric matrix in ascending order.
pub fn symmetric_eigenvalues(s: &Matrix) -> Result<Vec<f64>> {
    symmetric_eigenvalues_with(s, &LinalgConfig::default())
}

/// Cyclic Jacobi rotations until the off-diagonal mass falls below
/// `jacobi_rel_tol * ‖S‖_F`.
pub fn symmetric_eigenvalues_with(s: &Matrix, cfg: &LinalgConfig) -> Result<Vec<f64>> {
    if !s.is_square() {
        return Err(Error::NotSquare { rows: s.rows, cols: s.cols });
    }
    let asym = s.max_asymmetry().unwrap_or(0.0);
    if asym > cfg.symmetry_tol {
        return Err(Error::Asymmetric { max_asymmetry: asym });
    }
    let n = s.rows;
    // Symmetrize exactly so rotations act on a truly symmetric matrix.
    let mut a = s.clone();
    for i in 0..n {
        for j in (i + 1)..n {
            let m = 0.5 * (a.get(i, j) + a.get(j, i));
            a.set(i, j, m);
            a.set(j, i, m);
        }
    }
    let target = cfg.jacobi_rel_tol * a.frobenius_norm();
    let off_norm = |a: &Matrix| -> f64 {
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    acc += a.get(i, j).powi(2);
                }
            }
        }
        acc.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= target {
            break;
        }
        if sweeps == cfg.jacobi_max_sweeps {
            return Err(Error::NoConvergence {
                what: "Jacobi eigenvalue sweeps",
                iterations: sweeps,
                residual: off,
                last: (0..n).map(|i| a.get(i, i)).collect(),
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let (akp, akq) = (a.get(k, p), a.get(k, q));
                    a.set(k, p, c * akp - sn * akq);
                    a.set(k, q, sn * akp + c * akq);
                }
                for k in 0..n {
                    let (apk, aqk) = (a.get(p, k), a.get(q, k));
                    a.set(p, k, c * apk - sn * aqk);
                    a.set(q, k, sn * apk + c * aqk);
                }
                a.set(p, q, 0.0);
                a.set(q, p, 0.0);
            }
        }
        sweeps += 1;
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    eig.sort_by(|x, y| x.total_cmp(y));
    Ok(eig)
}

/// Kronecker product `A ⊗ B`.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, ca, rb, cb) = (a.rows, a.cols, b.rows, b.cols);
    let (rows, cols) = (ra * rb, ca * cb);
    let mut out = vec![0.0; rows * cols];
    for i in 0..ra {
        for j in 0..ca {
            let aij = a.get(i, j);
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k) * cols + j * cb + l] = aij * b.get(k, l);
                }
            }
        }
    }
    Matrix::from_parts(rows, cols, out)
}

/// Result of [`inverse`].
#[derive(Debug, Clone, PartialEq)]
pub struct Inverse {
    pub matrix: Matrix,
    /// Ratio of the largest to the smallest pivot magnitude.
    pub condition_estimate: f64,
}

pub fn inverse(q: &Matrix) -> Result<Inverse> {
    inverse_with(q, &LinalgConfig::default())
}

/// Gauss-Jordan elimination with partial pivoting.
pub fn inverse_with(q: &Matrix, cfg: &LinalgConfig) -> Result<Inverse> {
    if !q.is_square() {
        return Err(Error::NotSquare { rows: q.rows, cols: q.cols });
    }
    let n = q.rows;
    let threshold = cfg.singular_rel_tol * q.max_abs();
    let mut a = q.clone();
    let mut inv = Matrix::identity(n);
    let (mut pmax, mut pmin) = (0.0_f64, f64::INFINITY);

    for col in 0..n {
        let pivot_row =
            (col..n).max_by(|&i, &j| a.get(i, col).abs().total_cmp(&a.get(j, col).abs())).expect("nonempty range");
        let pivot = a.get(pivot_row, col);
        if pivot.abs() < threshold || pivot == 0.0 {
            return Err(Error::Singular { pivot: pivot.abs(), threshold });
        }
        pmax = pmax.max(pivot.abs());
        pmin = pmin.min(pivot.abs());
        if pivot_row != col {
            for k in 0..n {
                let (x, y) = (a.get(col, k), a.get(pivot_row, k));
                a.set(col, k, y);
                a.set(pivot_row, k, x);
                let (x, y) = (inv.get(col, k), inv.get(pivot_row, k));
                inv.set(col, k, y);
                inv.set(pivot_row, k, x);
            }
        }
        for k in 0..n {
            a.set(col, k, a.get(col, k) / pivot);
            inv.set(col, k, inv.get(col, k) / pivot);
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a.get(r, col);
            if factor == 0.0 {
                continue;
            }
            for k in 0..n {
                a.set(r, k, a.get(r, k) - factor * a.get(col, k));
                inv.set(r, k, inv.get(r, k) - factor * inv.get(col, k));
            }
        }
    }
    Ok(Inverse { matrix: inv, condition_estimate: pmax / pmin })
}
