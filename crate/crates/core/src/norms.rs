//! Weighted L1 / L2 / L∞ norms, their induced operator norms, and the
//! reactivity `r = ‖A‖ − 1` of a linear map.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, norm2, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormFamily {
    L1,
    L2,
    Linf,
}

impl std::str::FromStr for NormFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l1" | "1" => Ok(NormFamily::L1),
            "l2" | "2" => Ok(NormFamily::L2),
            "linf" | "inf" | "l-inf" => Ok(NormFamily::Linf),
            other => Err(Error::invalid(format!("unknown norm family `{other}`"))),
        }
    }
}

/// A weighted norm `v ↦ ‖Qv‖_family`.
///
/// The weight must be invertible; the L2 family additionally requires it to
/// be symmetric positive definite.
#[derive(Debug, Clone, PartialEq)]
pub struct NormSpec {
    family: NormFamily,
    weight: Matrix,
    weight_inverse: Matrix,
}

impl NormSpec {
    pub fn new(family: NormFamily, weight: Matrix) -> Result<Self> {
        if !weight.is_square() {
            return Err(Error::NotSquare { rows: weight.rows(), cols: weight.cols() });
        }
        if family == NormFamily::L2 {
            let eig = linalg::symmetric_eigenvalues(&weight)?;
            if eig[0] <= 0.0 {
                return Err(Error::invalid(format!(
                    "L2 weight must be positive definite (smallest eigenvalue {})",
                    eig[0]
                )));
            }
        }
        let weight_inverse = linalg::inverse(&weight)?.matrix;
        Ok(Self { family, weight, weight_inverse })
    }

    /// Identity weight.
    pub fn unweighted(family: NormFamily, dim: usize) -> Self {
        let weight = Matrix::identity(dim);
        Self { family, weight_inverse: weight.clone(), weight }
    }

    pub fn family(&self) -> NormFamily {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.weight.rows()
    }

    pub fn weight(&self) -> &Matrix {
        &self.weight
    }

    pub fn weight_inverse(&self) -> &Matrix {
        &self.weight_inverse
    }

    fn raw_norm(&self, v: &[f64]) -> f64 {
        match self.family {
            NormFamily::L1 => v.iter().map(|x| x.abs()).sum(),
            NormFamily::L2 => norm2(v),
            NormFamily::Linf => v.iter().fold(0.0, |m, x| m.max(x.abs())),
        }
    }

    /// `‖Qv‖`.
    pub fn vector_norm(&self, v: &[f64]) -> Result<f64> {
        if v.len() != self.dim() {
            return Err(Error::dims(self.dim(), v.len()));
        }
        Ok(self.raw_norm(&self.weight.mul_vec_unchecked(v)))
    }

    /// Induced operator norm of `A`: the unweighted norm of `Q A Q⁻¹`.
    pub fn operator_norm(&self, a: &Matrix) -> Result<f64> {
        if !a.is_square() {
            return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
        }
        if a.rows() != self.dim() {
            return Err(Error::dims(self.dim(), a.rows()));
        }
        let m = if *a == Matrix::identity(a.rows()) {
            // QIQ⁻¹ = I for every weight; skip the rounding of the product.
            a.clone()
        } else if self.weight.is_diagonal() {
            // Diagonal weights scale entries directly: (QAQ⁻¹)_ij = q_i a_ij / q_j.
            let n = a.rows();
            let mut m = a.clone();
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, self.weight.get(i, i) * a.get(i, j) * self.weight_inverse.get(j, j));
                }
            }
            m
        } else {
            self.weight.mul_unchecked(a).mul_unchecked(&self.weight_inverse)
        };
        let n = m.rows();
        Ok(match self.family {
            NormFamily::L1 => (0..n).map(|j| (0..n).map(|i| m.get(i, j).abs()).sum::<f64>()).fold(0.0, f64::max),
            NormFamily::L2 => linalg::spectral_norm(&m)?,
            NormFamily::Linf => (0..n).map(|i| m.row(i).iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max),
        })
    }

    /// Reactivity `‖A‖ − 1`.
    pub fn reactivity(&self, a: &Matrix) -> Result<f64> {
        Ok(self.operator_norm(a)? - 1.0)
    }

    /// Logarithmic reactivity `log ‖A‖`; undefined for a zero operator norm.
    pub fn log_reactivity(&self, a: &Matrix) -> Result<f64> {
        let n = self.operator_norm(a)?;
        if n == 0.0 {
            return Err(Error::invalid("logarithmic reactivity of a zero operator"));
        }
        Ok(n.ln())
    }
}

/// Free-function form of [`NormSpec::reactivity`].
pub fn reactivity_linear(norm: &NormSpec, a: &Matrix) -> Result<f64> {
    norm.reactivity(a)
}
