//! Finite-time Lyapunov exponents along a direction, the maximal FTLE over
//! directions (through `σ1` of the Jacobian product), long-horizon maximum
//! Lyapunov exponent estimates, and the link between `σ1` and L2 reactivity.
//!
//! Long products are accumulated with periodic rescaling: the running
//! product is divided by its largest entry every [`RESCALE_EVERY`] steps and
//! the logarithm of the scale is kept separately, so `σ1` of products far
//! beyond `f64` range is still available as `log σ1`.

use serde::{Deserialize, Serialize};

use crate::dynamics::{p_jacobian, MapSystem};
use crate::error::{Error, Result};
use crate::linalg::{norm2, spectral_norm, Matrix, Vector};
use crate::norms::{NormFamily, NormSpec};

pub const RESCALE_EVERY: usize = 10;

/// Entries at or above this magnitude are treated as unrepresentable for the
/// direct (unrescaled) Jacobian product.
pub const DIRECT_PRODUCT_LIMIT: f64 = 1e100;

/// Prefactor applied to `log σ1` (or `log` of the directional growth).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `(1/p) log`, consistent with `(1/p) log ‖y_p‖/‖y_0‖`.
    #[default]
    OneOverP,
    /// `(1/2p) log σ1`, half the default.
    OneOver2P,
}

impl Convention {
    pub fn factor(self, p: usize) -> f64 {
        match self {
            Convention::OneOverP => 1.0 / p as f64,
            Convention::OneOver2P => 0.5 / p as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FtleResult {
    pub p: usize,
    /// Exponent in natural-log units; `-∞` when the perturbation is annihilated.
    pub value: f64,
    pub convention: Convention,
    pub x0: Vector,
    pub direction: Option<Vector>,
}

impl FtleResult {
    /// The Jacobian product killed the perturbation (a zero growth factor).
    pub fn is_annihilated(&self) -> bool {
        self.value == f64::NEG_INFINITY
    }
}

fn check_horizon(p: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::invalid("horizon p must be at least 1"));
    }
    Ok(())
}

/// `(1/p) log ‖Df^{(p)}(x0) u0‖₂`, renormalizing the perturbation each step.
pub fn ftle_direction(sys: &MapSystem, x0: &[f64], u0: &[f64], p: usize, convention: Convention) -> Result<FtleResult> {
    check_horizon(p)?;
    if u0.len() != sys.dim() {
        return Err(Error::dims(sys.dim(), u0.len()));
    }
    if (norm2(u0) - 1.0).abs() > 1e-12 {
        return Err(Error::invalid("direction must be a unit vector"));
    }
    let mut state = Vector::from_slice(x0)?;
    let mut y = u0.to_vec();
    let mut log_growth = 0.0;
    for k in 0..p {
        y = sys.jacobian(k, &state)?.mul_vec_unchecked(&y);
        let g = norm2(&y);
        if g == 0.0 {
            log_growth = f64::NEG_INFINITY;
            break;
        }
        log_growth += g.ln();
        y.iter_mut().for_each(|v| *v /= g);
        if k + 1 < p {
            state = Vector::from_vec_unchecked(sys.step_checked(k, &state)?);
        }
    }
    Ok(FtleResult {
        p,
        value: convention.factor(p) * log_growth,
        convention,
        x0: Vector::from_slice(x0)?,
        direction: Some(Vector::from_slice(u0)?),
    })
}

/// Running Jacobian product `M` with `Df^{(j)} = exp(log_scale) · M`.
struct ScaledProduct {
    matrix: Matrix,
    log_scale: f64,
}

impl ScaledProduct {
    fn new(dim: usize) -> Self {
        Self { matrix: Matrix::identity(dim), log_scale: 0.0 }
    }

    fn push(&mut self, jac: &Matrix, rescale: bool) {
        self.matrix = jac.mul_unchecked(&self.matrix);
        if rescale || self.matrix.max_abs() >= DIRECT_PRODUCT_LIMIT {
            let s = self.matrix.max_abs();
            if s > 0.0 && s.is_finite() {
                self.matrix = self.matrix.scaled(1.0 / s);
                self.log_scale += s.ln();
            }
        }
    }

    fn is_zero(&self) -> bool {
        self.matrix.max_abs() == 0.0
    }

    fn log_sigma1(&self) -> Result<f64> {
        if self.is_zero() {
            return Ok(f64::NEG_INFINITY);
        }
        Ok(self.log_scale + spectral_norm(&self.matrix)?.ln())
    }
}

/// `log σ1` of the Jacobian product from `(k0, x0)` evaluated at each
/// horizon in `checkpoints` (ascending).
fn log_sigma1_trace(sys: &MapSystem, x0: &[f64], k0: usize, checkpoints: &[usize]) -> Result<Vec<f64>> {
    let horizon = *checkpoints.last().expect("at least one checkpoint");
    let mut state = Vector::from_slice(x0)?;
    let mut product = ScaledProduct::new(sys.dim());
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut next = checkpoints.iter().peekable();
    for j in 1..=horizon {
        let k = k0 + j - 1;
        product.push(&sys.jacobian(k, &state)?, j % RESCALE_EVERY == 0);
        while next.peek() == Some(&&j) {
            out.push(product.log_sigma1()?);
            next.next();
        }
        if product.is_zero() {
            // Annihilated for good; every later horizon is -∞ as well.
            out.resize(checkpoints.len(), f64::NEG_INFINITY);
            return Ok(out);
        }
        if j < horizon {
            state = Vector::from_vec_unchecked(sys.step_checked(k, &state)?);
        }
    }
    Ok(out)
}

/// Maximal FTLE `(1/p) log σ1(Df^{(p)}(x0))`.
pub fn mftle(sys: &MapSystem, x0: &[f64], p: usize, convention: Convention) -> Result<FtleResult> {
    check_horizon(p)?;
    let log_sigma = log_sigma1_trace(sys, x0, 0, &[p])?[0];
    Ok(FtleResult {
        p,
        value: convention.factor(p) * log_sigma,
        convention,
        x0: Vector::from_slice(x0)?,
        direction: None,
    })
}

fn direct_product(sys: &MapSystem, x0: &[f64], p: usize) -> Result<Matrix> {
    let product = p_jacobian(sys, 0, x0, p)?;
    if !product.is_finite() || product.max_abs() >= DIRECT_PRODUCT_LIMIT {
        return Err(Error::Overflow { step: p });
    }
    Ok(product)
}

/// Maximal FTLE from the unrescaled product; fails with
/// [`Error::Overflow`] when the product is not representable.
pub fn mftle_direct(sys: &MapSystem, x0: &[f64], p: usize, convention: Convention) -> Result<FtleResult> {
    check_horizon(p)?;
    let sigma = spectral_norm(&direct_product(sys, x0, p)?)?;
    Ok(FtleResult {
        p,
        value: convention.factor(p) * sigma.ln(),
        convention,
        x0: Vector::from_slice(x0)?,
        direction: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MleEstimate {
    /// `(1/P) log σ1` at the full horizon; `-∞` when annihilated.
    pub value: f64,
    pub horizon: usize,
    pub burn_in: usize,
    /// `(horizon, value)` at `P/10`, `P/2` and `P`.
    pub trace: Vec<(usize, f64)>,
}

impl MleEstimate {
    pub fn is_annihilated(&self) -> bool {
        self.value == f64::NEG_INFINITY
    }
}

/// Maximum Lyapunov exponent estimate over a long horizon after discarding
/// a transient.
pub fn mle_estimate(sys: &MapSystem, x0: &[f64], horizon: usize, burn_in: usize) -> Result<MleEstimate> {
    if horizon < 1000 {
        return Err(Error::invalid("MLE horizon must be at least 1000"));
    }
    let mut state = Vector::from_slice(x0)?;
    for k in 0..burn_in {
        state = Vector::from_vec_unchecked(sys.step_checked(k, &state)?);
    }
    let checkpoints = [horizon / 10, horizon / 2, horizon];
    let logs = log_sigma1_trace(sys, &state, burn_in, &checkpoints)?;
    let trace: Vec<(usize, f64)> = checkpoints.iter().zip(&logs).map(|(&p, &l)| (p, l / p as f64)).collect();
    Ok(MleEstimate { value: trace[2].1, horizon, burn_in, trace })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReactivityFtleBridge {
    pub p: usize,
    /// `r₂[Df^{(p)}(x0)] = σ1 − 1`.
    pub r2: f64,
    pub mftle_one_over_p: f64,
    pub mftle_half: f64,
    /// `|MFTLE − (1/p) log(r₂ + 1)|`.
    pub residual_one_over_p: f64,
    /// `|MFTLE − (1/2p) log(r₂ + 1)|` under the halved prefactor.
    pub residual_half: f64,
}

/// Computes the L2 reactivity of the p-step Jacobian product and the maximal
/// FTLE (through the rescaled product) and reports how well
/// `MFTLE = c_p log(r₂ + 1)` holds under both prefactors.
pub fn reactivity_ftle_bridge(sys: &MapSystem, x0: &[f64], p: usize) -> Result<ReactivityFtleBridge> {
    check_horizon(p)?;
    let product = direct_product(sys, x0, p)?;
    let r2 = NormSpec::unweighted(NormFamily::L2, sys.dim()).reactivity(&product)?;
    let one = mftle(sys, x0, p, Convention::OneOverP)?.value;
    let half = mftle(sys, x0, p, Convention::OneOver2P)?.value;
    let log_norm = (r2 + 1.0).ln();
    let residual = |value: f64, conv: Convention| {
        let predicted = conv.factor(p) * log_norm;
        if value == predicted {
            0.0
        } else {
            (value - predicted).abs()
        }
    };
    Ok(ReactivityFtleBridge {
        p,
        r2,
        mftle_one_over_p: one,
        mftle_half: half,
        residual_one_over_p: residual(one, Convention::OneOverP),
        residual_half: residual(half, Convention::OneOver2P),
    })
}
