//! Reactivity along orbits: per-step series, prefix means, sup-mean and
//! lim-mean estimates, and the consequences of sup-mean contraction
//! (geometric convergence of orbit pairs, fixed points, periodic orbits).

use serde::{Deserialize, Serialize};

use crate::dynamics::{orbit, p_compose, p_jacobian, MapSystem};
use crate::error::{Error, Result};
use crate::linalg::{dist2, Vector};
use crate::norms::NormSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesSource {
    /// Matrix products of a linear (time-varying) rule.
    LinearRule,
    /// Jacobian products along an orbit of a nonlinear map.
    OrbitJacobian,
}

/// Reactivities `r_k` of the p-iteration linearization at steps
/// `k0, …, k0 + N − 1`.
#[derive(Debug, Clone)]
pub struct ReactivitySeries {
    pub p: usize,
    pub k0: usize,
    pub norm: NormSpec,
    pub values: Vec<f64>,
    pub source: SeriesSource,
}

pub fn stepwise_reactivity(
    sys: &MapSystem,
    norm: &NormSpec,
    x0: &[f64],
    k0: usize,
    window: usize,
    p: usize,
) -> Result<ReactivitySeries> {
    if window == 0 || p == 0 {
        return Err(Error::invalid("window and p must be at least 1"));
    }
    if norm.dim() != sys.dim() {
        return Err(Error::dims(sys.dim(), norm.dim()));
    }
    let states = orbit(sys, x0, k0, window)?;
    let values = states
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let jac = p_jacobian(sys, k0 + i, x, p)?;
            let r = norm.reactivity(&jac)?;
            if !r.is_finite() {
                return Err(Error::Overflow { step: k0 + i });
            }
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    let source = if sys.is_linear() { SeriesSource::LinearRule } else { SeriesSource::OrbitJacobian };
    Ok(ReactivitySeries { p, k0, norm: norm.clone(), values, source })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    SupMeanContractive,
    SupMeanReactive,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanReport {
    /// Entry `N − 1` is `(1/N) Σ_{k<N} r_k`.
    pub prefix_means: Vec<f64>,
    /// Largest prefix mean within the window; a finite-window stand-in for
    /// the supremum over all horizons.
    pub sup_mean: f64,
    /// Final prefix mean.
    pub lim_mean_estimate: f64,
    /// Whether the final prefix mean agrees with the one a decade earlier
    /// (at `N/10`) to within `convergence_tol`.
    pub converged: bool,
    pub classification: Classification,
    pub tolerance_band: f64,
    pub convergence_tol: f64,
    pub window: usize,
}

impl MeanReport {
    /// Contraction factor `λ = R̄ + 1` implied by the sup-mean.
    pub fn contraction_factor(&self) -> f64 {
        self.sup_mean + 1.0
    }
}

pub const DEFAULT_BAND: f64 = 1e-9;
pub const DEFAULT_CONVERGENCE_TOL: f64 = 1e-3;

pub fn mean_report(series: &ReactivitySeries, band: f64) -> Result<MeanReport> {
    mean_report_from_values(&series.values, band, DEFAULT_CONVERGENCE_TOL)
}

pub fn mean_report_from_values(values: &[f64], band: f64, convergence_tol: f64) -> Result<MeanReport> {
    if values.is_empty() {
        return Err(Error::Empty);
    }
    let mut prefix_means = Vec::with_capacity(values.len());
    let mut sum = 0.0;
    for (i, r) in values.iter().enumerate() {
        sum += r;
        prefix_means.push(sum / (i + 1) as f64);
    }
    let sup_mean = prefix_means.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let n = prefix_means.len();
    let lim_mean_estimate = prefix_means[n - 1];
    let converged = n >= 10 && {
        let earlier = prefix_means[n / 10 - 1];
        (lim_mean_estimate - earlier).abs() < convergence_tol
    };
    let classification = if sup_mean < -band {
        Classification::SupMeanContractive
    } else if sup_mean > band {
        Classification::SupMeanReactive
    } else {
        Classification::Inconclusive
    };
    Ok(MeanReport {
        prefix_means,
        sup_mean,
        lim_mean_estimate,
        converged,
        classification,
        tolerance_band: band,
        convergence_tol,
        window: n,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractionCheck {
    pub holds: bool,
    /// Largest `‖x_k − y_k‖ / (λᵏ ‖x_0 − y_0‖)` over `k = 1..=K`.
    pub worst_ratio: f64,
    pub worst_k: usize,
    pub first_violation: Option<usize>,
}

/// Checks `‖x_k − y_k‖ ≤ λᵏ ‖x_0 − y_0‖` (with relative slack 1e-9) along
/// both orbits for `k = 1..=K`.
pub fn verify_contraction_inequality(
    sys: &MapSystem,
    norm: &NormSpec,
    x0: &[f64],
    y0: &[f64],
    horizon: usize,
    lambda: f64,
) -> Result<ContractionCheck> {
    if horizon == 0 {
        return Err(Error::invalid("horizon must be at least 1"));
    }
    if !(lambda >= 0.0) {
        return Err(Error::invalid("contraction factor must be nonnegative"));
    }
    let diff = |a: &[f64], b: &[f64]| -> Result<f64> {
        let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        norm.vector_norm(&d)
    };
    let d0 = diff(x0, y0)?;
    if d0 == 0.0 {
        return Err(Error::invalid("initial states must differ"));
    }
    let xs = orbit(sys, x0, 0, horizon + 1)?;
    let ys = orbit(sys, y0, 0, horizon + 1)?;
    let mut check = ContractionCheck { holds: true, worst_ratio: 0.0, worst_k: 1, first_violation: None };
    for k in 1..=horizon {
        let dk = diff(&xs[k], &ys[k])?;
        let bound = lambda.powi(k as i32) * d0;
        let ratio = if bound > 0.0 {
            dk / bound
        } else if dk == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        if ratio > check.worst_ratio {
            check.worst_ratio = ratio;
            check.worst_k = k;
        }
        if dk > bound * (1.0 + 1e-9) && check.first_violation.is_none() {
            check.holds = false;
            check.first_violation = Some(k);
        }
    }
    Ok(check)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationConfig {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for IterationConfig {
    fn default() -> Self {
        Self { tol: 1e-12, max_iter: 1_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPoint {
    pub x_star: Vector,
    pub iterations: usize,
    /// `‖z_{k+1} − z_k‖₂` at termination.
    pub cauchy_residual: f64,
}

/// Iterates `z ↦ f(z)` until successive iterates are within `tol`.
pub fn find_fixed_point(sys: &MapSystem, x0: &[f64], cfg: IterationConfig) -> Result<FixedPoint> {
    if !sys.is_time_invariant() {
        return Err(Error::invalid("fixed-point iteration needs a time-invariant map"));
    }
    let (x_star, iterations, cauchy_residual) = iterate_until_cauchy(sys, 1, x0, cfg, "fixed-point iteration")?;
    Ok(FixedPoint { x_star, iterations, cauchy_residual })
}

fn iterate_until_cauchy(
    sys: &MapSystem,
    p: usize,
    x0: &[f64],
    cfg: IterationConfig,
    what: &'static str,
) -> Result<(Vector, usize, f64)> {
    let mut z = Vector::from_slice(x0)?;
    let mut residual = f64::INFINITY;
    for it in 1..=cfg.max_iter {
        let next = p_compose(sys, 0, &z, p)?;
        residual = dist2(&next, &z);
        z = next;
        if residual < cfg.tol {
            return Ok((z, it, residual));
        }
    }
    Err(Error::NoConvergence { what, iterations: cfg.max_iter, residual, last: z.into_inner() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicOrbit {
    /// Minimal period `d`, a divisor of the requested `p`.
    pub period: usize,
    /// `x*, f_0(x*), …` (`d` points, starting at step 0).
    pub points: Vec<Vector>,
    pub iterations: usize,
}

/// Finds a fixed point of the p-fold composition (started at step 0) and
/// reduces it to its minimal period.
pub fn detect_periodic_orbit(sys: &MapSystem, p: usize, x0: &[f64], cfg: IterationConfig) -> Result<PeriodicOrbit> {
    if p == 0 {
        return Err(Error::invalid("p must be at least 1"));
    }
    match sys.period() {
        Some(m) if p.is_multiple_of(m) => {}
        Some(m) => return Err(Error::invalid(format!("p = {p} is not a multiple of the map period {m}"))),
        None => return Err(Error::invalid("periodic-orbit search needs a periodic (or time-invariant) map")),
    }
    let (x_star, iterations, _) = iterate_until_cauchy(sys, p, x0, cfg, "p-iteration")?;
    let m = sys.period().unwrap_or(1);
    let mut period = p;
    for d in (1..p).filter(|d| p.is_multiple_of(*d) && d % m == 0) {
        let back = p_compose(sys, 0, &x_star, d)?;
        if dist2(&back, &x_star) < 10.0 * cfg.tol {
            period = d;
            break;
        }
    }
    let points = orbit(sys, &x_star, 0, period)?;
    Ok(PeriodicOrbit { period, points, iterations })
}
