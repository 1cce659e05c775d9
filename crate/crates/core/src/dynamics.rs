//! Discrete-time systems `x_{k+1} = f_k(x_k)` with Jacobians, orbits,
//! p-fold compositions and their Jacobian products, plus the built-in maps
//! (logistic, time-varying logistic, Hénon, linear time-varying).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};

/// Any state component beyond this magnitude aborts an orbit.
pub const DIVERGENCE_BOUND: f64 = 1e12;

type EvalFn = dyn Fn(usize, &[f64]) -> Vec<f64> + Send + Sync;
type JacobianFn = dyn Fn(usize, &[f64]) -> Matrix + Send + Sync;

/// A (possibly time-varying) map on `R^dim` together with its Jacobian.
///
/// Cheap to clone; the rules are shared behind `Arc`.
#[derive(Clone)]
pub struct MapSystem {
    name: String,
    dim: usize,
    eval: Arc<EvalFn>,
    jacobian: Arc<JacobianFn>,
    /// `Some(1)` for time-invariant maps, `Some(m)` for maps cycling through
    /// `m` members, `None` for general time dependence.
    period: Option<usize>,
    linear: bool,
}

impl fmt::Debug for MapSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MapSystem")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("period", &self.period)
            .field("linear", &self.linear)
            .finish()
    }
}

impl MapSystem {
    /// General time-varying system.
    pub fn new<F, J>(name: impl Into<String>, dim: usize, eval: F, jacobian: J) -> Self
    where
        F: Fn(usize, &[f64]) -> Vec<f64> + Send + Sync + 'static,
        J: Fn(usize, &[f64]) -> Matrix + Send + Sync + 'static,
    {
        assert!(dim > 0, "state dimension must be positive");
        Self { name: name.into(), dim, eval: Arc::new(eval), jacobian: Arc::new(jacobian), period: None, linear: false }
    }

    /// Time-invariant system `x ↦ f(x)`.
    pub fn autonomous<F, J>(name: impl Into<String>, dim: usize, f: F, df: J) -> Self
    where
        F: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
        J: Fn(&[f64]) -> Matrix + Send + Sync + 'static,
    {
        Self::new(name, dim, move |_, x| f(x), move |_, x| df(x)).with_period(1)
    }

    /// Declares that `f_{k+m} = f_k` for all `k`.
    pub fn with_period(mut self, m: usize) -> Self {
        assert!(m > 0, "period must be positive");
        self.period = Some(m);
        self
    }

    fn mark_linear(mut self) -> Self {
        self.linear = true;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn period(&self) -> Option<usize> {
        self.period
    }

    pub fn is_time_invariant(&self) -> bool {
        self.period == Some(1)
    }

    pub fn is_linear(&self) -> bool {
        self.linear
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::dims(self.dim, x.len()));
        }
        Ok(())
    }

    /// `f_k(x)`, unchecked for divergence.
    pub fn eval(&self, k: usize, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x)?;
        Ok((self.eval)(k, x))
    }

    /// `Df_k(x)`.
    pub fn jacobian(&self, k: usize, x: &[f64]) -> Result<Matrix> {
        self.check_dim(x)?;
        Ok((self.jacobian)(k, x))
    }

    pub(crate) fn eval_raw(&self, k: usize, x: &[f64]) -> Vec<f64> {
        (self.eval)(k, x)
    }

    pub(crate) fn jacobian_raw(&self, k: usize, x: &[f64]) -> Matrix {
        (self.jacobian)(k, x)
    }

    /// One step with the divergence check; `k` is the index of the result.
    pub(crate) fn step_checked(&self, k: usize, x: &[f64]) -> Result<Vec<f64>> {
        let next = (self.eval)(k, x);
        check_state(&next, k + 1)?;
        Ok(next)
    }

    // Built-in catalogue.

    /// Logistic map `x ↦ αx(1 − x)`, which keeps `[0, 1]` invariant for `α ∈ [0, 4]`.
    pub fn logistic(alpha: f64) -> Result<Self> {
        if !(0.0..=4.0).contains(&alpha) {
            return Err(Error::invalid(format!("logistic parameter {alpha} outside [0, 4]")));
        }
        Ok(Self::autonomous(
            format!("logistic({alpha})"),
            1,
            move |x| vec![alpha * x[0] * (1.0 - x[0])],
            move |x| Matrix::scalar(alpha * (1.0 - 2.0 * x[0])),
        ))
    }

    /// Logistic map whose parameter alternates `base + e` (even steps) and
    /// `base − e` (odd steps).
    pub fn time_varying_logistic(base: f64, e: f64) -> Result<Self> {
        if !base.is_finite() || !e.is_finite() {
            return Err(Error::invalid("time-varying logistic parameters must be finite"));
        }
        let alpha = move |k: usize| if k.is_multiple_of(2) { base + e } else { base - e };
        Ok(Self::new(
            format!("logistic-tv({base}, {e})"),
            1,
            move |k, x| vec![alpha(k) * x[0] * (1.0 - x[0])],
            move |k, x| Matrix::scalar(alpha(k) * (1.0 - 2.0 * x[0])),
        )
        .with_period(2))
    }

    /// Hénon map `(x, y) ↦ (y + 1 − a x², b x)`.
    pub fn henon(a: f64, b: f64) -> Self {
        Self::autonomous(
            format!("henon({a}, {b})"),
            2,
            move |s| vec![s[1] + 1.0 - a * s[0] * s[0], b * s[0]],
            move |s| Matrix::from_parts(2, 2, vec![-2.0 * a * s[0], 1.0, b, 0.0]),
        )
    }

    /// The chaotic Hénon map, `a = 1.4`, `b = 0.3`.
    pub fn henon_classic() -> Self {
        Self::henon(1.4, 0.3)
    }

    /// Time-invariant linear map `x ↦ Ax`.
    pub fn linear(a: Matrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
        }
        let dim = a.rows();
        let a2 = a.clone();
        Ok(Self::autonomous("linear", dim, move |x| a.mul_vec_unchecked(x), move |_| a2.clone()).mark_linear())
    }

    /// Linear time-varying map `x ↦ A_k x`. The rule must return `dim × dim`
    /// matrices.
    pub fn linear_tv<R>(name: impl Into<String>, dim: usize, rule: R) -> Self
    where
        R: Fn(usize) -> Matrix + Send + Sync + 'static,
    {
        let rule = Arc::new(rule);
        let r2 = Arc::clone(&rule);
        Self::new(name, dim, move |k, x| rule(k).mul_vec_unchecked(x), move |k, _| r2(k)).mark_linear()
    }

    /// `A_k = [[0.5, λᵏ], [0, 0.5]]`.
    pub fn example1_linear(lambda: f64) -> Self {
        Self::linear_tv(format!("example1({lambda})"), 2, move |k| example1_matrix(lambda, k))
    }

    /// Cycles through time-invariant members: `f_k = members[k mod m]`.
    pub fn alternating(members: Vec<MapSystem>) -> Result<Self> {
        if members.len() < 2 {
            return Err(Error::invalid("an alternating map needs at least two members"));
        }
        let dim = members[0].dim;
        if let Some(bad) = members.iter().find(|s| s.dim != dim) {
            return Err(Error::dims(dim, bad.dim));
        }
        if members.iter().any(|s| !s.is_time_invariant()) {
            return Err(Error::invalid("alternating map members must be time-invariant"));
        }
        let m = members.len();
        let name = format!("alternating({})", members.iter().map(|s| s.name.as_str()).collect::<Vec<_>>().join(", "));
        let linear = members.iter().all(|s| s.linear);
        let members = Arc::new(members);
        let m2 = Arc::clone(&members);
        let sys =
            Self::new(name, dim, move |k, x| members[k % m].eval_raw(0, x), move |k, x| m2[k % m].jacobian_raw(0, x))
                .with_period(m);
        Ok(if linear { sys.mark_linear() } else { sys })
    }
}

/// The matrix `[[0.5, λᵏ], [0, 0.5]]`.
pub fn example1_matrix(lambda: f64, k: usize) -> Matrix {
    Matrix::from_parts(2, 2, vec![0.5, lambda.powi(k as i32), 0.0, 0.5])
}

fn check_state(x: &[f64], step: usize) -> Result<()> {
    if x.iter().any(|v| !v.is_finite() || v.abs() > DIVERGENCE_BOUND) {
        return Err(Error::Divergence { step });
    }
    Ok(())
}

/// States `x_{k0}, …, x_{k0+len−1}` starting from `x0` at step `k0`.
pub fn orbit(sys: &MapSystem, x0: &[f64], k0: usize, len: usize) -> Result<Vec<Vector>> {
    if len == 0 {
        return Err(Error::invalid("orbit length must be at least 1"));
    }
    sys.check_dim(x0)?;
    check_state(x0, k0)?;
    let mut out = Vec::with_capacity(len);
    let mut x = x0.to_vec();
    for k in k0..k0 + len - 1 {
        let next = sys.step_checked(k, &x)?;
        out.push(Vector::from_vec_unchecked(std::mem::replace(&mut x, next)));
    }
    out.push(Vector::from_vec_unchecked(x));
    Ok(out)
}

/// `f_{k+p−1} ∘ ⋯ ∘ f_k (x)`.
pub fn p_compose(sys: &MapSystem, k: usize, x: &[f64], p: usize) -> Result<Vector> {
    if p == 0 {
        return Err(Error::invalid("p must be at least 1"));
    }
    sys.check_dim(x)?;
    let mut x = x.to_vec();
    for j in k..k + p {
        x = sys.step_checked(j, &x)?;
    }
    Ok(Vector::from_vec_unchecked(x))
}

/// `Df_{k+p−1}(x_{k+p−1}) ⋯ Df_k(x_k)` along the orbit from `(k, x)`.
pub fn p_jacobian(sys: &MapSystem, k: usize, x: &[f64], p: usize) -> Result<Matrix> {
    if p == 0 {
        return Err(Error::invalid("p must be at least 1"));
    }
    sys.check_dim(x)?;
    let mut state = x.to_vec();
    let mut product = sys.jacobian_raw(k, &state);
    for j in k + 1..k + p {
        state = sys.step_checked(j - 1, &state)?;
        product = sys.jacobian_raw(j, &state).mul_unchecked(&product);
    }
    Ok(product)
}

/// `A_{k+p−1} ⋯ A_{k+1} A_k` for a matrix rule `k ↦ A_k`.
pub fn linear_p_matrix<R>(rule: R, k: usize, p: usize) -> Result<Matrix>
where
    R: Fn(usize) -> Matrix,
{
    if p == 0 {
        return Err(Error::invalid("p must be at least 1"));
    }
    let mut product = rule(k);
    if !product.is_square() {
        return Err(Error::NotSquare { rows: product.rows(), cols: product.cols() });
    }
    for j in k + 1..k + p {
        let a = rule(j);
        if a.rows() != product.rows() || a.cols() != product.cols() {
            return Err(Error::dims(
                format!("{}x{}", product.rows(), product.cols()),
                format!("{}x{}", a.rows(), a.cols()),
            ));
        }
        product = a.mul_unchecked(&product);
    }
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn logistic_orbit() {
        let sys = MapSystem::logistic(2.0).unwrap();
        let orb = orbit(&sys, &[0.25], 0, 3).unwrap();
        let xs: Vec<f64> = orb.iter().map(|v| v[0]).collect();
        assert_eq!(xs, vec![0.25, 0.375, 0.46875]);
        assert!(MapSystem::logistic(4.5).is_err());
        assert!(MapSystem::logistic(-0.1).is_err());
    }

    #[test]
    fn henon_orbit_from_origin() {
        let sys = MapSystem::henon_classic();
        let orb = orbit(&sys, &[0.0, 0.0], 0, 2).unwrap();
        assert_eq!(orb[0].as_slice(), &[0.0, 0.0]);
        assert_eq!(orb[1].as_slice(), &[1.0, 0.0]);
    }

    #[test]
    fn single_point_orbit() {
        let sys = MapSystem::henon_classic();
        let orb = orbit(&sys, &[0.3, -0.2], 7, 1).unwrap();
        assert_eq!(orb, vec![Vector::new(vec![0.3, -0.2]).unwrap()]);
        assert!(orbit(&sys, &[0.3, -0.2], 0, 0).is_err());
        assert!(orbit(&sys, &[0.3], 0, 2).is_err());
    }

    #[test]
    fn divergence_is_reported_with_step() {
        let sys = MapSystem::autonomous("doubling", 1, |x| vec![1e6 * x[0]], |_| Matrix::scalar(1e6));
        match orbit(&sys, &[1.0], 0, 10) {
            Err(Error::Divergence { step }) => assert_eq!(step, 3),
            other => panic!("expected divergence, got {other:?}"),
        }
        // Hénon escapes from far outside its basin.
        assert!(matches!(orbit(&MapSystem::henon_classic(), &[3.0, 3.0], 0, 100), Err(Error::Divergence { .. })));
    }

    #[test]
    fn p_compose_examples() {
        let sys = MapSystem::logistic(2.0).unwrap();
        assert_eq!(p_compose(&sys, 0, &[0.25], 2).unwrap()[0], 0.46875);
        let henon = MapSystem::henon_classic();
        let x = [0.2, 0.1];
        assert_eq!(p_compose(&henon, 4, &x, 1).unwrap().into_inner(), henon.eval(4, &x).unwrap());
        let g = MapSystem::autonomous("g", 1, |x| vec![x[0] + 1.0], |_| Matrix::scalar(1.0));
        let h = MapSystem::autonomous("h", 1, |x| vec![2.0 * x[0]], |_| Matrix::scalar(2.0));
        let alt = MapSystem::alternating(vec![g, h]).unwrap();
        // h(g(3)) = 8, while g(h(3)) would be 7.
        assert_eq!(p_compose(&alt, 0, &[3.0], 2).unwrap()[0], 8.0);
        assert_eq!(p_compose(&alt, 1, &[3.0], 2).unwrap()[0], 7.0);
        assert!(p_compose(&alt, 0, &[3.0], 0).is_err());
    }

    #[test]
    fn p_jacobian_examples() {
        let sys = MapSystem::example1_linear(0.9);
        let j = p_jacobian(&sys, 0, &[1.0, -2.0], 2).unwrap();
        let expected = [0.25, 0.95, 0.0, 0.25];
        for (a, b) in j.as_slice().iter().zip(expected) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
        let logistic = MapSystem::logistic(3.3).unwrap();
        for p in 1..5 {
            assert_eq!(p_jacobian(&logistic, 0, &[0.5], p).unwrap().get(0, 0), 0.0);
        }
        let henon = MapSystem::henon_classic();
        let j = p_jacobian(&henon, 0, &[0.0, 0.0], 1).unwrap();
        assert_eq!(j.as_slice(), &[-0.0, 1.0, 0.3, 0.0]);
    }

    #[test]
    fn linear_p_matrix_examples() {
        let rule = |k| example1_matrix(0.9, k);
        let single = linear_p_matrix(rule, 4, 1).unwrap();
        for (a, b) in single.as_slice().iter().zip([0.5, 0.6561, 0.0, 0.5]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
        let m = linear_p_matrix(rule, 0, 3).unwrap();
        // 0.5² · (1 + 0.9 + 0.81)
        let expected = [0.125, 0.25 * 2.71, 0.0, 0.125];
        for (a, b) in m.as_slice().iter().zip(expected) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
        assert_eq!(linear_p_matrix(|_| Matrix::identity(3), 2, 9).unwrap(), Matrix::identity(3));
        let bad = |k: usize| if k == 0 { Matrix::identity(2) } else { Matrix::identity(3) };
        assert!(linear_p_matrix(bad, 0, 2).is_err());
    }

    #[test]
    fn builtin_time_invariance_spot_check() {
        let systems = [
            MapSystem::logistic(3.7).unwrap(),
            MapSystem::henon_classic(),
            MapSystem::linear(Matrix::diag(&[2.0, 0.5])).unwrap(),
        ];
        for sys in &systems {
            assert!(sys.is_time_invariant());
            let x = vec![0.3; sys.dim()];
            let base = sys.eval(0, &x).unwrap();
            for k in [1, 2, 17, 1000] {
                assert_eq!(sys.eval(k, &x).unwrap(), base);
            }
        }
    }

    #[test]
    fn time_varying_logistic_phase() {
        let sys = MapSystem::time_varying_logistic(3.075, 0.5).unwrap();
        assert_eq!(sys.period(), Some(2));
        assert_eq!(sys.eval(0, &[0.5]).unwrap()[0], 3.575 / 4.0);
        assert_eq!(sys.eval(1, &[0.5]).unwrap()[0], 2.575 / 4.0);
        assert_eq!(sys.eval(2, &[0.5]).unwrap()[0], 3.575 / 4.0);
    }

    #[test]
    fn alternating_validation() {
        let l = MapSystem::logistic(2.0).unwrap();
        assert!(MapSystem::alternating(vec![l.clone()]).is_err());
        assert!(MapSystem::alternating(vec![l.clone(), MapSystem::henon_classic()]).is_err());
        assert!(MapSystem::alternating(vec![l, MapSystem::example1_linear(0.9)]).is_err());
    }
}
