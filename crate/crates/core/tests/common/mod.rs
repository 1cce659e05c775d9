//! Strategies and checks shared by the property suites and the acceptance
//! run.

#![allow(dead_code)]

use std::sync::OnceLock;

use discrete_contraction::dynamics::{orbit, p_compose, p_jacobian, MapSystem};
use discrete_contraction::linalg::{kron, spectral_norm, Matrix};
use discrete_contraction::mean_reactivity::{
    mean_report_from_values, stepwise_reactivity, verify_contraction_inequality, Classification, DEFAULT_BAND,
    DEFAULT_CONVERGENCE_TOL,
};
use discrete_contraction::net_sync::{general_transverse_step, SpectrumInfo};
use discrete_contraction::norms::{NormFamily, NormSpec};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn matrix(n: usize, range: f64) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-range..range, n * n).prop_map(move |d| Matrix::new(n, n, d).unwrap())
}

pub fn matrix_pair(max_n: usize, range: f64) -> impl Strategy<Value = (Matrix, Matrix)> {
    (1..=max_n).prop_flat_map(move |n| (matrix(n, range), matrix(n, range)))
}

pub fn family() -> impl Strategy<Value = NormFamily> {
    prop_oneof![Just(NormFamily::L1), Just(NormFamily::L2), Just(NormFamily::Linf)]
}

/// Norm with a positive diagonal weight of the given dimension.
pub fn weighted_norm(n: usize) -> impl Strategy<Value = NormSpec> {
    (family(), prop::collection::vec(0.2..5.0f64, n)).prop_map(|(f, w)| NormSpec::new(f, Matrix::diag(&w)).unwrap())
}

pub fn check_submultiplicative(norm: &NormSpec, a: &Matrix, b: &Matrix) -> Result<(), TestCaseError> {
    let ab = a.matmul(b).unwrap();
    let lhs = norm.operator_norm(&ab).unwrap();
    let rhs = norm.operator_norm(a).unwrap() * norm.operator_norm(b).unwrap();
    prop_assert!(lhs <= rhs * (1.0 + 1e-10) + 1e-12, "‖AB‖ = {lhs} > ‖A‖‖B‖ = {rhs}");
    Ok(())
}

/// `∏_{k<N} (r_k + 1) ≤ (mean_N + 1)^N` for every prefix.
pub fn check_am_gm(values: &[f64]) -> Result<(), TestCaseError> {
    let report = mean_report_from_values(values, DEFAULT_BAND, DEFAULT_CONVERGENCE_TOL).unwrap();
    let mut product = 1.0;
    for (n, (&r, &m)) in values.iter().zip(&report.prefix_means).enumerate() {
        product *= r + 1.0;
        let bound = (m + 1.0).powi(n as i32 + 1);
        prop_assert!(product <= bound * (1.0 + 1e-12) + 1e-300, "prefix {}: {product} > {bound}", n + 1);
    }
    Ok(())
}

/// Central differences of `p_compose` (step 1e-6) against `p_jacobian`,
/// relative to `max(‖J‖_F, 1)`.
pub fn check_fd_jacobian(sys: &MapSystem, k: usize, x: &[f64], p: usize) -> Result<(), TestCaseError> {
    let h = 1e-6;
    let jac = p_jacobian(sys, k, x, p).unwrap();
    let m = sys.dim();
    let mut err2 = 0.0;
    for j in 0..m {
        let mut plus = x.to_vec();
        let mut minus = x.to_vec();
        plus[j] += h;
        minus[j] -= h;
        let fp = p_compose(sys, k, &plus, p).unwrap();
        let fm = p_compose(sys, k, &minus, p).unwrap();
        for i in 0..m {
            let fd = (fp[i] - fm[i]) / (2.0 * h);
            err2 += (fd - jac.get(i, j)).powi(2);
        }
    }
    let rel = err2.sqrt() / jac.frobenius_norm().max(1.0);
    prop_assert!(rel <= 1e-5, "{} at k={k}, x={x:?}, p={p}: relative error {rel:e}", sys.name());
    Ok(())
}

/// Points of the classic Hénon attractor after a transient.
pub fn henon_attractor() -> &'static [Vec<f64>] {
    static POINTS: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    POINTS.get_or_init(|| {
        let states = orbit(&MapSystem::henon_classic(), &[0.1, 0.1], 0, 6000).unwrap();
        states[1000..].iter().map(|v| v.as_slice().to_vec()).collect()
    })
}

pub fn henon_point() -> impl Strategy<Value = Vec<f64>> {
    (0..5000usize).prop_map(|i| henon_attractor()[i].clone())
}

/// Smooth built-in, a step index, a state in its usual domain and a small p.
pub fn smooth_case() -> impl Strategy<Value = (MapSystem, usize, Vec<f64>, usize)> {
    let henon = (henon_point(), 0..50usize, 1..=6usize).prop_map(|(x, k, p)| (MapSystem::henon_classic(), k, x, p));
    let logistic = (2.5..4.0f64, 0.05..0.95f64, 0..50usize, 1..=4usize)
        .prop_map(|(a, x, k, p)| (MapSystem::logistic(a).unwrap(), k, vec![x], p));
    let tv = (0.1..0.9f64, 0.05..0.95f64, 0..50usize, 1..=4usize)
        .prop_map(|(e, x, k, p)| (MapSystem::time_varying_logistic(3.075, e).unwrap(), k, vec![x], p));
    let example1 = (0.0..1.0f64, -2.0..2.0f64, -2.0..2.0f64, 0..50usize, 1..=8usize)
        .prop_map(|(l, x, y, k, p)| (MapSystem::example1_linear(l), k, vec![x, y], p));
    prop_oneof![henon, logistic, tv, example1]
}

/// Laplacian-like spectrum `{0, λ₂, …, λ_n}` with `n ≤ 5`.
pub fn spectrum() -> impl Strategy<Value = SpectrumInfo> {
    prop::collection::vec(0.1..8.0f64, 1..=4).prop_map(|mut ls| {
        ls.push(0.0);
        SpectrumInfo::from_eigenvalues(ls).unwrap()
    })
}

/// Blockwise `σ1(Z(s))` against the dense Kronecker construction.
pub fn check_blockwise_kron(spec: &SpectrumInfo, dh: &Matrix, kappa: f64, s: &[f64]) -> Result<(), TestCaseError> {
    let f = MapSystem::henon_classic();
    let h = MapSystem::linear(dh.clone()).unwrap();
    let z = general_transverse_step(&f, &h, spec, kappa, s).unwrap();
    let blockwise = z.sigma1().unwrap();
    let df = f.jacobian(0, s).unwrap();
    let lambda_hat = Matrix::diag(spec.transverse());
    let k = spec.transverse().len();
    let dense = kron(&Matrix::identity(k), &df).sub(&kron(&lambda_hat, dh).scaled(kappa)).unwrap();
    let brute = spectral_norm(&dense).unwrap();
    prop_assert!((blockwise - brute).abs() <= 1e-10 * brute.max(1.0), "blockwise {blockwise} vs dense {brute}");
    Ok(())
}

/// Periodic linear rule cycling through three matrices rescaled to the
/// given spectral norms.
pub fn cyclic_rule(ms: &[Matrix; 3], targets: [f64; 3]) -> MapSystem {
    let scaled: Vec<Matrix> = ms
        .iter()
        .zip(targets)
        .map(|(m, t)| {
            let s = spectral_norm(m).unwrap();
            if s == 0.0 {
                Matrix::diag(&[t, t])
            } else {
                m.scaled(t / s)
            }
        })
        .collect();
    MapSystem::linear_tv("cyclic", 2, move |k| scaled[k % 3].clone())
}

pub fn contraction_case() -> impl Strategy<Value = (MapSystem, Vec<f64>, Vec<f64>)> {
    (
        [matrix(2, 1.0), matrix(2, 1.0), matrix(2, 1.0)],
        (0.2..0.95f64, 0.9..1.15f64, 0.2..0.95f64),
        prop::collection::vec(-5.0..5.0f64, 2),
        prop::collection::vec(-5.0..5.0f64, 2),
    )
        .prop_map(|(ms, (t0, t1, t2), x, y)| (cyclic_rule(&ms, [t0, t1, t2]), x, y))
}

/// On a sup-mean-contractive series, `‖x_k − y_k‖ ≤ (R̄ + 1)^k ‖x_0 − y_0‖`.
pub fn check_contraction(sys: &MapSystem, x0: &[f64], y0: &[f64]) -> Result<(), TestCaseError> {
    let horizon = 60;
    let norm = NormSpec::unweighted(NormFamily::L2, 2);
    let series = stepwise_reactivity(sys, &norm, x0, 0, horizon, 1).unwrap();
    let report = mean_report_from_values(&series.values, DEFAULT_BAND, DEFAULT_CONVERGENCE_TOL).unwrap();
    prop_assume!(report.classification == Classification::SupMeanContractive);
    prop_assume!(x0 != y0);
    let check = verify_contraction_inequality(sys, &norm, x0, y0, horizon, report.contraction_factor()).unwrap();
    prop_assert!(check.holds, "violated at k = {:?}, ratio {}", check.first_violation, check.worst_ratio);
    Ok(())
}
