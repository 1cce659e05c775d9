mod common;

use std::sync::OnceLock;

use common::*;
use discrete_contraction::dynamics::{example1_matrix, p_compose, p_jacobian, MapSystem};
use discrete_contraction::ftle::{ftle_direction, mftle, mftle_direct, mle_estimate, Convention};
use discrete_contraction::interval_cert::{
    interval_image_quadratic, maximize_width, Interval, IntervalPair, Problem, SearchConfig,
};
use discrete_contraction::linalg::{inverse, kron, spectral_norm, symmetric_eigenvalues, Matrix, Vector};
use discrete_contraction::mean_reactivity::{
    detect_periodic_orbit, find_fixed_point, mean_report_from_values, stepwise_reactivity, IterationConfig,
    DEFAULT_BAND, DEFAULT_CONVERGENCE_TOL,
};
use discrete_contraction::net_sync::{
    kappa_bounds, simulate_coupled, transverse_p_product, BetaStats, Network, SimConfig,
};
use discrete_contraction::norms::{reactivity_linear, NormFamily, NormSpec};
use proptest::prelude::*;

fn cases() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn det(m: &Matrix) -> f64 {
    let n = m.rows();
    if n == 1 {
        return m.get(0, 0);
    }
    (0..n)
        .map(|j| {
            let minor: Vec<f64> = (1..n)
                .flat_map(|i| (0..n).filter(move |&c| c != j).map(move |c| (i, c)))
                .map(|(i, c)| m.get(i, c))
                .collect();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * m.get(0, j) * det(&Matrix::new(n - 1, n - 1, minor).unwrap())
        })
        .sum()
}

fn symmetric(n: usize) -> impl Strategy<Value = Matrix> {
    matrix(n, 5.0).prop_map(|m| m.add(&m.transpose()).unwrap().scaled(0.5))
}

fn embed3(a: &Matrix) -> Matrix {
    let mut d = vec![0.0; 9];
    for i in 0..2 {
        for j in 0..2 {
            d[3 * i + j] = a.get(i, j);
        }
    }
    Matrix::new(3, 3, d).unwrap()
}

proptest! {
    #![proptest_config(cases())]

    #[test]
    fn spectral_norm_is_submultiplicative((a, b) in matrix_pair(6, 10.0)) {
        let lhs = spectral_norm(&a.matmul(&b).unwrap()).unwrap();
        let rhs = spectral_norm(&a).unwrap() * spectral_norm(&b).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-10) + 1e-12);
    }

    #[test]
    fn power_iteration_matches_closed_form(a in matrix(2, 10.0)) {
        let closed = spectral_norm(&a).unwrap();
        let power = spectral_norm(&embed3(&a)).unwrap();
        prop_assert!(rel_close(closed, power, 1e-10), "{closed} vs {power}");
    }

    #[test]
    fn eigenvalues_are_roots_of_the_characteristic_polynomial(s in (1..=4usize).prop_flat_map(symmetric)) {
        let n = s.rows();
        let scale = s.max_abs().max(1.0).powi(n as i32);
        for l in symmetric_eigenvalues(&s).unwrap() {
            let shifted = s.sub(&Matrix::identity(n).scaled(l)).unwrap();
            prop_assert!(det(&shifted).abs() <= 1e-8 * scale, "det(S - {l} I) = {}", det(&shifted));
        }
    }

    #[test]
    fn inverse_times_q_is_identity(
        (n, m) in (1..=6usize).prop_flat_map(|n| (Just(n), matrix(n, 0.3))),
        c in 1.0..10.0f64,
    ) {
        let q = Matrix::identity(n).scaled(c).add(&m).unwrap();
        let prod = inverse(&q).unwrap().matrix.matmul(&q).unwrap();
        let err = prod.sub(&Matrix::identity(n)).unwrap().max_abs();
        prop_assert!(err <= 1e-10, "max error {err}");
    }

    #[test]
    fn kron_mixed_product(
        (a, c) in matrix_pair(3, 2.0),
        (b, d) in matrix_pair(3, 2.0),
    ) {
        let lhs = kron(&a, &b).matmul(&kron(&c, &d)).unwrap();
        let rhs = kron(&a.matmul(&c).unwrap(), &b.matmul(&d).unwrap());
        prop_assert!(lhs.sub(&rhs).unwrap().max_abs() <= 1e-12 * lhs.max_abs().max(1.0));
    }

    #[test]
    fn operator_norms_are_submultiplicative(
        (norm, a, b) in (1..=5usize).prop_flat_map(|n| (weighted_norm(n), matrix(n, 10.0), matrix(n, 10.0))),
    ) {
        check_submultiplicative(&norm, &a, &b)?;
    }

    #[test]
    fn sampled_ratios_never_exceed_operator_norm(
        (norm, a, vs) in (1..=5usize).prop_flat_map(|n| (
            weighted_norm(n),
            matrix(n, 10.0),
            prop::collection::vec(prop::collection::vec(-1.0..1.0f64, n), 20),
        )),
    ) {
        let op = norm.operator_norm(&a).unwrap();
        for v in vs {
            let nv = norm.vector_norm(&v).unwrap();
            prop_assume!(nv > 1e-9);
            let ratio = norm.vector_norm(&a.mul_vec(&v).unwrap()).unwrap() / nv;
            prop_assert!(ratio <= op * (1.0 + 1e-10) + 1e-12, "sample {ratio} > norm {op}");
        }
    }

    #[test]
    fn identity_has_zero_reactivity(norm in (1..=5usize).prop_flat_map(weighted_norm)) {
        let r = reactivity_linear(&norm, &Matrix::identity(norm.dim())).unwrap();
        prop_assert_eq!(r, 0.0);
    }

    #[test]
    fn l2_reactivity_ignores_uniform_weight_scaling(
        (w, a) in (1..=4usize).prop_flat_map(|n| (prop::collection::vec(0.2..5.0f64, n), matrix(n, 5.0))),
        c in 0.1..10.0f64,
    ) {
        let scaled: Vec<f64> = w.iter().map(|x| x * c).collect();
        let base = NormSpec::new(NormFamily::L2, Matrix::diag(&w)).unwrap();
        let other = NormSpec::new(NormFamily::L2, Matrix::diag(&scaled)).unwrap();
        let (r1, r2) = (reactivity_linear(&base, &a).unwrap(), reactivity_linear(&other, &a).unwrap());
        prop_assert!(rel_close(r1 + 1.0, r2 + 1.0, 1e-12), "{r1} vs {r2}");
    }

    #[test]
    fn p_compose_is_associative((sys, k, x, p) in smooth_case(), q in 1..=4usize) {
        let whole = p_compose(&sys, k, &x, p + q).unwrap();
        let mid = p_compose(&sys, k, &x, p).unwrap();
        let split = p_compose(&sys, k + p, mid.as_slice(), q).unwrap();
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn p_jacobian_obeys_the_chain_rule((sys, k, x, p) in smooth_case(), q in 1..=4usize) {
        let whole = p_jacobian(&sys, k, &x, p + q).unwrap();
        let mid = p_compose(&sys, k, &x, p).unwrap();
        let split = p_jacobian(&sys, k + p, mid.as_slice(), q).unwrap().matmul(&p_jacobian(&sys, k, &x, p).unwrap()).unwrap();
        let err = whole.sub(&split).unwrap().max_abs();
        prop_assert!(err <= 1e-12 * whole.max_abs().max(1.0), "error {err}");
    }

    #[test]
    fn p_jacobian_matches_finite_differences((sys, k, x, p) in smooth_case()) {
        check_fd_jacobian(&sys, k, &x, p)?;
    }

    #[test]
    fn example1_products_match_closed_form(lambda in -1.0..1.0f64, k in 0..=50usize, p in 1..=20usize) {
        let sys = MapSystem::example1_linear(lambda);
        let jac = p_jacobian(&sys, k, &[0.0, 0.0], p).unwrap();
        let half = 0.5f64.powi(p as i32 - 1);
        let off: f64 = (k..k + p).map(|j| lambda.powi(j as i32)).sum::<f64>() * half;
        let expected = [0.5 * half, off, 0.0, 0.5 * half];
        for (i, e) in expected.iter().enumerate() {
            prop_assert!((jac.as_slice()[i] - e).abs() <= 1e-12, "entry {i}: {} vs {e}", jac.as_slice()[i]);
        }
        prop_assert_eq!(jac.clone(), {
            let mut m = example1_matrix(lambda, k);
            for j in k + 1..k + p {
                m = example1_matrix(lambda, j).matmul(&m).unwrap();
            }
            m
        });
    }

    #[test]
    fn am_gm_prefix_bound(values in prop::collection::vec(-1.0..3.0f64, 1..200)) {
        check_am_gm(&values)?;
    }

    #[test]
    fn contraction_inequality_on_contractive_series((sys, x, y) in contraction_case()) {
        check_contraction(&sys, &x, &y)?;
    }

    #[test]
    fn fixed_points_have_small_residuals(alpha in 1.5..2.8f64, x0 in 0.05..0.95f64) {
        let sys = MapSystem::logistic(alpha).unwrap();
        let cfg = IterationConfig::default();
        let fp = find_fixed_point(&sys, &[x0], cfg).unwrap();
        let image = sys.eval(0, fp.x_star.as_slice()).unwrap();
        prop_assert!((image[0] - fp.x_star.as_slice()[0]).abs() < 10.0 * cfg.tol);
    }

    #[test]
    fn periodic_orbits_map_cyclically(alpha in 3.05..3.4f64, x0 in 0.05..0.95f64, p in prop::sample::select(vec![2usize, 4])) {
        let sys = MapSystem::logistic(alpha).unwrap();
        let cfg = IterationConfig::default();
        let orbit = detect_periodic_orbit(&sys, p, &[x0], cfg).unwrap();
        prop_assert_eq!(p % orbit.period, 0);
        let d = orbit.period;
        for (i, pt) in orbit.points.iter().enumerate() {
            let next = sys.eval(i, pt.as_slice()).unwrap();
            let target = orbit.points[(i + 1) % d].as_slice();
            prop_assert!((next[0] - target[0]).abs() < 10.0 * cfg.tol, "point {i}: {} vs {}", next[0], target[0]);
        }
    }

    #[test]
    fn convergent_lim_mean_contractive_orbits_merge(
        sys in prop_oneof![
            (1.5..2.8f64).prop_map(|a| MapSystem::logistic(a).unwrap()),
            (0.0..0.4f64).prop_map(MapSystem::example1_linear),
        ],
        x in prop::collection::vec(0.05..0.95f64, 2),
        y in prop::collection::vec(0.05..0.95f64, 2),
    ) {
        let m = sys.dim();
        let (x, y) = (&x[..m], &y[..m]);
        let steps = 10_000;
        let norm = NormSpec::unweighted(NormFamily::L2, m);
        let series = stepwise_reactivity(&sys, &norm, x, 0, steps, 1).unwrap();
        let report = mean_report_from_values(&series.values, DEFAULT_BAND, DEFAULT_CONVERGENCE_TOL).unwrap();
        prop_assume!(report.converged && report.lim_mean_estimate < 0.0);
        let xs = p_compose(&sys, 0, x, steps).unwrap();
        let ys = p_compose(&sys, 0, y, steps).unwrap();
        let gap = xs.as_slice().iter().zip(ys.as_slice()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        prop_assert!(gap < 1e-8, "final gap {gap}");
    }

    #[test]
    fn mftle_dominates_directional_growth(x in henon_point(), p in 1..=50usize, angle in 0.0..std::f64::consts::TAU) {
        let sys = MapSystem::henon_classic();
        let u = [angle.cos(), angle.sin()];
        let top = mftle(&sys, &x, p, Convention::OneOverP).unwrap().value;
        let dir = ftle_direction(&sys, &x, &u, p, Convention::OneOverP).unwrap().value;
        prop_assert!(dir <= top + 1e-10, "directional {dir} > maximal {top}");
    }

    #[test]
    fn rescaled_and_direct_products_agree(x in henon_point(), p in 1..=80usize) {
        let sys = MapSystem::henon_classic();
        let rescaled = mftle(&sys, &x, p, Convention::OneOverP).unwrap().value;
        let direct = mftle_direct(&sys, &x, p, Convention::OneOverP).unwrap().value;
        prop_assert!((rescaled - direct).abs() <= 1e-8, "{rescaled} vs {direct}");
    }

    #[test]
    fn halved_convention_is_exactly_half(x in henon_point(), p in 1..=200usize) {
        let sys = MapSystem::henon_classic();
        let one = mftle(&sys, &x, p, Convention::OneOverP).unwrap().value;
        let half = mftle(&sys, &x, p, Convention::OneOver2P).unwrap().value;
        prop_assert_eq!(half, 0.5 * one);
    }

    #[test]
    fn diagonal_mle_is_log_of_largest_entry(d in prop::collection::vec(
        prop_oneof![-3.0..-0.1f64, 0.1..3.0f64], 1..=3)
    ) {
        let sys = MapSystem::linear(Matrix::diag(&d)).unwrap();
        let est = mle_estimate(&sys, &vec![0.0; d.len()], 1000, 0).unwrap();
        let expected = d.iter().map(|v| v.abs()).fold(0.0, f64::max).ln();
        prop_assert!((est.value - expected).abs() <= 1e-12, "{} vs {expected}", est.value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100_000))]

    #[test]
    fn quadratic_image_is_exact(alpha in 0.0..4.0f64, u in 0.0..1.0f64, v in 0.0..1.0f64, t in 0.0..1.0f64) {
        let iv = Interval::new(u.min(v), u.max(v)).unwrap();
        let x = iv.lo + t * iv.width();
        let image = interval_image_quadratic(alpha, iv);
        let fx = alpha * x * (1.0 - x);
        prop_assert!(image.lo - 1e-14 <= fx && fx <= image.hi + 1e-14, "f({x}) = {fx} outside {image:?}");
    }
}

/// Optimized pairs for a few parameters, computed once.
fn certified_pairs() -> &'static [IntervalPair] {
    static PAIRS: OnceLock<Vec<IntervalPair>> = OnceLock::new();
    PAIRS.get_or_init(|| {
        let cfg = SearchConfig::default();
        let mut problems = Vec::new();
        for alpha in [3.1, 3.2, 3.3] {
            for p in [2, 4] {
                problems.push(Problem::time_invariant(alpha, p).unwrap());
            }
        }
        for e in [2.5, 2.7] {
            problems.push(Problem::time_varying(3.075, e, 2).unwrap());
        }
        problems.iter().filter_map(|pr| maximize_width(pr, &cfg).unwrap().pair().cloned()).collect()
    })
}

fn logistic_system(problem: &Problem) -> MapSystem {
    match *problem {
        Problem::TimeInvariant { alpha, .. } => MapSystem::logistic(alpha).unwrap(),
        Problem::TimeVarying { base, e, .. } => MapSystem::time_varying_logistic(base, e).unwrap(),
    }
}

proptest! {
    #![proptest_config(cases())]

    #[test]
    fn certified_pairs_trap_a_periodic_orbit(index in 0..8usize, t in 0.0..=1.0f64) {
        let pairs = certified_pairs();
        let pair = &pairs[index % pairs.len()];
        prop_assert!(pair.certified);
        let p = pair.problem.p();
        let x0 = pair.a + t * (pair.b - pair.a);
        let orbit = detect_periodic_orbit(&logistic_system(&pair.problem), p, &[x0], IterationConfig::default()).unwrap();
        prop_assert_eq!(p % orbit.period, 0);
        let (ab, cd) = (pair.ab(), pair.cd());
        for pt in &orbit.points {
            let v = pt.as_slice()[0];
            prop_assert!(ab.contains(v) || cd.contains(v), "{v} outside {ab:?} and {cd:?}");
        }
    }

    #[test]
    fn laplacian_rows_sum_to_zero(
        (n, weights) in (2..=8usize).prop_flat_map(|n| (Just(n), prop::collection::vec(prop_oneof![Just(0.0), 0.1..3.0f64], n * (n - 1) / 2))),
    ) {
        let mut edges = Vec::new();
        let mut it = weights.iter();
        for i in 0..n {
            for j in i + 1..n {
                let w = *it.next().unwrap();
                if w > 0.0 {
                    edges.push((i, j, w));
                }
            }
        }
        let net = Network::from_edges(n, &edges).unwrap();
        let l = net.laplacian();
        for i in 0..n {
            prop_assert!(l.row(i).iter().sum::<f64>().abs() <= 1e-12);
        }
        for v in symmetric_eigenvalues(l).unwrap() {
            prop_assert!(v >= -1e-8, "negative eigenvalue {v}");
        }
    }

    #[test]
    fn blockwise_sigma1_matches_dense_kronecker(spec in spectrum(), dh in matrix(2, 2.0), kappa in 0.0..1.0f64, s in henon_point()) {
        check_blockwise_kron(&spec, &dh, kappa, &s)?;
    }

    #[test]
    fn self_coupled_products_factor(spec in spectrum(), kappa in 0.0..0.5f64, s in henon_point(), p in 1..=8usize) {
        let f = MapSystem::henon_classic();
        let z = transverse_p_product(&f, &f, &spec, kappa, &s, p).unwrap().sigma1().unwrap();
        let expected = spec.topology_factor(kappa).powi(p as i32) * spectral_norm(&p_jacobian(&f, 0, &s, p).unwrap()).unwrap();
        prop_assert!((z - expected).abs() <= 1e-10 * expected.max(1.0), "{z} vs {expected}");
    }

    #[test]
    fn kappa_bounds_nest(spec in spectrum(), mean in 0.1..50.0f64, excess in 1.0..5.0f64, p in 1..=100usize) {
        prop_assume!(spec.connected);
        let beta = BetaStats { p, beta_mean: mean, beta_max: mean * excess, sample_size: 1 };
        let b = kappa_bounds(&spec, &beta).unwrap();
        prop_assert!(b.nested(), "{b:?}");
        prop_assert!(b.s_max <= b.s_mean, "{b:?}");
    }

    #[test]
    fn coupling_preserves_exact_synchrony(
        net in prop_oneof![Just(Network::wheel(4).unwrap()), (2..=6usize).prop_map(|n| Network::complete(n).unwrap()), (2..=6usize).prop_map(|n| Network::path(n).unwrap())],
        s in henon_point(),
        kappa in 0.0..0.5f64,
    ) {
        let f = MapSystem::henon_classic();
        let initial = vec![Vector::from_slice(&s).unwrap(); net.n()];
        let cfg = SimConfig { k_f: 1000, k_0: 0, threshold: 1e-12 };
        let out = simulate_coupled(&net, &f, &f, kappa, &initial, &cfg).unwrap();
        prop_assert!(out.e <= 1e-12, "E = {}", out.e);
    }
}
