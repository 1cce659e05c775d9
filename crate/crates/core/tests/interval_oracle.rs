//! Independent brute-force check of the width optimizer for the
//! time-invariant logistic problem.
//!
//! For a fixed `[a, b]` below the fixed point the widest admissible `[c, d]`
//! is explicit: `c` is the smallest point above the fixed point with
//! `f(c) ≤ b`, and `d` the largest point with `f(d) ≥ a`. The pair is valid
//! when that `[c, d]` still covers `f([a, b])` and the derivative of the
//! p-fold map stays within 1 on `[a, b]`. Scanning `(a, b)` over a fine grid
//! gives an oracle width that needs no optimizer.

use discrete_contraction::interval_cert::{certify, maximize_width, DerivConfig, Problem, SearchConfig};

const GRID: usize = 2000;
const SUBSAMPLES: usize = 4;

fn f(alpha: f64, x: f64) -> f64 {
    alpha * x * (1.0 - x)
}

fn deriv_p(alpha: f64, x: f64, p: usize) -> f64 {
    let mut z = x;
    let mut d = 1.0;
    for _ in 0..p {
        d *= alpha * (1.0 - 2.0 * z);
        z = f(alpha, z);
    }
    d.abs()
}

/// Largest root of `αx(1 − x) = y`, if real.
fn upper_root(alpha: f64, y: f64) -> Option<f64> {
    let disc = 1.0 - 4.0 * y / alpha;
    (disc >= 0.0).then(|| 0.5 * (1.0 + disc.sqrt()))
}

fn oracle_width(alpha: f64, p: usize, epsilon: f64) -> Option<f64> {
    let fixed = (alpha - 1.0) / alpha;
    let ab_hi = fixed - epsilon;
    let cd_lo = fixed + epsilon;
    let h = ab_hi / GRID as f64;
    let mut best: Option<f64> = None;
    for i in 0..=GRID {
        let a = i as f64 * h;
        let mut sup = deriv_p(alpha, a, p);
        for j in i..=GRID {
            let b = j as f64 * h;
            if j > i {
                for s in 1..=SUBSAMPLES {
                    sup = sup.max(deriv_p(alpha, b - h + h * s as f64 / SUBSAMPLES as f64, p));
                }
            }
            if sup > 1.0 {
                break;
            }
            let (mut lo, mut hi) = (f(alpha, a).min(f(alpha, b)), f(alpha, a).max(f(alpha, b)));
            if a <= 0.5 && 0.5 <= b {
                lo = lo.min(alpha / 4.0);
                hi = hi.max(alpha / 4.0);
            }
            let c = match upper_root(alpha, b) {
                Some(r) => r.max(cd_lo),
                None => cd_lo,
            };
            let d = match upper_root(alpha, a) {
                Some(r) => r.min(1.0),
                None => continue,
            };
            if c <= lo && hi <= d && c <= d {
                let w = b - a + d - c;
                best = Some(best.map_or(w, |bw: f64| bw.max(w)));
            }
        }
    }
    best
}

#[test]
fn optimizer_width_tracks_the_oracle() {
    let cfg = SearchConfig::default();
    for alpha in [3.1, 3.15, 3.2, 3.25, 3.3] {
        for p in [2, 4] {
            let problem = Problem::time_invariant(alpha, p).unwrap();
            let outcome = maximize_width(&problem, &cfg).unwrap();
            let oracle = oracle_width(alpha, p, 1e-6).expect("oracle finds a pair");
            let width = outcome.width().expect("optimizer finds a pair");
            // The oracle only checks derivatives on its own grid, so allow one
            // grid cell of slack above it.
            let cell = 2.0 / GRID as f64;
            println!("alpha {alpha} p {p}: optimizer {width:.6}, oracle {oracle:.6}");
            assert!(width <= oracle + cell, "alpha {alpha} p {p}: {width} above oracle {oracle}");
            assert!(width >= 0.95 * oracle, "alpha {alpha} p {p}: {width} below 95% of oracle {oracle}");
        }
    }
}

#[test]
fn optimizer_pairs_pass_an_independent_check() {
    let cfg = SearchConfig::default();
    for alpha in [3.1, 3.2, 3.3] {
        let problem = Problem::time_invariant(alpha, 2).unwrap();
        let pair = maximize_width(&problem, &cfg).unwrap().pair().cloned().unwrap();
        assert!(certify(&pair, &DerivConfig::default()).unwrap().certified);
        let n = 100_000;
        for i in 0..=n {
            let x = pair.a + (pair.b - pair.a) * i as f64 / n as f64;
            assert!(deriv_p(alpha, x, 2) <= 1.0, "derivative above 1 at {x}");
            let fx = f(alpha, x);
            assert!(pair.c <= fx && fx <= pair.d, "f({x}) = {fx} leaves [c, d]");
            let y = pair.c + (pair.d - pair.c) * i as f64 / n as f64;
            let fy = f(alpha, y);
            assert!(pair.a <= fy && fy <= pair.b, "f({y}) = {fy} leaves [a, b]");
        }
    }
}

#[test]
fn optimizer_stays_below_the_oracle_near_the_feasibility_edge() {
    let cfg = SearchConfig::default();
    for alpha in [3.36, 3.38, 3.4, 3.42, 3.44] {
        let problem = Problem::time_invariant(alpha, 2).unwrap();
        let oracle = oracle_width(alpha, 2, 1e-6).expect("oracle finds a pair");
        match maximize_width(&problem, &cfg).unwrap().width() {
            Some(width) => assert!(width <= oracle + 2.0 / GRID as f64, "alpha {alpha}: {width} above oracle {oracle}"),
            None => println!("alpha {alpha}: optimizer infeasible, oracle width {oracle:.6}"),
        }
    }
}
