//! Widest invariant interval pairs for logistic-family maps.
//!
//! A pair `[a, b]`, `[c, d]` is certified when the map sends each interval
//! into the other and the p-step derivative stays at most 1 in magnitude.
//! For the time-invariant map `f(x) = αx(1−x)` the derivative bound is
//! checked for `f^{(p)}` on `[a, b]`; for the alternating map `g, h` with
//! parameters `base ± e` it is checked for `(h∘g)^{p/2}` on `[a, b]` and for
//! `(g∘h)^{p/2}` on `[c, d]`.
//!
//! Derivative suprema are grid estimates: a uniform grid is doubled until
//! the maximum settles and the result is inflated by 1%.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_EPSILON: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::invalid(format!("invalid interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Problem {
    TimeInvariant { alpha: f64, p: usize, epsilon: f64 },
    TimeVarying { base: f64, e: f64, p: usize },
}

impl Problem {
    pub fn time_invariant(alpha: f64, p: usize) -> Result<Self> {
        let problem = Problem::TimeInvariant { alpha, p, epsilon: DEFAULT_EPSILON };
        problem.validate()?;
        Ok(problem)
    }

    pub fn time_varying(base: f64, e: f64, p: usize) -> Result<Self> {
        let problem = Problem::TimeVarying { base, e, p };
        problem.validate()?;
        Ok(problem)
    }

    pub fn p(&self) -> usize {
        match *self {
            Problem::TimeInvariant { p, .. } | Problem::TimeVarying { p, .. } => p,
        }
    }

    pub fn with_p(&self, p: usize) -> Self {
        match *self {
            Problem::TimeInvariant { alpha, epsilon, .. } => Problem::TimeInvariant { alpha, p, epsilon },
            Problem::TimeVarying { base, e, .. } => Problem::TimeVarying { base, e, p },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.p();
        if p == 0 || !p.is_multiple_of(2) {
            return Err(Error::invalid(format!("p must be a positive even number, got {p}")));
        }
        match *self {
            Problem::TimeInvariant { alpha, epsilon, .. } => {
                if !(alpha > 1.0 && alpha <= 4.0) {
                    return Err(Error::invalid(format!("alpha {alpha} outside (1, 4]")));
                }
                if !(epsilon >= 0.0 && epsilon.is_finite()) {
                    return Err(Error::invalid("epsilon must be a nonnegative real"));
                }
            }
            Problem::TimeVarying { base, e, .. } => {
                if !(base.is_finite() && e.is_finite()) {
                    return Err(Error::invalid("base and e must be finite"));
                }
                if base - e < 0.0 {
                    return Err(Error::invalid("the h parameter base − e must be nonnegative"));
                }
            }
        }
        Ok(())
    }

    /// Parameter of the map applied first to `[a, b]` (`phase = 0`) or to
    /// `[c, d]` (`phase = 1`), and then alternating.
    fn parameter(&self, step: usize) -> f64 {
        match *self {
            Problem::TimeInvariant { alpha, .. } => alpha,
            Problem::TimeVarying { base, e, .. } => {
                if step.is_multiple_of(2) {
                    base + e
                } else {
                    base - e
                }
            }
        }
    }

    /// Admissible boxes for `(a, b)` and `(c, d)`.
    pub fn boxes(&self) -> (Interval, Interval) {
        match *self {
            Problem::TimeInvariant { alpha, epsilon, .. } => {
                let fixed = (alpha - 1.0) / alpha;
                (
                    Interval { lo: 0.0, hi: (fixed - epsilon).max(0.0) },
                    Interval { lo: (fixed + epsilon).min(1.0), hi: 1.0 },
                )
            }
            Problem::TimeVarying { base, e, .. } => {
                // [a, b] ⊆ h([0, 1]) and [c, d] ⊆ g([0, 1]) for any feasible pair.
                (
                    Interval { lo: 0.0, hi: ((base - e) / 4.0).min(1.0) },
                    Interval { lo: 0.0, hi: ((base + e) / 4.0).min(1.0) },
                )
            }
        }
    }
}

/// Exact image of `x ↦ αx(1−x)` over `[l, u] ⊆ [0, 1]`.
pub fn interval_image_quadratic(alpha: f64, iv: Interval) -> Interval {
    let f = |x: f64| alpha * x * (1.0 - x);
    let (fl, fu) = (f(iv.lo), f(iv.hi));
    let (mut lo, mut hi) = if fl <= fu { (fl, fu) } else { (fu, fl) };
    if iv.contains(0.5) {
        let vertex = alpha / 4.0;
        lo = lo.min(vertex);
        hi = hi.max(vertex);
    }
    Interval { lo, hi }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivConfig {
    /// Initial grid size (number of subintervals).
    pub grid: usize,
    /// Refinement stops once doubling changes the maximum by less than this.
    pub tol: f64,
    /// Refinement stops at this grid size regardless.
    pub max_grid: usize,
    /// Multiplicative safety margin applied to the grid maximum.
    pub inflation: f64,
}

impl Default for DerivConfig {
    fn default() -> Self {
        Self { grid: 10_000, tol: 1e-6, max_grid: 1 << 22, inflation: 1.01 }
    }
}

/// `|d/dx F(x)|` where `F` applies `p` logistic steps starting at `phase`.
fn abs_deriv_product(problem: &Problem, phase: usize, p: usize, mut x: f64) -> f64 {
    let mut prod = 1.0;
    for step in phase..phase + p {
        let alpha = problem.parameter(step);
        prod *= (alpha * (1.0 - 2.0 * x)).abs();
        x = alpha * x * (1.0 - x);
    }
    prod
}

fn grid_max(problem: &Problem, phase: usize, p: usize, iv: Interval, n: usize) -> f64 {
    if iv.width() == 0.0 {
        return abs_deriv_product(problem, phase, p, iv.lo);
    }
    let h = iv.width() / n as f64;
    (0..=n)
        .map(|i| {
            let x = if i == n { iv.hi } else { iv.lo + h * i as f64 };
            abs_deriv_product(problem, phase, p, x)
        })
        .fold(0.0, f64::max)
}

/// Grid estimate (refined and inflated) of `sup |d/dx F|` on `iv`; stops
/// early once the estimate provably exceeds `give_up_above`, in which case
/// the returned value is only a lower bound on the full estimate.
fn sup_estimate(problem: &Problem, phase: usize, iv: Interval, cfg: &DerivConfig, give_up_above: f64) -> f64 {
    let p = problem.p();
    let mut n = cfg.grid.max(1);
    let mut prev = grid_max(problem, phase, p, iv, n);
    // Doubling keeps the old nodes, so the maximum never decreases.
    while prev * cfg.inflation <= give_up_above && n < cfg.max_grid && iv.width() > 0.0 {
        n *= 2;
        let next = grid_max(problem, phase, p, iv, n);
        let settled = (next - prev).abs() < cfg.tol;
        prev = next;
        if settled {
            break;
        }
    }
    prev * cfg.inflation
}

/// Upper estimate of `sup |Df^{(p)}|` on `iv` for the map applied first to
/// `[a, b]` (`on_cd = false`) or to `[c, d]` (`on_cd = true`).
pub fn sup_abs_deriv_product(problem: &Problem, iv: Interval, on_cd: bool, cfg: &DerivConfig) -> f64 {
    sup_estimate(problem, usize::from(on_cd), iv, cfg, f64::INFINITY)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constraint {
    /// Endpoints outside the admissible boxes or out of order.
    Bounds,
    /// The first map does not send `[a, b]` into `[c, d]`.
    MapsAbIntoCd,
    /// The second map does not send `[c, d]` into `[a, b]`.
    MapsCdIntoAb,
    /// The p-step derivative exceeds 1 on `[a, b]`.
    DerivativeAb,
    /// The p-step derivative exceeds 1 on `[c, d]`.
    DerivativeCd,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalPair {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub problem: Problem,
    pub certified: bool,
    /// Derivative estimates on `[a, b]` and, for the alternating map, `[c, d]`.
    pub sup_deriv: Vec<f64>,
    pub violations: Vec<Constraint>,
}

impl IntervalPair {
    pub fn new(problem: Problem, a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d, problem, certified: false, sup_deriv: Vec::new(), violations: Vec::new() }
    }

    pub fn width(&self) -> f64 {
        self.b - self.a + self.d - self.c
    }

    pub fn ab(&self) -> Interval {
        Interval { lo: self.a, hi: self.b }
    }

    pub fn cd(&self) -> Interval {
        Interval { lo: self.c, hi: self.d }
    }
}

fn bounds_ok(problem: &Problem, a: f64, b: f64, c: f64, d: f64) -> bool {
    let (ab, cd) = problem.boxes();
    [a, b, c, d].iter().all(|v| v.is_finite())
        && a <= b
        && c <= d
        && ab.lo <= a
        && b <= ab.hi
        && cd.lo <= c
        && d <= cd.hi
}

fn mapping_violations(problem: &Problem, ab: Interval, cd: Interval) -> Vec<Constraint> {
    let mut v = Vec::new();
    if !cd.contains_interval(&interval_image_quadratic(problem.parameter(0), ab)) {
        v.push(Constraint::MapsAbIntoCd);
    }
    if !ab.contains_interval(&interval_image_quadratic(problem.parameter(1), cd)) {
        v.push(Constraint::MapsCdIntoAb);
    }
    v
}

/// Verifies every constraint of the width problem for `pair`.
pub fn certify(pair: &IntervalPair, cfg: &DerivConfig) -> Result<IntervalPair> {
    pair.problem.validate()?;
    let mut out = pair.clone();
    out.violations.clear();
    out.sup_deriv.clear();
    if !bounds_ok(&pair.problem, pair.a, pair.b, pair.c, pair.d) {
        out.violations.push(Constraint::Bounds);
        out.certified = false;
        return Ok(out);
    }
    out.violations = mapping_violations(&pair.problem, pair.ab(), pair.cd());
    let sab = sup_abs_deriv_product(&pair.problem, pair.ab(), false, cfg);
    out.sup_deriv.push(sab);
    if sab > 1.0 {
        out.violations.push(Constraint::DerivativeAb);
    }
    if let Problem::TimeVarying { .. } = pair.problem {
        let scd = sup_abs_deriv_product(&pair.problem, pair.cd(), true, cfg);
        out.sup_deriv.push(scd);
        if scd > 1.0 {
            out.violations.push(Constraint::DerivativeCd);
        }
    }
    out.certified = out.violations.is_empty();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Grid points per axis of the coarse search.
    pub grid_points: usize,
    /// Coordinate ascent stops once its step falls below this.
    pub min_step: f64,
    /// Seed the search with optima for even proper divisors of p.
    pub seed_from_divisors: bool,
    pub deriv: DerivConfig,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { grid_points: 50, min_step: 1e-5, seed_from_divisors: true, deriv: DerivConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum WidthOutcome {
    Feasible(IntervalPair),
    Infeasible,
}

impl WidthOutcome {
    pub fn pair(&self) -> Option<&IntervalPair> {
        match self {
            WidthOutcome::Feasible(p) => Some(p),
            WidthOutcome::Infeasible => None,
        }
    }

    pub fn width(&self) -> Option<f64> {
        self.pair().map(IntervalPair::width)
    }

    pub fn is_feasible(&self) -> bool {
        self.pair().is_some()
    }
}

/// Cached derivative checks keyed by grid indices.
struct DerivCache<'a> {
    problem: &'a Problem,
    cfg: &'a DerivConfig,
    ab: HashMap<(usize, usize), bool>,
    cd: HashMap<(usize, usize), bool>,
}

impl DerivCache<'_> {
    fn passes(&mut self, on_cd: bool, key: (usize, usize), iv: Interval) -> bool {
        let (problem, cfg) = (self.problem, self.cfg);
        let map = if on_cd { &mut self.cd } else { &mut self.ab };
        *map.entry(key).or_insert_with(|| sup_estimate(problem, usize::from(on_cd), iv, cfg, 1.0) <= 1.0)
    }
}

fn axis(iv: Interval, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![iv.lo];
    }
    let h = iv.width() / (n - 1) as f64;
    (0..n).map(|i| if i == n - 1 { iv.hi } else { iv.lo + h * i as f64 }).collect()
}

fn grid_search(problem: &Problem, cfg: &SearchConfig) -> Option<IntervalPair> {
    let (ab_box, cd_box) = problem.boxes();
    let xs = axis(ab_box, cfg.grid_points);
    let ys = axis(cd_box, cfg.grid_points);
    let n = xs.len();
    let mut candidates = Vec::new();
    for i in 0..n {
        for j in i..n {
            let ab = Interval { lo: xs[i], hi: xs[j] };
            let image = interval_image_quadratic(problem.parameter(0), ab);
            for k in 0..ys.len() {
                if ys[k] > image.lo {
                    break;
                }
                for l in k..ys.len() {
                    if ys[l] < image.hi {
                        continue;
                    }
                    let cd = Interval { lo: ys[k], hi: ys[l] };
                    if ab.contains_interval(&interval_image_quadratic(problem.parameter(1), cd)) {
                        candidates.push((ab.width() + cd.width(), i, j, k, l));
                    }
                }
            }
        }
    }
    // Widest first; ties broken by index for determinism.
    candidates.sort_by(|x, y| y.0.total_cmp(&x.0).then((x.1, x.2, x.3, x.4).cmp(&(y.1, y.2, y.3, y.4))));
    let mut cache = DerivCache { problem, cfg: &cfg.deriv, ab: HashMap::new(), cd: HashMap::new() };
    let check_cd = matches!(problem, Problem::TimeVarying { .. });
    candidates.into_iter().find_map(|(_, i, j, k, l)| {
        let ab = Interval { lo: xs[i], hi: xs[j] };
        let cd = Interval { lo: ys[k], hi: ys[l] };
        let ok = cache.passes(false, (i, j), ab) && (!check_cd || cache.passes(true, (k, l), cd));
        ok.then(|| IntervalPair::new(*problem, ab.lo, ab.hi, cd.lo, cd.hi))
    })
}

/// Coordinate ascent on the endpoints from a certified start, moving each
/// endpoint outward while certification holds and halving the step when
/// no move succeeds.
fn refine(start: IntervalPair, initial_step: f64, cfg: &SearchConfig) -> Result<IntervalPair> {
    let (ab_box, cd_box) = start.problem.boxes();
    let mut best = start;
    let mut step = initial_step;
    while step >= cfg.min_step {
        let mut moved = false;
        for coord in 0..4 {
            let mut cand = best.clone();
            match coord {
                0 => cand.a = (cand.a - step).max(ab_box.lo),
                1 => cand.b = (cand.b + step).min(ab_box.hi),
                2 => cand.c = (cand.c - step).max(cd_box.lo),
                _ => cand.d = (cand.d + step).min(cd_box.hi),
            }
            if cand.width() <= best.width() {
                continue;
            }
            let cand = certify(&cand, &cfg.deriv)?;
            if cand.certified {
                best = cand;
                moved = true;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    Ok(best)
}

/// Widest certified interval pair found by a coarse grid search followed by
/// coordinate ascent, or [`WidthOutcome::Infeasible`] when the grid holds no
/// certified candidate.
pub fn maximize_width(problem: &Problem, cfg: &SearchConfig) -> Result<WidthOutcome> {
    problem.validate()?;
    let p = problem.p();
    let mut seeds = Vec::new();
    if let Some(pair) = grid_search(problem, cfg) {
        seeds.push(pair);
    }
    if cfg.seed_from_divisors {
        // A pair certified for q is certified for every multiple of q.
        for q in (2..p).step_by(2).filter(|q| p.is_multiple_of(*q)) {
            if let WidthOutcome::Feasible(pair) = maximize_width(&problem.with_p(q), cfg)? {
                let mut seed = pair.clone();
                seed.problem = *problem;
                seeds.push(seed);
            }
        }
    }
    let (ab_box, cd_box) = problem.boxes();
    let initial_step = ab_box.width().max(cd_box.width()) / (cfg.grid_points.max(2) - 1) as f64;
    let mut best: Option<IntervalPair> = None;
    for seed in seeds {
        let seed = certify(&seed, &cfg.deriv)?;
        if !seed.certified {
            continue;
        }
        let refined = refine(seed, initial_step, cfg)?;
        if best.as_ref().is_none_or(|b| refined.width() > b.width()) {
            best = Some(refined);
        }
    }
    Ok(best.map_or(WidthOutcome::Infeasible, WidthOutcome::Feasible))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Sweep `α` of the time-invariant map.
    TimeInvariant { epsilon: f64 },
    /// Sweep `e` of the alternating map around `base`.
    TimeVarying { base: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub param: f64,
    pub p: usize,
    pub feasible: bool,
    pub w_star: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Parameter values `lo, lo + step, …` up to `hi` (inclusive, to rounding).
pub fn parameter_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && step.is_finite()) || step <= 0.0 || hi < lo {
        return Err(Error::invalid(format!("invalid range [{lo}, {hi}] with step {step}")));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| lo + step * i as f64).collect())
}

/// One row per `(param, p)`, computed in parallel and sorted by
/// `(param, p)`.
pub fn sweep(family: Family, lo: f64, hi: f64, step: f64, ps: &[usize], cfg: &SearchConfig) -> Result<Vec<SweepRow>> {
    if ps.is_empty() {
        return Err(Error::invalid("at least one p is required"));
    }
    let params = parameter_grid(lo, hi, step)?;
    let jobs: Vec<(f64, usize)> = params.iter().flat_map(|&v| ps.iter().map(move |&p| (v, p))).collect();
    let mut rows = jobs
        .par_iter()
        .map(|&(param, p)| {
            let problem = match family {
                Family::TimeInvariant { epsilon } => Problem::TimeInvariant { alpha: param, p, epsilon },
                Family::TimeVarying { base } => Problem::TimeVarying { base, e: param, p },
            };
            let outcome = maximize_width(&problem, cfg)?;
            Ok(match outcome.pair() {
                Some(pair) => SweepRow {
                    param,
                    p,
                    feasible: true,
                    w_star: pair.width(),
                    a: pair.a,
                    b: pair.b,
                    c: pair.c,
                    d: pair.d,
                },
                None => SweepRow {
                    param,
                    p,
                    feasible: false,
                    w_star: f64::NAN,
                    a: f64::NAN,
                    b: f64::NAN,
                    c: f64::NAN,
                    d: f64::NAN,
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|x, y| x.param.total_cmp(&y.param).then(x.p.cmp(&y.p)));
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn image_examples() {
        let r = interval_image_quadratic(3.2, iv(0.4, 0.6));
        assert_abs_diff_eq!(r.lo, 0.768, epsilon = 1e-15);
        assert_abs_diff_eq!(r.hi, 0.8, epsilon = 1e-15);
        let r = interval_image_quadratic(3.2, iv(0.6, 0.8));
        assert_abs_diff_eq!(r.lo, 0.512, epsilon = 1e-15);
        assert_abs_diff_eq!(r.hi, 0.768, epsilon = 1e-15);
        let r = interval_image_quadratic(2.7, iv(0.5, 0.5));
        assert_eq!((r.lo, r.hi), (2.7 / 4.0, 2.7 / 4.0));
    }

    #[test]
    fn derivative_examples() {
        let cfg = DerivConfig::default();
        let pr = |alpha| Problem::TimeInvariant { alpha, p: 1, epsilon: DEFAULT_EPSILON };
        let s = sup_abs_deriv_product(&pr(3.2), iv(0.6, 0.8), false, &cfg);
        assert!((s / 1.92 - 1.0).abs() <= 0.01 + 1e-12);
        let s = sup_abs_deriv_product(&pr(3.2), iv(0.45, 0.55), false, &cfg);
        assert!((s / 0.32 - 1.0).abs() <= 0.01 + 1e-12);
        assert_eq!(sup_abs_deriv_product(&pr(3.7), iv(0.5, 0.5), false, &cfg), 0.0);
    }

    #[test]
    fn problem_validation() {
        assert!(Problem::time_invariant(3.2, 3).is_err());
        assert!(Problem::time_invariant(3.2, 0).is_err());
        assert!(Problem::time_invariant(0.5, 2).is_err());
        assert!(Problem::time_varying(3.075, 2.6, 2).is_ok());
        assert!(Problem::time_varying(1.0, 2.0, 2).is_err());
    }

    #[test]
    fn certify_rejects_box_violation() {
        let problem = Problem::time_invariant(3.2, 2).unwrap();
        let fixed = 2.2 / 3.2;
        let pair = IntervalPair::new(problem, 0.4, fixed + 0.01, 0.75, 0.8);
        let out = certify(&pair, &DerivConfig::default()).unwrap();
        assert!(!out.certified);
        assert_eq!(out.violations, vec![Constraint::Bounds]);
    }

    #[test]
    fn certify_names_mapping_violation() {
        let problem = Problem::time_invariant(3.2, 2).unwrap();
        let pair = IntervalPair::new(problem, 0.50, 0.52, 0.70, 0.75);
        let out = certify(&pair, &DerivConfig::default()).unwrap();
        assert!(!out.certified);
        assert!(out.violations.contains(&Constraint::MapsAbIntoCd));
    }

    #[test]
    fn optimizer_pairs_are_certified() {
        let cfg = SearchConfig::default();
        let problem = Problem::time_invariant(3.2, 2).unwrap();
        let pair = maximize_width(&problem, &cfg).unwrap().pair().cloned().unwrap();
        assert!(pair.width() > 0.0);
        assert!(certify(&pair, &cfg.deriv).unwrap().certified);

        let problem = Problem::time_varying(3.075, 2.6, 2).unwrap();
        let pair = maximize_width(&problem, &cfg).unwrap().pair().cloned().unwrap();
        assert!(certify(&pair, &cfg.deriv).unwrap().certified);
    }

    #[test]
    fn parameter_grid_counts() {
        assert_eq!(parameter_grid(3.1, 3.4, 0.01).unwrap().len(), 31);
        assert_eq!(parameter_grid(2.5, 2.8, 0.01).unwrap().len(), 31);
        assert!(parameter_grid(1.0, 0.0, 0.1).is_err());
    }
}
