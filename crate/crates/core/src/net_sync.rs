//! Synchronization of networks of identical coupled maps
//! `x^i_{k+1} = F(x^i_k) − κ Σ_j L_ij H(x^j_k)`.
//!
//! Covers Laplacian spectra, attractor sampling, the attractor statistics
//! `β_mean` and `β_max` of `‖DF^{(p)}‖`, the coupling-strength bounds and
//! synchronizability they imply, the transverse variational step, and
//! direct simulation with the synchronization error `E`.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::MapSystem;
use crate::error::{Error, Result};
use crate::ftle::DIRECT_PRODUCT_LIMIT;
use crate::linalg::{dist2, spectral_norm, symmetric_eigenvalues, Matrix, Vector};
use crate::norms::NormSpec;

/// Tolerance for the zero Laplacian eigenvalue and for connectivity.
pub const SPECTRUM_TOL: f64 = 1e-8;

/// Half-width of the box within which the seed perturbs the initial state.
pub const SEED_BOX: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    adjacency: Matrix,
    laplacian: Matrix,
}

impl Network {
    /// Validates a symmetric, nonnegative, zero-diagonal adjacency matrix
    /// and derives the Laplacian `L = D − A`.
    pub fn new(adjacency: Matrix) -> Result<Self> {
        if !adjacency.is_square() {
            return Err(Error::NotSquare { rows: adjacency.rows(), cols: adjacency.cols() });
        }
        let n = adjacency.rows();
        if let Some(i) = adjacency.as_slice().iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index: i });
        }
        let asym = adjacency.max_asymmetry().unwrap_or(0.0);
        if asym > 1e-12 {
            return Err(Error::Asymmetric { max_asymmetry: asym });
        }
        if adjacency.as_slice().iter().any(|&v| v < 0.0) {
            return Err(Error::invalid("adjacency weights must be nonnegative"));
        }
        if (0..n).any(|i| adjacency.get(i, i) != 0.0) {
            return Err(Error::invalid("adjacency diagonal must be zero"));
        }
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    data[i * n + j] = -adjacency.get(i, j);
                }
            }
            data[i * n + i] = adjacency.row(i).iter().sum();
        }
        Ok(Self { laplacian: Matrix::new(n, n, data)?, adjacency })
    }

    /// Unweighted graph from undirected edges on `n` nodes.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut a = vec![0.0; n * n];
        for &(i, j, w) in edges {
            if i >= n || j >= n {
                return Err(Error::invalid(format!("edge ({i}, {j}) outside {n} nodes")));
            }
            if i == j {
                return Err(Error::invalid(format!("self-loop at node {i}")));
            }
            a[i * n + j] = w;
            a[j * n + i] = w;
        }
        Self::new(Matrix::new(n, n, a)?)
    }

    /// Hub joined to every node of a cycle on `rim` nodes (`rim + 1` nodes).
    pub fn wheel(rim: usize) -> Result<Self> {
        if rim < 3 {
            return Err(Error::invalid("a wheel needs a rim of at least 3 nodes"));
        }
        let mut edges: Vec<(usize, usize, f64)> = (1..=rim).map(|i| (0, i, 1.0)).collect();
        edges.extend((1..=rim).map(|i| (i, i % rim + 1, 1.0)));
        Self::from_edges(rim + 1, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j, 1.0))).collect();
        Self::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i, 1.0)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_edges(n, &[])
    }

    /// Built-in graphs: `wheel5`, `k3`, `path3`, and the general forms
    /// `wheelN` (N ≥ 4 total nodes), `kN`, `pathN`, `emptyN`.
    pub fn builtin(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        let parse = |prefix: &str| lower.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
        if let Some(n) = parse("wheel") {
            Self::wheel(n.saturating_sub(1))
        } else if let Some(n) = parse("path") {
            Self::path(n)
        } else if let Some(n) = parse("empty") {
            Self::empty(n)
        } else if let Some(n) = parse("k") {
            Self::complete(n)
        } else {
            Err(Error::invalid(format!("unknown graph `{name}`")))
        }
    }

    /// Parses either an `n×n` whitespace-separated adjacency matrix or an
    /// edge list of `i j [weight]` lines (0-indexed, weight 1 by default).
    /// Lines starting with `#` are ignored. The text is read as a matrix
    /// when it has as many rows as tokens per row and that matrix is a valid
    /// adjacency; otherwise it is read as an edge list.
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Vec<Vec<&str>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.split_whitespace().collect())
            .collect();
        if rows.is_empty() {
            return Err(Error::Empty);
        }
        let num = |t: &str| t.parse::<f64>().map_err(|_| Error::invalid(format!("not a number: `{t}`")));
        let n = rows.len();
        if rows.iter().all(|r| r.len() == n) {
            let data = rows.iter().flatten().map(|t| num(t)).collect::<Result<Vec<_>>>()?;
            if let Ok(net) = Self::new(Matrix::new(n, n, data)?) {
                return Ok(net);
            }
        }
        let mut edges = Vec::with_capacity(rows.len());
        for r in &rows {
            if !(2..=3).contains(&r.len()) {
                return Err(Error::invalid(format!("edge lines need `i j [weight]`, got `{}`", r.join(" "))));
            }
            let idx = |t: &str| t.parse::<usize>().map_err(|_| Error::invalid(format!("not a node index: `{t}`")));
            let w = if r.len() == 3 { num(r[2])? } else { 1.0 };
            edges.push((idx(r[0])?, idx(r[1])?, w));
        }
        let n = edges.iter().map(|&(i, j, _)| i.max(j) + 1).max().unwrap_or(0);
        Self::from_edges(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.adjacency.rows()
    }

    pub fn adjacency(&self) -> &Matrix {
        &self.adjacency
    }

    pub fn laplacian(&self) -> &Matrix {
        &self.laplacian
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumInfo {
    /// Laplacian eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    pub lambda2: f64,
    pub lambda_n: f64,
    /// `λ_n / λ₂`; infinite for a disconnected graph.
    pub ratio: f64,
    pub connected: bool,
}

impl SpectrumInfo {
    /// Builds the summary from ascending eigenvalues `0 = λ₁ ≤ λ₂ ≤ … ≤ λ_n`.
    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>) -> Result<Self> {
        if eigenvalues.len() < 2 {
            return Err(Error::invalid("a spectrum needs at least two eigenvalues"));
        }
        eigenvalues.sort_by(f64::total_cmp);
        if eigenvalues[0].abs() > SPECTRUM_TOL {
            return Err(Error::invalid(format!("smallest Laplacian eigenvalue {} is not 0", eigenvalues[0])));
        }
        let lambda2 = eigenvalues[1];
        let lambda_n = *eigenvalues.last().unwrap();
        let connected = lambda2 > SPECTRUM_TOL;
        let ratio = if connected { lambda_n / lambda2 } else { f64::INFINITY };
        Ok(Self { eigenvalues, lambda2, lambda_n, ratio, connected })
    }

    /// Eigenvalues of the transverse modes, `λ₂, …, λ_n`.
    pub fn transverse(&self) -> &[f64] {
        &self.eigenvalues[1..]
    }

    /// Topology factor `max_{i ≥ 2} |1 − κλ_i|`.
    pub fn topology_factor(&self, kappa: f64) -> f64 {
        self.transverse().iter().map(|l| (1.0 - kappa * l).abs()).fold(0.0, f64::max)
    }
}

pub fn spectrum(net: &Network) -> Result<SpectrumInfo> {
    SpectrumInfo::from_eigenvalues(symmetric_eigenvalues(net.laplacian())?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttractorSample {
    /// Consecutive orbit points after the transient.
    pub points: Vec<Vector>,
    pub burn_in: usize,
    pub count: usize,
    pub seed: u64,
    /// Initial state after the seeded perturbation.
    pub x0: Vector,
}

impl AttractorSample {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Iterates `F` from `x0` (shifted by a seeded uniform offset in
/// `[−SEED_BOX, SEED_BOX]` per coordinate), discards `burn_in` steps and
/// keeps the next `count` consecutive states.
pub fn sample_attractor(f: &MapSystem, x0: &[f64], burn_in: usize, count: usize, seed: u64) -> Result<AttractorSample> {
    if !f.is_time_invariant() {
        return Err(Error::invalid("attractor sampling needs a time-invariant map"));
    }
    if count == 0 {
        return Err(Error::invalid("sample count must be at least 1"));
    }
    if x0.len() != f.dim() {
        return Err(Error::dims(f.dim(), x0.len()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start: Vec<f64> = x0.iter().map(|v| v + rng.gen_range(-SEED_BOX..=SEED_BOX)).collect();
    let start = Vector::new(start)?;
    let mut x = start.as_slice().to_vec();
    for k in 0..burn_in {
        x = f.step_checked(k, &x)?;
    }
    let mut points = Vec::with_capacity(count);
    for k in burn_in..burn_in + count {
        let next = if points.len() + 1 < count { Some(f.step_checked(k, &x)?) } else { None };
        points.push(Vector::from_vec_unchecked(x));
        match next {
            Some(n) => x = n,
            None => break,
        }
    }
    Ok(AttractorSample { points, burn_in, count, seed, x0: start })
}

/// Picks `n` distinct sample points as initial node states.
pub fn attractor_states(sample: &AttractorSample, n: usize, seed: u64) -> Result<Vec<Vector>> {
    if n > sample.len() {
        return Err(Error::invalid(format!("cannot draw {n} distinct states from {} points", sample.len())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(index::sample(&mut rng, sample.len(), n).into_iter().map(|i| sample.points[i].clone()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BetaKind {
    /// Attractor average; drives the lim-mean quantities.
    Mean,
    /// Attractor maximum; drives the sup-mean quantities.
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaStats {
    pub p: usize,
    pub beta_mean: f64,
    pub beta_max: f64,
    /// Number of p-step windows averaged over.
    pub sample_size: usize,
}

impl BetaStats {
    pub fn beta(&self, kind: BetaKind) -> f64 {
        match kind {
            BetaKind::Mean => self.beta_mean,
            BetaKind::Max => self.beta_max,
        }
    }
}

/// Mean and maximum of `‖DF(s_{k+p−1}) ⋯ DF(s_k)‖` over every window of `p`
/// consecutive sample points.
pub fn beta_stats(f: &MapSystem, sample: &AttractorSample, p: usize, norm: &NormSpec) -> Result<BetaStats> {
    if p == 0 {
        return Err(Error::invalid("p must be at least 1"));
    }
    if sample.len() < p {
        return Err(Error::invalid(format!("sample of {} points is shorter than p = {p}", sample.len())));
    }
    if norm.dim() != f.dim() {
        return Err(Error::dims(f.dim(), norm.dim()));
    }
    let jacobians = sample.points.iter().map(|s| f.jacobian(0, s)).collect::<Result<Vec<_>>>()?;
    let windows = sample.len() - p + 1;
    let norms = (0..windows)
        .into_par_iter()
        .map(|k| {
            let mut product = jacobians[k].clone();
            for jac in &jacobians[k + 1..k + p] {
                product = jac.mul_unchecked(&product);
            }
            if !product.is_finite() || product.max_abs() >= DIRECT_PRODUCT_LIMIT {
                return Err(Error::Overflow { step: p });
            }
            norm.operator_norm(&product)
        })
        .collect::<Result<Vec<f64>>>()?;
    let beta_mean = norms.iter().sum::<f64>() / windows as f64;
    let beta_max = norms.iter().copied().fold(0.0, f64::max);
    Ok(BetaStats { p, beta_mean, beta_max, sample_size: windows })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KappaBounds {
    pub p: usize,
    pub l_mean: f64,
    pub u_mean: f64,
    pub l_max: f64,
    pub u_max: f64,
    /// Synchronizability; `+∞` when `β^{1/p} ≤ 1`.
    pub s_mean: f64,
    pub s_max: f64,
}

impl KappaBounds {
    pub fn mean_empty(&self) -> bool {
        self.l_mean >= self.u_mean
    }

    pub fn max_empty(&self) -> bool {
        self.l_max >= self.u_max
    }

    /// `[L_max, U_max] ⊆ [L_mean, U_mean]` (vacuous when the inner one is empty).
    pub fn nested(&self) -> bool {
        self.max_empty() || (self.l_mean <= self.l_max && self.u_max <= self.u_mean)
    }

    pub fn interval(&self, kind: BetaKind) -> (f64, f64) {
        match kind {
            BetaKind::Mean => (self.l_mean, self.u_mean),
            BetaKind::Max => (self.l_max, self.u_max),
        }
    }
}

fn bounds_for(lambda2: f64, lambda_n: f64, beta: f64, p: usize) -> (f64, f64, f64) {
    let b = beta.powf(1.0 / p as f64);
    let lower = (b - 1.0) / (lambda2 * b);
    let upper = (b + 1.0) / (lambda_n * b);
    let s = if b <= 1.0 { f64::INFINITY } else { (b + 1.0) / (b - 1.0) };
    (lower, upper, s)
}

/// Coupling-strength window `L < κ < U` and synchronizability `S` from
/// `b = β^{1/p}`: `L = (b − 1)/(λ₂ b)`, `U = (b + 1)/(λ_n b)`,
/// `S = (b + 1)/(b − 1)`.
pub fn kappa_bounds(spec: &SpectrumInfo, beta: &BetaStats) -> Result<KappaBounds> {
    if !spec.connected {
        return Err(Error::invalid("coupling bounds need a connected graph (λ₂ > 0)"));
    }
    if beta.p == 0 {
        return Err(Error::invalid("p must be at least 1"));
    }
    if !(beta.beta_mean > 0.0 && beta.beta_max > 0.0) || !(beta.beta_mean.is_finite() && beta.beta_max.is_finite()) {
        return Err(Error::invalid("β values must be positive and finite"));
    }
    let (l_mean, u_mean, s_mean) = bounds_for(spec.lambda2, spec.lambda_n, beta.beta_mean, beta.p);
    let (l_max, u_max, s_max) = bounds_for(spec.lambda2, spec.lambda_n, beta.beta_max, beta.p);
    Ok(KappaBounds { p: beta.p, l_mean, u_mean, l_max, u_max, s_mean, s_max })
}

/// Transverse reactivity `β · max_i |1 − κλ_i|^p − 1` of the p-step
/// variational dynamics with `H ≡ F`.
pub fn transverse_reactivity(spec: &SpectrumInfo, beta: f64, kappa: f64, p: usize) -> Result<f64> {
    if kappa < 0.0 || !kappa.is_finite() {
        return Err(Error::invalid("κ must be a nonnegative real"));
    }
    if p == 0 {
        return Err(Error::invalid("p must be at least 1"));
    }
    Ok(beta * spec.topology_factor(kappa).powi(p as i32) - 1.0)
}

/// Block-diagonal transverse matrix, one `m×m` block per transverse
/// Laplacian eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct TransverseStep {
    pub blocks: Vec<Matrix>,
}

impl TransverseStep {
    /// `σ1` of the full block-diagonal matrix.
    pub fn sigma1(&self) -> Result<f64> {
        self.blocks.iter().try_fold(0.0, |m, b| Ok(f64::max(m, spectral_norm(b)?)))
    }

    /// Dense `(n−1)m × (n−1)m` form.
    pub fn to_dense(&self) -> Matrix {
        let m = self.blocks.first().map_or(0, Matrix::rows);
        let size = m * self.blocks.len();
        let mut data = vec![0.0; size * size];
        for (b, block) in self.blocks.iter().enumerate() {
            for i in 0..m {
                for j in 0..m {
                    data[(b * m + i) * size + b * m + j] = block.get(i, j);
                }
            }
        }
        Matrix::from_parts(size, size, data)
    }
}

fn check_coupled_pair(f: &MapSystem, h: &MapSystem) -> Result<()> {
    if f.dim() != h.dim() {
        return Err(Error::dims(f.dim(), h.dim()));
    }
    if !(f.is_time_invariant() && h.is_time_invariant()) {
        return Err(Error::invalid("node dynamics and coupling must be time-invariant"));
    }
    Ok(())
}

/// `Z(s) = I_{n−1} ⊗ DF(s) − κ Λ̂ ⊗ DH(s)`, built per eigenvalue block.
pub fn general_transverse_step(
    f: &MapSystem,
    h: &MapSystem,
    spec: &SpectrumInfo,
    kappa: f64,
    s: &[f64],
) -> Result<TransverseStep> {
    check_coupled_pair(f, h)?;
    let df = f.jacobian(0, s)?;
    let dh = h.jacobian(0, s)?;
    let blocks = spec.transverse().iter().map(|&l| df.sub(&dh.scaled(kappa * l))).collect::<Result<Vec<_>>>()?;
    Ok(TransverseStep { blocks })
}

/// `Z(s_{p−1}) ⋯ Z(s_0)` along the synchronous orbit from `s`.
pub fn transverse_p_product(
    f: &MapSystem,
    h: &MapSystem,
    spec: &SpectrumInfo,
    kappa: f64,
    s: &[f64],
    p: usize,
) -> Result<TransverseStep> {
    if p == 0 {
        return Err(Error::invalid("p must be at least 1"));
    }
    let mut state = s.to_vec();
    let mut product = general_transverse_step(f, h, spec, kappa, &state)?;
    for k in 1..p {
        state = f.step_checked(k - 1, &state)?;
        let step = general_transverse_step(f, h, spec, kappa, &state)?;
        for (acc, z) in product.blocks.iter_mut().zip(&step.blocks) {
            *acc = z.mul_unchecked(acc);
        }
    }
    Ok(TransverseStep { blocks: product.blocks })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub k_f: usize,
    pub k_0: usize,
    pub threshold: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self { k_f: 10_000, k_0: 9_000, threshold: 1e-10 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimOutcome {
    /// Synchronization error; `+∞` when the network diverged.
    pub e: f64,
    pub synchronized: bool,
    /// Step at which a node state left the finite range, if any.
    pub diverged_at: Option<usize>,
}

fn spread(states: &[Vec<f64>]) -> f64 {
    let n = states.len() as f64;
    let m = states[0].len();
    // Offsets from the first node keep the mean exact when all nodes agree.
    let mean: Vec<f64> =
        (0..m).map(|c| states[0][c] + states.iter().map(|s| s[c] - states[0][c]).sum::<f64>() / n).collect();
    states.iter().map(|s| dist2(s, &mean)).sum::<f64>() / n
}

/// Simulates the coupled network from `initial` (one state per node) and
/// reports `E = (1/(k_f − k_0)) Σ_{k=k_0}^{k_f} (1/n) Σ_i ‖x^i_k − x̄_k‖₂`.
pub fn simulate_coupled(
    net: &Network,
    f: &MapSystem,
    h: &MapSystem,
    kappa: f64,
    initial: &[Vector],
    cfg: &SimConfig,
) -> Result<SimOutcome> {
    check_coupled_pair(f, h)?;
    if initial.len() != net.n() {
        return Err(Error::dims(net.n(), initial.len()));
    }
    if let Some(bad) = initial.iter().find(|s| s.dim() != f.dim()) {
        return Err(Error::dims(f.dim(), bad.dim()));
    }
    if cfg.k_0 >= cfg.k_f {
        return Err(Error::invalid("k_0 must be smaller than k_f"));
    }
    if kappa < 0.0 || !kappa.is_finite() {
        return Err(Error::invalid("κ must be a nonnegative real"));
    }
    let n = net.n();
    let a = net.adjacency();
    let mut x: Vec<Vec<f64>> = initial.iter().map(|s| s.as_slice().to_vec()).collect();
    let mut total = 0.0;
    for k in 0..=cfg.k_f {
        if k >= cfg.k_0 {
            total += spread(&x);
        }
        if k == cfg.k_f {
            break;
        }
        let fx: Vec<Vec<f64>> = x.iter().map(|s| f.eval_raw(0, s)).collect();
        let hx: Vec<Vec<f64>> = x.iter().map(|s| h.eval_raw(0, s)).collect();
        // −κ Σ_j L_ij H(x^j) = κ Σ_j A_ij (H(x^j) − H(x^i)); zero when all nodes agree.
        let next: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let mut xi = fx[i].clone();
                for j in (0..n).filter(|&j| a.get(i, j) != 0.0) {
                    let w = kappa * a.get(i, j);
                    for (c, v) in xi.iter_mut().enumerate() {
                        *v += w * (hx[j][c] - hx[i][c]);
                    }
                }
                xi
            })
            .collect();
        if next.iter().flatten().any(|v| !v.is_finite() || v.abs() > crate::dynamics::DIVERGENCE_BOUND) {
            return Ok(SimOutcome { e: f64::INFINITY, synchronized: false, diverged_at: Some(k + 1) });
        }
        x = next;
    }
    let e = total / (cfg.k_f - cfg.k_0) as f64;
    Ok(SimOutcome { e, synchronized: e < cfg.threshold, diverged_at: None })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KappaSim {
    pub kappa: f64,
    pub outcome: SimOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KappaSweep {
    pub spectrum: SpectrumInfo,
    pub betas: Vec<BetaStats>,
    pub bounds: Vec<KappaBounds>,
    pub simulations: Vec<KappaSim>,
    /// The synchronized κ values form one contiguous run of the grid.
    pub sync_contiguous: bool,
    /// Steps beyond `p = 1` where `U_mean` decreased.
    pub upper_trend_violations: usize,
    /// Steps beyond `p = 1` where `L_mean` increased.
    pub lower_trend_violations: usize,
}

/// Coupling bounds for every `p` in `ps` from one attractor sample, and
/// simulated synchronization for every κ in `kappas` from one set of
/// initial node states.
pub fn sweep_kappa(
    net: &Network,
    f: &MapSystem,
    h: &MapSystem,
    sample: &AttractorSample,
    ps: &[usize],
    kappas: &[f64],
    sim: &SimConfig,
    norm: &NormSpec,
) -> Result<KappaSweep> {
    let spec = spectrum(net)?;
    let mut ps = ps.to_vec();
    ps.sort_unstable();
    ps.dedup();
    let betas = ps.par_iter().map(|&p| beta_stats(f, sample, p, norm)).collect::<Result<Vec<_>>>()?;
    let bounds = betas.iter().map(|b| kappa_bounds(&spec, b)).collect::<Result<Vec<_>>>()?;
    let mut kappas = kappas.to_vec();
    kappas.sort_by(f64::total_cmp);
    let initial = attractor_states(sample, net.n(), sample.seed)?;
    let simulations = kappas
        .par_iter()
        .map(|&kappa| Ok(KappaSim { kappa, outcome: simulate_coupled(net, f, h, kappa, &initial, sim)? }))
        .collect::<Result<Vec<_>>>()?;

    let synced: Vec<usize> =
        simulations.iter().enumerate().filter(|(_, s)| s.outcome.synchronized).map(|(i, _)| i).collect();
    let sync_contiguous = synced.windows(2).all(|w| w[1] == w[0] + 1);
    let later: Vec<&KappaBounds> = bounds.iter().filter(|b| b.p > 1).collect();
    let upper_trend_violations = later.windows(2).filter(|w| w[1].u_mean < w[0].u_mean).count();
    let lower_trend_violations = later.windows(2).filter(|w| w[1].l_mean > w[0].l_mean).count();
    Ok(KappaSweep {
        spectrum: spec,
        betas,
        bounds,
        simulations,
        sync_contiguous,
        upper_trend_violations,
        lower_trend_violations,
    })
}
