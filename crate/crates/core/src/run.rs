//! Reproducible command runs shared by the `dcontract` binary and the
//! library: a [`RunConfig`] resolves to a table of rows plus diagnostics,
//! rendered as CSV or JSON.
//!
//! CSV output starts with two comment lines, `# config: {…}` and
//! `# diagnostics: {…}`, followed by a header row. Reals are written with 17
//! significant digits. JSON output is one object `{config, rows,
//! diagnostics}`, where non-finite reals appear as `"inf"`, `"-inf"` or
//! `null` (NaN).

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::dynamics::MapSystem;
use crate::error::Error;
use crate::ftle::{ftle_direction, mftle, mle_estimate, Convention};
use crate::interval_cert::{self, Family, SearchConfig};
use crate::linalg::Matrix;
use crate::mean_reactivity::{mean_report, stepwise_reactivity, DEFAULT_BAND};
use crate::net_sync::{
    self, attractor_states, beta_stats, kappa_bounds, sample_attractor, simulate_coupled, Network, SimConfig,
};
use crate::norms::{NormFamily, NormSpec};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_INFEASIBLE: i32 = 4;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "DCONTRACT_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SystemName {
    /// `x ↦ αx(1 − x)`.
    Logistic,
    /// Logistic map alternating parameters `base + e`, `base − e`.
    LogisticTv,
    /// Hénon map `(x, y) ↦ (y + 1 − a x², b x)`.
    Henon,
    /// Linear rule `A_k = [[0.5, λ^k], [0, 0.5]]`.
    Example1,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields, default)]
pub struct SystemArgs {
    /// Built-in system.
    #[arg(long = "system", value_enum, default_value_t = SystemName::Henon)]
    pub name: SystemName,
    /// Logistic parameter α.
    #[arg(long, default_value_t = 3.2)]
    pub alpha: f64,
    /// Decay rate λ of the linear example.
    #[arg(long, default_value_t = 0.9)]
    pub lambda: f64,
    /// Hénon parameter a.
    #[arg(long = "henon-a", default_value_t = 1.4)]
    pub henon_a: f64,
    /// Hénon parameter b.
    #[arg(long = "henon-b", default_value_t = 0.3)]
    pub henon_b: f64,
    /// Centre parameter of the alternating logistic map.
    #[arg(long, default_value_t = 3.075)]
    pub base: f64,
    /// Half-spread of the alternating logistic map.
    #[arg(long = "tv-e", default_value_t = 2.6)]
    pub e: f64,
}

impl Default for SystemArgs {
    fn default() -> Self {
        Self { name: SystemName::Henon, alpha: 3.2, lambda: 0.9, henon_a: 1.4, henon_b: 0.3, base: 3.075, e: 2.6 }
    }
}

impl SystemArgs {
    pub fn build(&self) -> crate::Result<MapSystem> {
        match self.name {
            SystemName::Logistic => MapSystem::logistic(self.alpha),
            SystemName::LogisticTv => MapSystem::time_varying_logistic(self.base, self.e),
            SystemName::Henon => Ok(MapSystem::henon(self.henon_a, self.henon_b)),
            SystemName::Example1 => Ok(MapSystem::example1_linear(self.lambda)),
        }
    }

    fn default_x0(&self) -> Vec<f64> {
        match self.name {
            SystemName::Logistic | SystemName::LogisticTv => vec![0.2],
            SystemName::Henon => vec![0.1, 0.1],
            SystemName::Example1 => vec![1.0, 0.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields, default)]
pub struct ReactivityArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Norm family: l1, l2 or linf.
    #[arg(long, default_value = "l2")]
    pub norm: NormFamily,
    /// Diagonal of the weight matrix Q (identity when omitted).
    #[arg(long, value_delimiter = ',')]
    pub weight: Option<Vec<f64>>,
    /// Iteration count p of the composed map.
    #[arg(long, default_value_t = 1)]
    pub p: usize,
    /// Number of steps k in the series.
    #[arg(long, default_value_t = 50)]
    pub window: usize,
    /// First step index.
    #[arg(long, default_value_t = 0)]
    pub k0: usize,
    /// Initial state (system default when omitted).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub x0: Option<Vec<f64>>,
}

impl Default for ReactivityArgs {
    fn default() -> Self {
        Self { system: SystemArgs::default(), norm: NormFamily::L2, weight: None, p: 1, window: 50, k0: 0, x0: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields, default)]
pub struct FtleArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub x0: Option<Vec<f64>>,
    /// Horizons p.
    #[arg(long = "p", value_delimiter = ',', default_values_t = [1usize, 10, 100])]
    pub ps: Vec<usize>,
    /// Unit perturbation direction for the directional exponent.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub direction: Option<Vec<f64>>,
    /// Horizon of the maximum Lyapunov exponent estimate (at least 1000).
    #[arg(long)]
    pub mle_horizon: Option<usize>,
    /// Transient discarded before the MLE estimate.
    #[arg(long, default_value_t = 1000)]
    pub burn_in: usize,
}

impl Default for FtleArgs {
    fn default() -> Self {
        Self {
            system: SystemArgs::default(),
            x0: None,
            ps: vec![1, 10, 100],
            direction: None,
            mle_horizon: None,
            burn_in: 1000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum IntervalMode {
    TimeInvariant,
    TimeVarying,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields, default)]
pub struct IntervalArgs {
    #[arg(long, value_enum, default_value_t = IntervalMode::TimeInvariant)]
    pub mode: IntervalMode,
    /// Single α (time-invariant mode).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Single e (time-varying mode).
    #[arg(long)]
    pub e: Option<f64>,
    /// Start of a parameter sweep.
    #[arg(long)]
    pub from: Option<f64>,
    /// End of a parameter sweep (inclusive).
    #[arg(long)]
    pub to: Option<f64>,
    /// Parameter sweep step.
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    /// Centre parameter of the alternating map.
    #[arg(long, default_value_t = 3.075)]
    pub base: f64,
    /// Even iteration counts p.
    #[arg(long = "p", value_delimiter = ',', default_values_t = [2usize])]
    pub ps: Vec<usize>,
    /// Separation ε from the fixed point (time-invariant mode).
    #[arg(long, default_value_t = interval_cert::DEFAULT_EPSILON)]
    pub epsilon: f64,
    /// Coarse grid points per axis.
    #[arg(long, default_value_t = 50)]
    pub grid_points: usize,
}

impl Default for IntervalArgs {
    fn default() -> Self {
        Self {
            mode: IntervalMode::TimeInvariant,
            alpha: None,
            e: None,
            from: None,
            to: None,
            step: 0.01,
            base: 3.075,
            ps: vec![2],
            epsilon: interval_cert::DEFAULT_EPSILON,
            grid_points: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields, default)]
pub struct SyncBoundsArgs {
    /// Built-in graph (wheel5, k3, path3, kN, pathN, wheelN) or a file
    /// holding an adjacency matrix or an `i j [weight]` edge list.
    #[arg(long, default_value = "wheel5")]
    pub graph: String,
    #[command(flatten)]
    pub system: SystemArgs,
    /// Largest p; rows are produced for p = 1..=p_max.
    #[arg(long, default_value_t = 100)]
    pub p_max: usize,
    /// Minimum number of p-step windows per β estimate.
    #[arg(long, default_value_t = 10_000)]
    pub sample_size: usize,
    #[arg(long, default_value_t = 1000)]
    pub burn_in: usize,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub x0: Option<Vec<f64>>,
}

impl Default for SyncBoundsArgs {
    fn default() -> Self {
        Self {
            graph: "wheel5".into(),
            system: SystemArgs::default(),
            p_max: 100,
            sample_size: 10_000,
            burn_in: 1000,
            x0: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields, default)]
pub struct SyncSimArgs {
    #[arg(long, default_value = "wheel5")]
    pub graph: String,
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, default_value_t = 0.0)]
    pub kappa_from: f64,
    #[arg(long, default_value_t = 0.5)]
    pub kappa_to: f64,
    #[arg(long, default_value_t = 0.01)]
    pub kappa_step: f64,
    #[arg(long, default_value_t = 10_000)]
    pub k_f: usize,
    #[arg(long, default_value_t = 9_000)]
    pub k_0: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub threshold: f64,
    /// p of the predicted coupling window reported in the diagnostics.
    #[arg(long, default_value_t = 20)]
    pub p: usize,
    #[arg(long, default_value_t = 10_000)]
    pub sample_size: usize,
    #[arg(long, default_value_t = 1000)]
    pub burn_in: usize,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub x0: Option<Vec<f64>>,
}

impl Default for SyncSimArgs {
    fn default() -> Self {
        Self {
            graph: "wheel5".into(),
            system: SystemArgs::default(),
            kappa_from: 0.0,
            kappa_to: 0.5,
            kappa_step: 0.01,
            k_f: 10_000,
            k_0: 9_000,
            threshold: 1e-10,
            p: 20,
            sample_size: 10_000,
            burn_in: 1000,
            x0: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Reactivity(ReactivityArgs),
    Ftle(FtleArgs),
    IntervalCert(IntervalArgs),
    SyncBounds(SyncBoundsArgs),
    SyncSim(SyncSimArgs),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => float_json(*v),
            Cell::Bool(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }
}

fn float_json(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else if v.is_nan() {
        Value::Null
    } else if v > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn int(v: usize) -> Cell {
    Cell::Int(v as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// At least one interval problem had no certified pair.
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub config: RunConfig,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub diagnostics: Map<String, Value>,
    pub status: Status,
}

impl RunOutput {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Infeasible => EXIT_INFEASIBLE,
        }
    }

    pub fn render(&self) -> Result<String, RunError> {
        let config = serde_json::to_value(&self.config).map_err(|e| RunError::Io(e.to_string()))?;
        match self.config.format {
            Format::Csv => {
                let mut out = String::new();
                let _ = writeln!(out, "# config: {config}");
                let _ = writeln!(out, "# diagnostics: {}", Value::Object(self.diagnostics.clone()));
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| RunError::Io(e.to_string());
                w.write_record(&self.columns).map_err(io)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::csv)).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| RunError::Io(e.to_string()))?;
                out.push_str(&String::from_utf8(bytes).map_err(|e| RunError::Io(e.to_string()))?);
                Ok(out)
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        Value::Object(self.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.json())).collect())
                    })
                    .collect();
                let doc = json!({ "config": config, "rows": rows, "diagnostics": self.diagnostics });
                Ok(format!("{doc}\n"))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RunError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(Error),
    #[error("i/o: {0}")]
    Io(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) | RunError::Io(_) => EXIT_USAGE,
            RunError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            RunError::Numerical(e)
        } else {
            RunError::Usage(e.to_string())
        }
    }
}

fn x0_or_default(x0: &Option<Vec<f64>>, system: &SystemArgs) -> Vec<f64> {
    x0.clone().unwrap_or_else(|| system.default_x0())
}

fn load_graph(spec: &str) -> Result<Network, RunError> {
    let path = std::path::Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| RunError::Io(format!("{spec}: {e}")))?;
        return Ok(Network::parse(&text)?);
    }
    Ok(Network::builtin(spec)?)
}

fn output(config: &RunConfig, columns: Vec<&'static str>, rows: Vec<Vec<Cell>>, diagnostics: Value) -> RunOutput {
    let diagnostics = match diagnostics {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    RunOutput { config: config.clone(), columns, rows, diagnostics, status: Status::Ok }
}

/// Executes one configured run.
pub fn run(config: &RunConfig) -> Result<RunOutput, RunError> {
    match &config.command {
        Command::Reactivity(a) => run_reactivity(config, a),
        Command::Ftle(a) => run_ftle(config, a),
        Command::IntervalCert(a) => run_interval(config, a),
        Command::SyncBounds(a) => run_sync_bounds(config, a),
        Command::SyncSim(a) => run_sync_sim(config, a),
    }
}

fn run_reactivity(config: &RunConfig, a: &ReactivityArgs) -> Result<RunOutput, RunError> {
    let sys = a.system.build()?;
    let norm = match &a.weight {
        Some(w) => NormSpec::new(a.norm, Matrix::diag(w))?,
        None => NormSpec::unweighted(a.norm, sys.dim()),
    };
    let x0 = x0_or_default(&a.x0, &a.system);
    let series = stepwise_reactivity(&sys, &norm, &x0, a.k0, a.window, a.p)?;
    let report = mean_report(&series, DEFAULT_BAND)?;
    let rows = series.values.iter().enumerate().map(|(i, &r)| vec![int(a.k0 + i), Cell::Float(r)]).collect();
    let diagnostics = json!({
        "sup_mean": float_json(report.sup_mean),
        "lim_mean_estimate": float_json(report.lim_mean_estimate),
        "converged": report.converged,
        "classification": report.classification,
    });
    Ok(output(config, vec!["k", "r"], rows, diagnostics))
}

fn run_ftle(config: &RunConfig, a: &FtleArgs) -> Result<RunOutput, RunError> {
    let sys = a.system.build()?;
    let x0 = x0_or_default(&a.x0, &a.system);
    let mut ps = a.ps.clone();
    ps.sort_unstable();
    ps.dedup();
    let mut rows = Vec::with_capacity(ps.len());
    for &p in &ps {
        let full = mftle(&sys, &x0, p, Convention::OneOverP)?.value;
        let directional = match &a.direction {
            Some(u) => ftle_direction(&sys, &x0, u, p, Convention::OneOverP)?.value,
            None => f64::NAN,
        };
        rows.push(vec![int(p), Cell::Float(full), Cell::Float(0.5 * full), Cell::Float(directional)]);
    }
    let mut diagnostics = json!({});
    if let Some(horizon) = a.mle_horizon {
        let est = mle_estimate(&sys, &x0, horizon, a.burn_in)?;
        let trace: Vec<Value> = est.trace.iter().map(|&(p, v)| json!([p, float_json(v)])).collect();
        diagnostics =
            json!({ "mle": float_json(est.value), "mle_horizon": horizon, "burn_in": a.burn_in, "mle_trace": trace });
    }
    Ok(output(config, vec!["p", "mftle", "mftle_half", "ftle_direction"], rows, diagnostics))
}

fn run_interval(config: &RunConfig, a: &IntervalArgs) -> Result<RunOutput, RunError> {
    let (family, single) = match a.mode {
        IntervalMode::TimeInvariant => (Family::TimeInvariant { epsilon: a.epsilon }, a.alpha),
        IntervalMode::TimeVarying => (Family::TimeVarying { base: a.base }, a.e),
    };
    let (lo, hi) = match (single, a.from, a.to) {
        (Some(v), None, None) => (v, v),
        (None, Some(lo), Some(hi)) => (lo, hi),
        _ => {
            return Err(RunError::Usage(
                "give either a single parameter (--alpha or --e) or a range (--from and --to)".into(),
            ))
        }
    };
    let cfg = SearchConfig { grid_points: a.grid_points, ..SearchConfig::default() };
    let step = if lo == hi { 1.0 } else { a.step };
    let sweep = interval_cert::sweep(family, lo, hi, step, &a.ps, &cfg)?;
    let infeasible = sweep.iter().filter(|r| !r.feasible).count();
    let rows = sweep
        .iter()
        .map(|r| {
            vec![
                Cell::Float(r.param),
                int(r.p),
                Cell::Bool(r.feasible),
                Cell::Float(r.w_star),
                Cell::Float(r.a),
                Cell::Float(r.b),
                Cell::Float(r.c),
                Cell::Float(r.d),
            ]
        })
        .collect();
    let diagnostics = json!({ "infeasible_rows": infeasible, "grid_points": a.grid_points });
    let mut out = output(config, vec!["param", "p", "feasible", "w_star", "a", "b", "c", "d"], rows, diagnostics);
    if infeasible > 0 {
        out.status = Status::Infeasible;
    }
    Ok(out)
}

fn sync_system(system: &SystemArgs) -> Result<MapSystem, RunError> {
    let sys = system.build()?;
    if !sys.is_time_invariant() {
        return Err(RunError::Usage("synchronization needs a time-invariant system".into()));
    }
    Ok(sys)
}

fn run_sync_bounds(config: &RunConfig, a: &SyncBoundsArgs) -> Result<RunOutput, RunError> {
    if a.p_max == 0 || a.sample_size == 0 {
        return Err(RunError::Usage("p_max and sample_size must be at least 1".into()));
    }
    let net = load_graph(&a.graph)?;
    let spec = net_sync::spectrum(&net)?;
    let sys = sync_system(&a.system)?;
    let x0 = x0_or_default(&a.x0, &a.system);
    let sample = sample_attractor(&sys, &x0, a.burn_in, a.sample_size + a.p_max - 1, config.seed)?;
    let norm = NormSpec::unweighted(NormFamily::L2, sys.dim());
    let ps: Vec<usize> = (1..=a.p_max).collect();
    let betas = {
        use rayon::prelude::*;
        ps.par_iter().map(|&p| beta_stats(&sys, &sample, p, &norm)).collect::<crate::Result<Vec<_>>>()?
    };
    let mut rows = Vec::with_capacity(betas.len());
    for beta in &betas {
        let k = kappa_bounds(&spec, beta)?;
        rows.push(vec![
            int(k.p),
            Cell::Float(beta.beta_mean),
            Cell::Float(beta.beta_max),
            Cell::Float(k.l_mean),
            Cell::Float(k.u_mean),
            Cell::Float(k.l_max),
            Cell::Float(k.u_max),
            Cell::Float(k.s_mean),
            Cell::Float(k.s_max),
            Cell::Bool(k.nested()),
        ]);
    }
    let diagnostics = json!({
        "eigenvalues": spec.eigenvalues.iter().map(|&v| float_json(v)).collect::<Vec<_>>(),
        "ratio": float_json(spec.ratio),
        "connected": spec.connected,
        "sample_points": sample.len(),
        "seed": config.seed,
    });
    Ok(output(
        config,
        vec!["p", "beta_mean", "beta_max", "l_mean", "u_mean", "l_max", "u_max", "s_mean", "s_max", "nested"],
        rows,
        diagnostics,
    ))
}

fn run_sync_sim(config: &RunConfig, a: &SyncSimArgs) -> Result<RunOutput, RunError> {
    let net = load_graph(&a.graph)?;
    let spec = net_sync::spectrum(&net)?;
    let sys = sync_system(&a.system)?;
    let x0 = x0_or_default(&a.x0, &a.system);
    let sample = sample_attractor(&sys, &x0, a.burn_in, a.sample_size.max(a.p).max(net.n()), config.seed)?;
    let kappas = interval_cert::parameter_grid(a.kappa_from, a.kappa_to, a.kappa_step)?;
    let initial = attractor_states(&sample, net.n(), config.seed)?;
    let sim = SimConfig { k_f: a.k_f, k_0: a.k_0, threshold: a.threshold };
    let outcomes = {
        use rayon::prelude::*;
        kappas
            .par_iter()
            .map(|&k| simulate_coupled(&net, &sys, &sys, k, &initial, &sim))
            .collect::<crate::Result<Vec<_>>>()?
    };
    let rows = kappas
        .iter()
        .zip(&outcomes)
        .map(|(&k, o)| {
            vec![
                Cell::Float(k),
                Cell::Float(o.e),
                Cell::Bool(o.synchronized),
                Cell::Int(o.diverged_at.map_or(-1, |s| s as i64)),
            ]
        })
        .collect();
    let norm = NormSpec::unweighted(NormFamily::L2, sys.dim());
    let bounds = kappa_bounds(&spec, &beta_stats(&sys, &sample, a.p, &norm)?)?;
    let diagnostics = json!({
        "p": a.p,
        "mean_interval": [float_json(bounds.l_mean), float_json(bounds.u_mean)],
        "max_interval": [float_json(bounds.l_max), float_json(bounds.u_max)],
        "ratio": float_json(spec.ratio),
        "seed": config.seed,
    });
    Ok(output(config, vec!["kappa", "e", "synchronized", "diverged_at"], rows, diagnostics))
}
