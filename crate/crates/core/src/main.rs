use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use discrete_contraction::run::{
    self, Command, Format, FtleArgs, IntervalArgs, ReactivityArgs, RunConfig, RunError, SyncBoundsArgs, SyncSimArgs,
    THREADS_ENV,
};

const AFTER_HELP: &str = "\
Output:
  CSV starts with `# config: {...}` and `# diagnostics: {...}` comment lines,
  then a header row. Reals carry 17 significant digits. JSON is one object
  {config, rows, diagnostics}; non-finite reals appear as \"inf\", \"-inf\" or null.

Columns:
  reactivity     k, r (reactivity of the p-step linearization at step k)
  ftle           p, mftle ((1/p) log sigma1), mftle_half ((1/2p) log sigma1),
                 ftle_direction ((1/p) log of the growth of --direction, NaN if unset)
  interval-cert  param (alpha or e), p, feasible, w_star, a, b, c, d
  sync-bounds    p, beta_mean, beta_max, l_mean, u_mean, l_max, u_max,
                 s_mean, s_max, nested ([l_max, u_max] inside [l_mean, u_mean])
  sync-sim       kappa, e (synchronization error), synchronized, diverged_at (-1 if not)

Graph files:
  Either an n x n whitespace adjacency matrix or lines `i j [weight]`
  (0-indexed, symmetric closure, weight 1 by default); `#` starts a comment.
  The text is read as a matrix when it has as many rows as tokens per row and
  forms a valid adjacency, otherwise as an edge list.

Exit status:
  0 success, 2 usage or configuration error, 3 numerical failure
  (non-convergence, divergence, overflow), 4 an interval problem was infeasible.

Environment:
  DCONTRACT_THREADS  worker thread count for sweeps.";

#[derive(Parser)]
#[command(name = "dcontract", version, about = "Reactivity, contraction and synchronization analysis of discrete-time maps", after_help = AFTER_HELP)]
struct Cli {
    /// Read the whole run configuration from a JSON file instead of flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file (standard output when omitted).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Option<Sub>,
}

#[derive(Subcommand)]
enum Sub {
    /// Per-step reactivity series with prefix-mean diagnostics.
    Reactivity(ReactivityArgs),
    /// Finite-time and maximum Lyapunov exponents.
    Ftle(FtleArgs),
    /// Widest certified invariant interval pairs of logistic maps.
    IntervalCert(IntervalArgs),
    /// Coupling-strength bounds and synchronizability for p = 1..=p_max.
    SyncBounds(SyncBoundsArgs),
    /// Direct simulation of the coupled network over a coupling grid.
    SyncSim(SyncSimArgs),
}

fn resolve(cli: Cli) -> Result<RunConfig, RunError> {
    if let Some(path) = cli.config {
        let text = std::fs::read_to_string(&path).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?;
        return serde_json::from_str(&text).map_err(|e| RunError::Usage(format!("{}: {e}", path.display())));
    }
    let command = match cli.command {
        Some(Sub::Reactivity(a)) => Command::Reactivity(a),
        Some(Sub::Ftle(a)) => Command::Ftle(a),
        Some(Sub::IntervalCert(a)) => Command::IntervalCert(a),
        Some(Sub::SyncBounds(a)) => Command::SyncBounds(a),
        Some(Sub::SyncSim(a)) => Command::SyncSim(a),
        None => return Err(RunError::Usage("a subcommand or --config is required".into())),
    };
    Ok(RunConfig { command, seed: cli.seed, output: cli.output, format: cli.format })
}

fn execute(cli: Cli) -> Result<i32, RunError> {
    if let Ok(threads) = std::env::var(THREADS_ENV) {
        let n: usize =
            threads.parse().map_err(|_| RunError::Usage(format!("{THREADS_ENV} must be a positive integer")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| RunError::Usage(e.to_string()))?;
    }
    let config = resolve(cli)?;
    let out = run::run(&config)?;
    let text = out.render()?;
    match &config.output {
        Some(path) => std::fs::write(path, text).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(out.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { run::EXIT_USAGE as u8 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("dcontract: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
