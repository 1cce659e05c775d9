//! Finite-time and maximal Lyapunov exponents of the Hénon and logistic
//! maps, and the link between L2 reactivity and the maximal FTLE.

use discrete_contraction::dynamics::MapSystem;
use discrete_contraction::ftle::{ftle_direction, mftle, mle_estimate, reactivity_ftle_bridge, Convention};
use discrete_contraction::linalg::Matrix;

fn main() -> discrete_contraction::Result<()> {
    let henon = MapSystem::henon_classic();
    for p in [1, 10, 100, 1000] {
        let top = mftle(&henon, &[0.1, 0.1], p, Convention::OneOverP)?;
        let dir = ftle_direction(&henon, &[0.1, 0.1], &[1.0, 0.0], p, Convention::OneOverP)?;
        println!("Hénon p = {p:>4}: maximal FTLE {:+.5}, along e1 {:+.5}", top.value, dir.value);
    }

    let mle = mle_estimate(&henon, &[0.1, 0.1], 100_000, 1000)?;
    println!("Hénon MLE over {} steps: {:.5}", mle.horizon, mle.value);
    for (p, v) in &mle.trace {
        println!("  running estimate at {p:>6}: {v:.5}");
    }

    let logistic = MapSystem::logistic(4.0)?;
    let l = mftle(&logistic, &[0.2], 100_000, Convention::OneOverP)?;
    println!("logistic(4) maximal FTLE over 1e5 steps: {:.5} (ln 2 = {:.5})", l.value, 2f64.ln());

    let diag = MapSystem::linear(Matrix::diag(&[2.0, 0.5]))?;
    let bridge = reactivity_ftle_bridge(&diag, &[0.0, 0.0], 3)?;
    println!(
        "diag(2, 0.5), p = 3: r2 = {:.3}, FTLE {:.6} (1/p) and {:.6} (1/2p), residuals {:.1e} and {:.1e}",
        bridge.r2, bridge.mftle_one_over_p, bridge.mftle_half, bridge.residual_one_over_p, bridge.residual_half
    );
    Ok(())
}
