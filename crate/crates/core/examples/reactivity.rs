//! Reactivity of the time-varying linear rule `A_k = [[0.5, 0.9^k], [0, 0.5]]`
//! in weighted and unweighted norms, and how p-iteration turns a reactive
//! start into contraction at every step.

use discrete_contraction::dynamics::{example1_matrix, MapSystem};
use discrete_contraction::linalg::Matrix;
use discrete_contraction::mean_reactivity::{mean_report, stepwise_reactivity, DEFAULT_BAND};
use discrete_contraction::norms::{reactivity_linear, NormFamily, NormSpec};

fn main() -> discrete_contraction::Result<()> {
    let weighted = NormSpec::new(NormFamily::L1, Matrix::diag(&[1.0, 3.0]))?;
    println!("weighted L1 with Q = diag(1, 3)");
    for k in [0, 1, 5, 10, 20] {
        let r = reactivity_linear(&weighted, &example1_matrix(0.9, k))?;
        println!("  k = {k:>2}: r = {r:+.6}");
    }

    let sys = MapSystem::example1_linear(0.9);
    let l2 = NormSpec::unweighted(NormFamily::L2, 2);
    for p in 1..=3 {
        let series = stepwise_reactivity(&sys, &l2, &[0.0, 0.0], 0, 50, p)?;
        let report = mean_report(&series, DEFAULT_BAND)?;
        let positive: Vec<usize> = (0..series.values.len()).filter(|&k| series.values[k] > 0.0).collect();
        println!(
            "L2, p = {p}: r_0 = {:+.6}, positive at k = {positive:?}, sup-mean {:+.6}, lim-mean {:+.6}, {:?}",
            series.values[0], report.sup_mean, report.lim_mean_estimate, report.classification
        );
    }
    Ok(())
}
