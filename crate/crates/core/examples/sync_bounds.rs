//! Coupling-strength windows and synchronizability of Hénon maps on the
//! wheel graph, from lim-mean and sup-mean attractor statistics.

use discrete_contraction::dynamics::MapSystem;
use discrete_contraction::net_sync::{beta_stats, kappa_bounds, sample_attractor, spectrum, Network};
use discrete_contraction::norms::{NormFamily, NormSpec};

fn main() -> discrete_contraction::Result<()> {
    let f = MapSystem::henon_classic();
    let spec = spectrum(&Network::wheel(4)?)?;
    let sample = sample_attractor(&f, &[0.1, 0.1], 1000, 10_000 + 49, 0)?;
    let norm = NormSpec::unweighted(NormFamily::L2, 2);
    println!("eigenratio {:.4}", spec.ratio);
    println!(
        "{:>3} {:>9} {:>9} {:>8} {:>8} {:>8} {:>8} {:>7} {:>7}",
        "p", "b_mean", "b_max", "L_mean", "U_mean", "L_max", "U_max", "S_mean", "S_max"
    );
    for p in [1, 2, 5, 10, 20, 50] {
        let beta = beta_stats(&f, &sample, p, &norm)?;
        let b = kappa_bounds(&spec, &beta)?;
        println!(
            "{p:>3} {:>9.3e} {:>9.3e} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>7.3} {:>7.3}",
            beta.beta_mean, beta.beta_max, b.l_mean, b.u_mean, b.l_max, b.u_max, b.s_mean, b.s_max
        );
    }
    Ok(())
}
