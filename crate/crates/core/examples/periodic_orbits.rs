//! Fixed points and periodic orbits of the logistic map and an alternating
//! pair of logistic maps, checked against a contraction bound.

use discrete_contraction::dynamics::MapSystem;
use discrete_contraction::mean_reactivity::{
    detect_periodic_orbit, find_fixed_point, verify_contraction_inequality, IterationConfig,
};
use discrete_contraction::norms::{NormFamily, NormSpec};

fn main() -> discrete_contraction::Result<()> {
    let cfg = IterationConfig::default();
    let fp = find_fixed_point(&MapSystem::logistic(2.0)?, &[0.3], cfg)?;
    println!("logistic(2): fixed point {:.12} after {} iterations", fp.x_star.as_slice()[0], fp.iterations);

    for alpha in [2.8, 3.2, 3.5] {
        let sys = MapSystem::logistic(alpha)?;
        let orbit = detect_periodic_orbit(&sys, 4, &[0.3], cfg)?;
        let pts: Vec<String> = orbit.points.iter().map(|v| format!("{:.6}", v.as_slice()[0])).collect();
        println!("logistic({alpha}), p = 4: period {} orbit [{}]", orbit.period, pts.join(", "));
    }

    let tv = MapSystem::time_varying_logistic(3.075, 0.3)?;
    let orbit = detect_periodic_orbit(&tv, 4, &[0.3], cfg)?;
    let pts: Vec<String> = orbit.points.iter().map(|v| format!("{:.6}", v.as_slice()[0])).collect();
    println!("alternating logistic (3.075 ± 0.3): period {} orbit [{}]", orbit.period, pts.join(", "));

    let sys = MapSystem::logistic(2.5)?;
    let norm = NormSpec::unweighted(NormFamily::L1, 1);
    let check = verify_contraction_inequality(&sys, &norm, &[0.55], &[0.65], 20, 0.51)?;
    println!("logistic(2.5), lambda = 0.51: contraction holds = {}, worst ratio {:.4}", check.holds, check.worst_ratio);
    Ok(())
}
