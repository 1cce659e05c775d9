//! Widest certified invariant interval pairs for the logistic map across a
//! parameter range, for p = 2 and p = 4.

use discrete_contraction::interval_cert::{sweep, Family, SearchConfig, DEFAULT_EPSILON};

fn main() -> discrete_contraction::Result<()> {
    let cfg = SearchConfig::default();
    println!("time-invariant logistic, alpha in [3.1, 3.4]");
    let rows = sweep(Family::TimeInvariant { epsilon: DEFAULT_EPSILON }, 3.1, 3.4, 0.01, &[2, 4], &cfg)?;
    print_rows(&rows);
    println!("\nalternating logistic around 3.075, e in [2.5, 2.8]");
    let rows = sweep(Family::TimeVarying { base: 3.075 }, 2.5, 2.8, 0.01, &[2, 4], &cfg)?;
    print_rows(&rows);
    Ok(())
}

fn print_rows(rows: &[discrete_contraction::interval_cert::SweepRow]) {
    println!("{:>6} {:>2} {:>8} {:>9} {:>9} {:>9} {:>9} {:>9}", "param", "p", "feasible", "w*", "a", "b", "c", "d");
    for r in rows {
        println!(
            "{:>6.3} {:>2} {:>8} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>9.5}",
            r.param, r.p, r.feasible, r.w_star, r.a, r.b, r.c, r.d
        );
    }
}
