//! Laplacian spectra of built-in and parsed graphs, with the eigenratio
//! that bounds synchronizability.

use discrete_contraction::net_sync::{spectrum, Network};

fn main() -> discrete_contraction::Result<()> {
    for name in ["wheel5", "k5", "path5", "wheel8"] {
        show(name, &Network::builtin(name)?)?;
    }
    let edges = "# a triangle with a pendant node\n0 1\n1 2\n2 0\n2 3 0.5\n";
    show("parsed edge list", &Network::parse(edges)?)?;
    Ok(())
}

fn show(label: &str, net: &Network) -> discrete_contraction::Result<()> {
    let spec = spectrum(net)?;
    let eig: Vec<String> = spec.eigenvalues.iter().map(|v| format!("{:.4}", v.max(0.0))).collect();
    println!(
        "{label:>16}: n = {}, eigenvalues [{}], lambda_n / lambda_2 = {:.4}, connected = {}",
        net.n(),
        eig.join(", "),
        spec.ratio,
        spec.connected
    );
    Ok(())
}
