//! Entanglement between the fundamental supermode and the collective
//! harmonic, and the purity of the fundamental alone.

use zeromode::gaussian::superquadrature_covariance;
use zeromode::metrics::{log_negativity, nu_minus, purity};

fn main() -> zeromode::Result<()> {
    println!("{:>5} {:>12} {:>10} {:>10}", "zeta", "nu_-", "E_N", "mu_f");
    for z in [0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0] {
        let v = superquadrature_covariance(z)?;
        let nu = nu_minus(&v, &[1])?;
        let mu = purity(&v.reduce(&[0])?)?;
        println!("{z:5.2} {nu:12.6e} {:10.4} {mu:10.6}", log_negativity(nu)?);
    }
    Ok(())
}
