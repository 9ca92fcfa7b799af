//! Optimized van Loock-Furusawa combinations over odd-guide pairs; values
//! below 2 witness inseparability and every pair gives the same number.

use zeromode::gaussian::individual_covariance;
use zeromode::lattice::{build_supermode_basis, LatticeSpec};
use zeromode::metrics::optimize_vlf_gains;

fn main() -> zeromode::Result<()> {
    let zeta = 2.0;
    for n in [3, 5, 7, 9] {
        let basis = build_supermode_basis(LatticeSpec::new(n, 0.1)?);
        let v = individual_covariance(zeta, &basis)?;
        let parties = basis.spec().odd_guides();
        for k in 0..parties.len() - 1 {
            let opt = optimize_vlf_gains(&v, &parties, (k, k + 1))?;
            let gains: Vec<String> = opt.gains.iter().map(|g| format!("{g:.3}")).collect();
            println!(
                "N={n} guides ({}, {}): VLF = {:.6}  gains [{}]",
                parties[k] + 1,
                parties[k + 1] + 1,
                opt.value,
                gains.join(", ")
            );
        }
    }
    Ok(())
}
