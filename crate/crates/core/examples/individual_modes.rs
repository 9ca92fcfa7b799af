//! Amplitude squeezing of each individual waveguide for several array sizes,
//! with the large-ζ limit (N-1)/(N+1) for odd guides.

use zeromode::gaussian::individual_covariance;
use zeromode::lattice::{build_supermode_basis, LatticeSpec};
use zeromode::metrics::asymptotic_limits;

fn main() -> zeromode::Result<()> {
    let zeta = 3.0;
    for n in [1, 3, 5, 7, 9] {
        let basis = build_supermode_basis(LatticeSpec::new(n, 0.1)?);
        let v = individual_covariance(zeta, &basis)?;
        let sq: Vec<String> = (0..n).map(|j| format!("{:.4}", 2.0 * v.var_x(j))).collect();
        let limit = if n >= 3 { format!("{:.4}", asymptotic_limits(n)?.squeezing) } else { "none".into() };
        println!("N={n}: 2V(X_j,X_j) at zeta={zeta}: [{}]  limit {limit}", sq.join(", "));
    }
    Ok(())
}
