//! Full 2N-mode state from the numerically integrated linearized
//! fluctuations, for a pump that is not the zero supermode.

use zeromode::harness::config::PumpProfile;
use zeromode::harness::{Scenario, ScenarioConfig};
use zeromode::metrics::{nu_minus, symplectic_eigenvalues};

fn main() -> zeromode::Result<()> {
    let mut cfg = ScenarioConfig::default();
    cfg.lattice.n_waveguides = 5;
    cfg.pump.profile = PumpProfile::Explicit;
    cfg.pump.coefficients = Some(vec![[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]]);
    let sc = Scenario::new(cfg)?;
    for zeta in [0.25, 0.5, 1.0] {
        let v = sc.numeric_state(zeta)?;
        let min_nu = symplectic_eigenvalues(&v)?.into_iter().fold(f64::INFINITY, f64::min);
        let pair = nu_minus(&v.reduce(&[0, 2])?, &[1])?;
        let sq: Vec<String> = (0..5).map(|j| format!("{:.4}", 2.0 * v.var_x(j))).collect();
        println!("zeta={zeta}: 2V(X_j) [{}]  nu_-(1,3) {pair:.4}  min nu {min_nu:.9}", sq.join(", "));
    }
    Ok(())
}
