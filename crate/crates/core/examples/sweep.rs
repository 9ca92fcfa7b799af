//! Batch entanglement reports over array sizes, checked against the
//! large-ζ limits.

use zeromode::harness::config::zeta_grid;
use zeromode::harness::sweep::run_sweep;
use zeromode::harness::{Scenario, ScenarioConfig};
use zeromode::metrics::asymptotic_limits;

fn main() -> zeromode::Result<()> {
    let base = Scenario::new(ScenarioConfig::default())?;
    let zetas = zeta_grid(6.0, 7);
    let reports = run_sweep(&base, &[3, 5, 7, 9], &zetas, 0)?;
    for r in reports.iter().filter(|r| r.zeta == 6.0) {
        let lim = asymptotic_limits(r.n_waveguides)?;
        println!(
            "N={}: 2V(X_1) {:.5} (limit {:.5})  nu_pair {:.5} (limit {:.5})  VLF {:.5} (limit {:.5})",
            r.n_waveguides,
            r.squeezing_per_mode[0],
            lim.squeezing,
            r.nu_pair.unwrap_or(f64::NAN),
            lim.nu_minus,
            r.vlf_values[0],
            lim.vlf
        );
    }
    Ok(())
}
