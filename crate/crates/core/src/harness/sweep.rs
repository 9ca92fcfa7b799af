//! Batch entanglement reports over array sizes and a ζ grid.

use rayon::prelude::*;

use crate::harness::scenario::Scenario;
use crate::metrics::EntanglementReport;
use crate::{Error, Result};

/// One report per `(N, ζ)` cell, `N` outer and `ζ` inner.
///
/// Cells are evaluated on a pool of `workers` threads (0 picks the rayon
/// default) and collected in input order, so the result does not depend on
/// scheduling.
pub fn run_sweep(base: &Scenario, n_list: &[usize], zetas: &[f64], workers: usize) -> Result<Vec<EntanglementReport>> {
    if let Some(&n) = n_list.iter().find(|&&n| n % 2 == 0 || n == 0) {
        return Err(Error::InvalidLattice(format!("sweep requires odd N, got {n}")));
    }
    let scenarios = n_list.iter().map(|&n| base.with_n(n)).collect::<Result<Vec<_>>>()?;
    let cells: Vec<(usize, f64)> =
        (0..scenarios.len()).flat_map(|s| zetas.iter().map(move |&z| (s, z))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    pool.install(|| cells.par_iter().map(|&(s, z)| scenarios[s].report(z)).collect())
}

/// Sweep as CSV text, padded to the largest `N`.
pub fn sweep_csv(reports: &[EntanglementReport]) -> String {
    let n_max = reports.iter().map(|r| r.n_waveguides).max().unwrap_or(1);
    let mut s = EntanglementReport::csv_header(n_max);
    s.push('\n');
    for r in reports {
        s.push_str(&r.csv_row(n_max));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::ScenarioConfig;

    fn base() -> Scenario {
        Scenario::new(ScenarioConfig::default()).unwrap()
    }

    #[test]
    fn single_vacuum_row() {
        let r = run_sweep(&base(), &[3], &[0.0], 1).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].squeezing_per_mode.iter().all(|&s| (s - 1.0).abs() < 1e-15));
        assert_eq!(sweep_csv(&r).lines().count(), 2);
    }

    #[test]
    fn even_n_rejected() {
        assert!(run_sweep(&base(), &[3, 4], &[0.0, 1.0], 2).is_err());
    }

    #[test]
    fn order_and_worker_independence() {
        let zetas = [0.0, 0.5, 1.0, 1.5];
        let a = run_sweep(&base(), &[5, 3], &zetas, 1).unwrap();
        let b = run_sweep(&base(), &[5, 3], &zetas, 4).unwrap();
        assert_eq!(sweep_csv(&a), sweep_csv(&b));
        assert_eq!(a[0].n_waveguides, 5);
        assert_eq!(a[4].n_waveguides, 3);
        assert_eq!(a[5].zeta, 0.5);
    }
}
