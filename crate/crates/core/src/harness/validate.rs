//! Self-check suite behind the `validate` subcommand.

use std::fmt;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classical::{analytic_shg_solution, integrate_mean_field, ClassicalField, IntegrationOptions, PumpSpec};
use crate::gaussian::{
    super_evolution, superquadrature_covariance, superquadrature_projection, LossModel, SymplecticForm,
};
use crate::harness::config::{PumpProfile, ScenarioConfig};
use crate::harness::scenario::Scenario;
use crate::lattice::SupermodeBasis;
use crate::metrics::{purity, symplectic_eigenvalues};
use crate::{Complex64, Result};

#[derive(Clone, Debug, Default)]
pub struct ValidateOptions {
    /// Small-N, short-ζ subset.
    pub quick: bool,
    /// Seed for the randomized round-trip check.
    pub seed: u64,
    /// Added to one entry of the supermode matrix before the basis checks.
    pub perturb_basis: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: &'static str, measured: f64, tol: f64) {
        let passed = measured.is_finite() && measured < tol;
        self.checks.push(Check { name, passed, detail: format!("{measured:.3e} (tol {tol:.0e})") });
    }

    fn push_result(&mut self, name: &'static str, tol: f64, r: Result<f64>) {
        match r {
            Ok(m) => self.push(name, m, tol),
            Err(e) => self.checks.push(Check { name, passed: false, detail: format!("error: {e}") }),
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag}  {:<width$}  {}", c.name, c.detail)?;
        }
        let failed = self.failed().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

fn round_trip_error(basis: &SupermodeBasis, seed: u64, trials: usize) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = basis.n();
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let v = DVector::from_fn(n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let back = basis.to_individual_basis(&basis.to_supermode_basis(&v)?)?;
        worst = worst.max((back - &v).camax());
    }
    Ok(worst)
}

/// Worst closed-form mismatch and energy drift of the zero-supermode
/// trajectory for every `N` in `sizes`.
fn classical_errors(cfg: &ScenarioConfig, sizes: &[usize], zeta: f64) -> Result<(f64, f64)> {
    let (mut err, mut drift) = (0.0f64, 0.0f64);
    for &n in sizes {
        let mut c = cfg.clone();
        c.lattice.n_waveguides = n;
        let basis = c.basis()?;
        let pump = PumpSpec::zero_supermode(&c.lattice()?, c.total_power()?)?;
        let init = ClassicalField::from_pump(&pump, &basis)?;
        let opts = IntegrationOptions::with_steps_per_zeta(zeta, c.grid.steps_per_zeta);
        let traj = integrate_mean_field(&init, &c.mean_field_model()?, zeta, opts)?;
        drift = drift.max(traj.energy_drift());
        for s in &traj.samples {
            let obs = s.zero_mode_observables(&basis)?;
            let exact = analytic_shg_solution(s.zeta)?;
            err = err.max((obs.u_f - exact.u_f).abs()).max((obs.u_h - exact.u_h).abs());
        }
    }
    Ok((err, drift))
}

fn analytic_symplecticity(zeta_max: f64, points: usize) -> Result<f64> {
    let om = SymplecticForm::new(2);
    let mut worst = 0.0f64;
    for z in crate::harness::config::zeta_grid(zeta_max, points) {
        worst = worst.max(om.deviation(&super_evolution(z)?.matrix));
    }
    Ok(worst)
}

/// Returns (numeric symplecticity, oracle mismatch, physicality margin).
fn numeric_checks(cfg: &ScenarioConfig, sizes: &[usize], zetas: &[f64]) -> Result<(f64, f64, f64)> {
    let (mut symp, mut oracle, mut margin) = (0.0f64, 0.0f64, f64::INFINITY);
    for &n in sizes {
        let mut c = cfg.clone();
        c.lattice.n_waveguides = n;
        c.pump.profile = PumpProfile::ZeroSupermode;
        c.loss.fundamental_db_per_cm = 0.0;
        c.loss.harmonic_db_per_cm = 0.0;
        let sc = Scenario::new(c)?;
        let p = superquadrature_projection(&sc.basis);
        for &z in zetas {
            let v = sc.numeric_state(z)?;
            let projected = &p * v.data() * p.transpose();
            oracle = oracle.max((projected - superquadrature_covariance(z)?.data()).amax());
            let nus = symplectic_eigenvalues(&v)?;
            margin = margin.min(nus.iter().cloned().fold(f64::INFINITY, f64::min) - 0.5);
        }
        let model = sc.config.mean_field_model()?;
        let z = *zetas.last().unwrap_or(&1.0);
        let traj = sc.trajectory(z)?;
        let prop = crate::gaussian::numeric_fluctuation_propagator(&traj, &model, 1)?;
        symp = symp.max(prop.max_symplectic_deviation());
    }
    Ok((symp, oracle, margin))
}

fn loss_margin(cfg: &ScenarioConfig, zeta: f64) -> Result<f64> {
    let ctx = cfg.context()?;
    let loss = LossModel::typical_ppln(zeta);
    let v = crate::gaussian::lossy_superquadrature_covariance(zeta, &loss, &ctx)?;
    Ok(symplectic_eigenvalues(&v)?.into_iter().fold(f64::INFINITY, f64::min) - 0.5)
}

/// Runs the suite against `config`.
pub fn run_validation(config: &ScenarioConfig, opts: &ValidateOptions) -> ValidationReport {
    let mut r = ValidationReport::default();
    let basis = match config.basis() {
        Ok(b) => b,
        Err(e) => {
            r.checks.push(Check { name: "configuration", passed: false, detail: e.to_string() });
            return r;
        }
    };
    let basis = match opts.perturb_basis {
        Some(eps) => basis.perturbed(eps),
        None => basis,
    };
    let scale = basis.spec().coupling().max(1.0);
    r.push("supermode orthogonality", basis.orthogonality_error(), 1e-12);
    r.push("supermode symmetry", basis.symmetry_error(), 1e-12);
    r.push("supermode eigenvectors", basis.eigen_residual() / scale, 1e-12);
    r.push_result("supermode round trip", 1e-12, round_trip_error(&basis, opts.seed, 16));

    let (sizes, zeta_cl, zetas_q, grid): (&[usize], f64, &[f64], usize) =
        if opts.quick { (&[3], 1.0, &[0.5], 60) } else { (&[3, 5, 7, 9], 6.0, &[0.5, 1.0, 2.0], 600) };
    match classical_errors(config, sizes, zeta_cl) {
        Ok((err, drift)) => {
            r.push("energy conservation", drift, 1e-9);
            r.push("classical closed form", err, 1e-8);
        }
        Err(e) => {
            for name in ["energy conservation", "classical closed form"] {
                r.checks.push(Check { name, passed: false, detail: format!("error: {e}") });
            }
        }
    }
    r.push_result("analytic symplecticity", 1e-9, analytic_symplecticity(6.0, grid));
    let q_sizes: &[usize] = if opts.quick { &[3] } else { &[1, 3, 5, 7, 9] };
    match numeric_checks(config, q_sizes, zetas_q) {
        Ok((symp, oracle, margin)) => {
            r.push("numeric symplecticity", symp, 1e-7);
            r.push("oracle equivalence", oracle, 1e-6);
            r.push("state physicality", -margin, 1e-9);
        }
        Err(e) => {
            for name in ["numeric symplecticity", "oracle equivalence", "state physicality"] {
                r.checks.push(Check { name, passed: false, detail: format!("error: {e}") });
            }
        }
    }
    let pure = superquadrature_covariance(zetas_q[zetas_q.len() - 1]).and_then(|v| purity(&v)).map(|m| (m - 1.0).abs());
    r.push_result("pure two-color state", 1e-9, pure);
    r.push_result("loss physicality", 1e-9, loss_margin(config, 1.0).map(|m| -m));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        let r = run_validation(&ScenarioConfig::default(), &ValidateOptions { quick: true, ..Default::default() });
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn perturbed_basis_names_orthogonality() {
        let opts = ValidateOptions { quick: true, perturb_basis: Some(1e-3), ..Default::default() };
        let r = run_validation(&ScenarioConfig::default(), &opts);
        assert!(!r.all_passed());
        assert!(r.failed().any(|c| c.name == "supermode orthogonality"));
        assert!(r.to_string().contains("FAIL  supermode orthogonality"));
    }
}
