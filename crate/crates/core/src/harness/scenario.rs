//! A configured array ready to compute states and reports.

use crate::classical::{integrate_mean_field, ClassicalField, IntegrationOptions, NormalizationContext, Trajectory};
use crate::gaussian::{
    embed_to_individual, lossy_propagation, lossy_superquadrature_covariance, numeric_fluctuation_propagator,
    superquadrature_covariance, CovarianceMatrix, LossModel,
};
use crate::harness::config::ScenarioConfig;
use crate::lattice::SupermodeBasis;
use crate::metrics::EntanglementReport;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub basis: SupermodeBasis,
    pub context: NormalizationContext,
    pub loss: LossModel,
}

impl Scenario {
    pub fn new(config: ScenarioConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self { basis: config.basis()?, context: config.context()?, loss: config.loss_model()?, config })
    }

    /// Same scenario for a different array size.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        let mut cfg = self.config.clone();
        cfg.lattice.n_waveguides = n;
        Self::new(cfg)
    }

    /// Loss segments for a run to `zeta`, keeping the configured density.
    fn segments_for(&self, zeta: f64) -> usize {
        let zmax = self.config.grid.zeta_max;
        if zmax == 0.0 {
            return 1;
        }
        ((self.loss.n_segments as f64 * zeta / zmax).round() as usize).max(1)
    }

    fn require_zero_supermode(&self) -> Result<()> {
        if self.config.is_zero_supermode_pump() {
            Ok(())
        } else {
            Err(Error::Config("the superquadrature pipeline requires the zero-supermode pump".into()))
        }
    }

    /// Two-mode (fundamental supermode, collective harmonic) state at `zeta`.
    pub fn superquadrature(&self, zeta: f64) -> Result<CovarianceMatrix> {
        self.require_zero_supermode()?;
        if self.loss.is_lossless() {
            superquadrature_covariance(zeta)
        } else {
            let loss = LossModel { n_segments: self.segments_for(zeta), ..self.loss };
            lossy_superquadrature_covariance(zeta, &loss, &self.context)
        }
    }

    /// Individual fundamental modes at `zeta`, via the supermode embedding.
    pub fn individual(&self, zeta: f64) -> Result<CovarianceMatrix> {
        embed_to_individual(&self.superquadrature(zeta)?.reduce(&[0])?, &self.basis)
    }

    pub fn report(&self, zeta: f64) -> Result<EntanglementReport> {
        EntanglementReport::from_superquadrature(zeta, &self.superquadrature(zeta)?, &self.basis)
    }

    /// Mean-field trajectory for the configured pump, undecimated.
    pub fn trajectory(&self, zeta: f64) -> Result<Trajectory> {
        let opts = IntegrationOptions::with_steps_per_zeta(zeta, self.config.grid.steps_per_zeta);
        self.trajectory_with(zeta, opts)
    }

    /// Trajectory to `zeta_max`, decimated to roughly the configured grid.
    pub fn sampled_trajectory(&self) -> Result<Trajectory> {
        let g = &self.config.grid;
        let intervals = g.points.saturating_sub(1).max(1);
        let total = IntegrationOptions::with_steps_per_zeta(g.zeta_max, g.steps_per_zeta).n_steps;
        let decimation = total.div_ceil(intervals).max(1);
        self.trajectory_with(g.zeta_max, IntegrationOptions { n_steps: decimation * intervals, decimation })
    }

    fn trajectory_with(&self, zeta: f64, opts: IntegrationOptions) -> Result<Trajectory> {
        let init = ClassicalField::from_pump(&self.config.pump_spec()?, &self.basis)?;
        integrate_mean_field(&init, &self.config.mean_field_model()?, zeta, opts)
    }

    /// Full `2N`-mode state (fundamentals `f1..fN`, then harmonics
    /// `h1..hN`) from the numerically integrated fluctuation propagator,
    /// for any pump profile, with the configured losses.
    pub fn numeric_state(&self, zeta: f64) -> Result<CovarianceMatrix> {
        let n = self.basis.n();
        let segments = if self.loss.is_lossless() { 1 } else { self.segments_for(zeta) };
        // propagator steps (two trajectory steps each) must land on segment boundaries
        let per_segment =
            ((zeta * self.config.grid.steps_per_zeta as f64 / 2.0 / segments as f64).ceil() as usize).max(1);
        let opts = IntegrationOptions { n_steps: 2 * per_segment * segments, decimation: 1 };
        let traj = self.trajectory_with(zeta, opts)?;
        let model = self.config.mean_field_model()?;
        let prop = numeric_fluctuation_propagator(&traj, &model, per_segment)?;
        let mut labels = CovarianceMatrix::numbered_labels("f", n);
        labels.extend(CovarianceMatrix::numbered_labels("h", n));
        let v0 = CovarianceMatrix::vacuum(labels);
        let dz = self.context.zeta_to_z(zeta / segments as f64);
        let eta_f = LossModel::transmittivity(self.loss.fundamental_db_per_cm, dz);
        let eta_h = LossModel::transmittivity(self.loss.harmonic_db_per_cm, dz);
        let eta: Vec<f64> = (0..2 * n).map(|m| if m < n { eta_f } else { eta_h }).collect();
        lossy_propagation(&v0, zeta, segments, &eta, |za, zb| {
            let find = |z: f64| {
                prop.zetas
                    .iter()
                    .position(|&s| (s - z).abs() < 1e-9 * z.max(1.0))
                    .ok_or_else(|| Error::GridMismatch(format!("no propagator sample at zeta {z}")))
            };
            Ok(prop.between(find(za)?, find(zb)?))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::PumpProfile;

    #[test]
    fn numeric_state_agrees_on_superquadratures() {
        let mut cfg = ScenarioConfig::default();
        cfg.lattice.n_waveguides = 3;
        let sc = Scenario::new(cfg).unwrap();
        let v = sc.numeric_state(1.0).unwrap();
        let p = crate::gaussian::superquadrature_projection(&sc.basis);
        let projected = &p * v.data() * p.transpose();
        assert!((projected - sc.superquadrature(1.0).unwrap().data()).amax() < 1e-6);
    }

    #[test]
    fn numeric_state_is_globally_pure_and_obeys_uncertainty() {
        let mut cfg = ScenarioConfig::default();
        cfg.lattice.n_waveguides = 5;
        let sc = Scenario::new(cfg).unwrap();
        let v = sc.numeric_state(1.5).unwrap();
        let prod: f64 = crate::metrics::symplectic_eigenvalues(&v).unwrap().iter().product();
        let pure = 0.5f64.powi(v.n_modes() as i32);
        assert!((prod / pure - 1.0).abs() < 1e-6);
        assert!(v.min_mode_determinant() >= 0.25 - 1e-9);
    }

    #[test]
    fn explicit_pump_refuses_analytic_path() {
        let mut cfg = ScenarioConfig::default();
        cfg.lattice.n_waveguides = 3;
        cfg.pump.profile = PumpProfile::Explicit;
        cfg.pump.coefficients = Some(vec![[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]);
        let sc = Scenario::new(cfg).unwrap();
        assert!(sc.superquadrature(1.0).is_err());
        assert!(sc.numeric_state(0.5).is_ok());
    }

    #[test]
    fn lossy_numeric_path_matches_lossy_analytic() {
        let mut cfg = ScenarioConfig::default();
        cfg.lattice.n_waveguides = 3;
        cfg.grid.zeta_max = 1.0;
        cfg.loss.fundamental_db_per_cm = 0.2;
        cfg.loss.harmonic_db_per_cm = 0.2;
        cfg.loss.segments = Some(50);
        let sc = Scenario::new(cfg).unwrap();
        let v = sc.numeric_state(1.0).unwrap();
        let p = crate::gaussian::superquadrature_projection(&sc.basis);
        let projected = &p * v.data() * p.transpose();
        assert!((projected - sc.superquadrature(1.0).unwrap().data()).amax() < 1e-6);
    }
}
