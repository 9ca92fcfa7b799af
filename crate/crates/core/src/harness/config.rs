//! Scenario configuration: a TOML file plus command-line overrides.

use std::path::{Path, PathBuf};

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classical::{MeanFieldModel, NormalizationContext, PumpSpec, DEFAULT_STEPS_PER_ZETA};
use crate::gaussian::LossModel;
use crate::lattice::{build_supermode_basis, LatticeSpec, SupermodeBasis};
use crate::{Error, Result};

const DEFAULT_POWER_PER_GUIDE: f64 = 200.0;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub lattice: LatticeConfig,
    #[serde(default)]
    pub physics: PhysicsConfig,
    #[serde(default)]
    pub pump: PumpConfig,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub loss: LossConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LatticeConfig {
    pub n_waveguides: usize,
    /// Coupling constant `C`, mm⁻¹.
    pub coupling: f64,
}

impl Default for LatticeConfig {
    fn default() -> Self {
        Self { n_waveguides: 9, coupling: 0.1 }
    }
}

fn default_nonlinearity() -> f64 {
    25e-4
}

/// At most one of `power_per_guide` and `total_power` may be set; with
/// neither, `power_per_guide` defaults to 200 mW.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicsConfig {
    /// `g`, mm⁻¹·mW^-1/2.
    #[serde(default = "default_nonlinearity")]
    pub nonlinearity: f64,
    /// `P_l`, mW.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power_per_guide: Option<f64>,
    /// `P`, mW.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_power: Option<f64>,
}

impl Default for PhysicsConfig {
    fn default() -> Self {
        Self { nonlinearity: default_nonlinearity(), power_per_guide: Some(DEFAULT_POWER_PER_GUIDE), total_power: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum PumpProfile {
    #[default]
    ZeroSupermode,
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct PumpConfig {
    pub profile: PumpProfile,
    /// Supermode coefficients as `[re, im]` pairs, for `explicit`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub global_phase: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub zeta_max: f64,
    /// Number of output samples over `[0, zeta_max]`, endpoints included.
    pub points: usize,
    pub steps_per_zeta: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { zeta_max: 2.0, points: 400, steps_per_zeta: DEFAULT_STEPS_PER_ZETA }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct LossConfig {
    pub fundamental_db_per_cm: f64,
    pub harmonic_db_per_cm: f64,
    /// Defaults to 64 segments per unit ζ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segments: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: PathBuf,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { dir: PathBuf::from("out") }
    }
}

/// Command-line values that take precedence over the file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub zeta_max: Option<f64>,
    pub steps: Option<usize>,
    pub loss_f: Option<f64>,
    pub loss_h: Option<f64>,
    pub segments: Option<usize>,
}

impl ScenarioConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Canonical TOML form; `parse(canonical())` reproduces `self`.
    pub fn canonical(&self) -> String {
        toml::to_string(self).expect("config is always serializable")
    }

    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        if let Some(out) = &o.out {
            self.output.dir = out.clone();
        }
        if let Some(z) = o.zeta_max {
            self.grid.zeta_max = z;
        }
        if let Some(s) = o.steps {
            self.grid.steps_per_zeta = s;
        }
        if let Some(a) = o.loss_f {
            self.loss.fundamental_db_per_cm = a;
        }
        if let Some(a) = o.loss_h {
            self.loss.harmonic_db_per_cm = a;
        }
        if let Some(s) = o.segments {
            self.loss.segments = Some(s);
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        self.lattice()?;
        self.context()?;
        self.loss_model()?;
        let g = &self.grid;
        if !(g.zeta_max >= 0.0 && g.zeta_max.is_finite()) {
            return Err(Error::Config(format!("grid.zeta_max must be finite and >= 0, got {}", g.zeta_max)));
        }
        if g.points < 1 || (g.points == 1 && g.zeta_max != 0.0) {
            return Err(Error::Config("grid.points must be >= 2 (or 1 with zeta_max = 0)".into()));
        }
        if g.steps_per_zeta == 0 {
            return Err(Error::Config("grid.steps_per_zeta must be >= 1".into()));
        }
        if self.pump.profile == PumpProfile::Explicit {
            self.pump_spec()?;
        }
        Ok(())
    }

    pub fn lattice(&self) -> Result<LatticeSpec> {
        LatticeSpec::new(self.lattice.n_waveguides, self.lattice.coupling).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn basis(&self) -> Result<SupermodeBasis> {
        Ok(build_supermode_basis(self.lattice()?))
    }

    pub fn context(&self) -> Result<NormalizationContext> {
        let p = &self.physics;
        let ctx = match (p.power_per_guide, p.total_power) {
            (Some(pl), None) => NormalizationContext::new(p.nonlinearity, pl),
            (None, None) => NormalizationContext::new(p.nonlinearity, DEFAULT_POWER_PER_GUIDE),
            (None, Some(total)) => NormalizationContext::from_total_power(p.nonlinearity, total, &self.lattice()?),
            _ => return Err(Error::Config("set at most one of physics.power_per_guide and physics.total_power".into())),
        };
        ctx.map_err(|e| Error::Config(e.to_string()))
    }

    pub fn total_power(&self) -> Result<f64> {
        Ok(self.context()?.power_per_guide() * self.lattice()?.half_dim() as f64)
    }

    pub fn pump_spec(&self) -> Result<PumpSpec> {
        let lattice = self.lattice()?;
        let power = self.total_power()?;
        let spec = match self.pump.profile {
            PumpProfile::ZeroSupermode => PumpSpec::zero_supermode(&lattice, power).map(|p| {
                PumpSpec::new(p.coefficients().clone(), power, self.pump.global_phase).expect("valid pump")
            }),
            PumpProfile::Explicit => {
                let coeffs = self
                    .pump
                    .coefficients
                    .as_ref()
                    .ok_or_else(|| Error::Config("explicit pump requires pump.coefficients".into()))?;
                if coeffs.len() != lattice.n_waveguides() {
                    return Err(Error::Config(format!(
                        "pump.coefficients has {} entries, lattice has {} supermodes",
                        coeffs.len(),
                        lattice.n_waveguides()
                    )));
                }
                let v = DVector::from_iterator(coeffs.len(), coeffs.iter().map(|c| Complex64::new(c[0], c[1])));
                PumpSpec::new(v, power, self.pump.global_phase)
            }
        };
        spec.map_err(|e| Error::Config(e.to_string()))
    }

    pub fn is_zero_supermode_pump(&self) -> bool {
        self.pump.profile == PumpProfile::ZeroSupermode
    }

    pub fn mean_field_model(&self) -> Result<MeanFieldModel> {
        Ok(MeanFieldModel::new(self.lattice()?, &self.context()?))
    }

    pub fn loss_model(&self) -> Result<LossModel> {
        let l = &self.loss;
        let segments = l.segments.unwrap_or_else(|| LossModel::default_segments(self.grid.zeta_max));
        LossModel::new(l.fundamental_db_per_cm, l.harmonic_db_per_cm, segments).map_err(|e| Error::Config(e.to_string()))
    }

    /// `points` samples of `[0, zeta_max]`.
    pub fn zeta_grid(&self) -> Vec<f64> {
        zeta_grid(self.grid.zeta_max, self.grid.points)
    }
}

pub fn zeta_grid(zeta_max: f64, points: usize) -> Vec<f64> {
    if points <= 1 {
        return vec![0.0];
    }
    (0..points).map(|i| zeta_max * i as f64 / (points - 1) as f64).collect()
}
