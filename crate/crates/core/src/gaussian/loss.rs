//! Propagation losses as fictitious beam splitters mixing in vacuum.

use nalgebra::DMatrix;

use super::covariance::{propagate_covariance, CovarianceMatrix, SymplecticForm};
use super::superquad::{super_evolution, superquadrature_labels};
use crate::classical::NormalizationContext;
use crate::{Error, Result};

pub const DEFAULT_SEGMENTS_PER_ZETA: usize = 64;

/// Typical PPLN waveguide loss, dB/cm.
pub const TYPICAL_LOSS_DB_PER_CM: f64 = 0.1;

/// Uniform propagation loss for both colors, applied over `n_segments`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LossModel {
    pub fundamental_db_per_cm: f64,
    pub harmonic_db_per_cm: f64,
    pub n_segments: usize,
}

impl LossModel {
    pub fn new(fundamental_db_per_cm: f64, harmonic_db_per_cm: f64, n_segments: usize) -> Result<Self> {
        for a in [fundamental_db_per_cm, harmonic_db_per_cm] {
            if !(a >= 0.0 && a.is_finite()) {
                return Err(Error::Domain(format!("loss coefficient must be finite and >= 0, got {a}")));
            }
        }
        if n_segments == 0 {
            return Err(Error::Domain("at least one loss segment is required".into()));
        }
        Ok(Self { fundamental_db_per_cm, harmonic_db_per_cm, n_segments })
    }

    /// `DEFAULT_SEGMENTS_PER_ZETA` segments per unit ζ, at least one.
    pub fn default_segments(zeta_max: f64) -> usize {
        ((zeta_max * DEFAULT_SEGMENTS_PER_ZETA as f64).ceil() as usize).max(1)
    }

    /// 0.1 dB/cm on both colors.
    pub fn typical_ppln(zeta_max: f64) -> Self {
        Self {
            fundamental_db_per_cm: TYPICAL_LOSS_DB_PER_CM,
            harmonic_db_per_cm: TYPICAL_LOSS_DB_PER_CM,
            n_segments: Self::default_segments(zeta_max),
        }
    }

    pub fn lossless(n_segments: usize) -> Self {
        Self { fundamental_db_per_cm: 0.0, harmonic_db_per_cm: 0.0, n_segments: n_segments.max(1) }
    }

    pub fn is_lossless(&self) -> bool {
        self.fundamental_db_per_cm == 0.0 && self.harmonic_db_per_cm == 0.0
    }

    /// `η = 10^(-α Δz / 10)` for a length `dz_mm`.
    pub fn transmittivity(db_per_cm: f64, dz_mm: f64) -> f64 {
        10f64.powf(-db_per_cm * (dz_mm / 10.0) / 10.0)
    }
}

/// `V' = T V T + (I - T²)/2` with `T = diag(√η_m ⊗ (1, 1))`.
pub fn apply_loss(v: &CovarianceMatrix, eta: &[f64]) -> Result<CovarianceMatrix> {
    if eta.len() != v.n_modes() {
        return Err(Error::Dimension { expected: v.n_modes(), got: eta.len() });
    }
    if let Some(&bad) = eta.iter().find(|&&e| !(0.0..=1.0).contains(&e)) {
        return Err(Error::InvalidTransmittivity(bad));
    }
    let dim = 2 * v.n_modes();
    let t = |i: usize| eta[i / 2].sqrt();
    let data = DMatrix::from_fn(dim, dim, |r, c| {
        let vac = if r == c { 0.5 * (1.0 - eta[r / 2]) } else { 0.0 };
        t(r) * v.get(r, c) * t(c) + vac
    });
    Ok(CovarianceMatrix::from_parts_unchecked(data, v.labels().to_vec()))
}

/// Splits `[0, ζ_max]` into `n_segments` equal pieces. Each piece applies
/// half its loss, the lossless propagator `segment(ζ_a, ζ_b)`, then the
/// other half (symmetric splitting). `eta_segment` holds the per-mode
/// transmittivity of one full segment.
pub fn lossy_propagation<F>(
    v0: &CovarianceMatrix,
    zeta_max: f64,
    n_segments: usize,
    eta_segment: &[f64],
    mut segment: F,
) -> Result<CovarianceMatrix>
where
    F: FnMut(f64, f64) -> Result<DMatrix<f64>>,
{
    if n_segments == 0 {
        return Err(Error::Domain("at least one loss segment is required".into()));
    }
    let half: Vec<f64> = eta_segment.iter().map(|e| e.sqrt()).collect();
    let lossless = eta_segment.iter().all(|&e| e == 1.0);
    let mut v = v0.clone();
    for i in 0..n_segments {
        let za = zeta_max * i as f64 / n_segments as f64;
        let zb = zeta_max * (i + 1) as f64 / n_segments as f64;
        if !lossless {
            v = apply_loss(&v, &half)?;
        }
        v = propagate_covariance(&v, &segment(za, zb)?)?;
        if !lossless {
            v = apply_loss(&v, &half)?;
        }
    }
    Ok(v)
}

/// Superquadrature state at `ζ_max` with losses; vacuum input.
pub fn lossy_superquadrature_covariance(
    zeta_max: f64,
    loss: &LossModel,
    ctx: &NormalizationContext,
) -> Result<CovarianceMatrix> {
    let v0 = CovarianceMatrix::vacuum(superquadrature_labels());
    if loss.is_lossless() {
        return propagate_covariance(&v0, &super_evolution(zeta_max)?.matrix);
    }
    let dz = ctx.zeta_to_z(zeta_max / loss.n_segments as f64);
    let eta = [
        LossModel::transmittivity(loss.fundamental_db_per_cm, dz),
        LossModel::transmittivity(loss.harmonic_db_per_cm, dz),
    ];
    let om = SymplecticForm::new(2);
    lossy_propagation(&v0, zeta_max, loss.n_segments, &eta, |za, zb| {
        let ua = super_evolution(za)?.matrix;
        Ok(super_evolution(zb)?.matrix * om.symplectic_inverse(&ua))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::superquadrature_covariance;

    fn squeezed_half() -> CovarianceMatrix {
        CovarianceMatrix::new(DMatrix::from_row_slice(2, 2, &[0.25, 0.0, 0.0, 1.0]), vec!["s".into()]).unwrap()
    }

    #[test]
    fn channel_limits() {
        let v = squeezed_half();
        assert_eq!(apply_loss(&v, &[1.0]).unwrap(), v);
        let vac = apply_loss(&v, &[0.0]).unwrap();
        assert!((vac.data() - DMatrix::identity(2, 2) * 0.5).amax() < 1e-15);
        let lossy = apply_loss(&v, &[0.9]).unwrap();
        assert!((2.0 * lossy.var_x(0) - 0.55).abs() < 1e-15);
        assert!(matches!(apply_loss(&v, &[1.1]), Err(Error::InvalidTransmittivity(_))));
        assert!(matches!(apply_loss(&v, &[-0.1]), Err(Error::InvalidTransmittivity(_))));
        assert!(apply_loss(&v, &[0.5, 0.5]).is_err());
    }

    #[test]
    fn transmittivity_in_db() {
        assert!((LossModel::transmittivity(10.0, 10.0) - 0.1).abs() < 1e-15);
        assert_eq!(LossModel::transmittivity(0.0, 123.0), 1.0);
        assert!(LossModel::new(-0.1, 0.0, 4).is_err());
        assert!(LossModel::new(0.1, 0.0, 0).is_err());
    }

    fn ctx() -> NormalizationContext {
        NormalizationContext::new(25e-4, 200.0).unwrap()
    }

    #[test]
    fn zero_loss_is_lossless() {
        let v0 = CovarianceMatrix::vacuum(superquadrature_labels());
        let om = SymplecticForm::new(2);
        // force the segmented path
        let v = lossy_propagation(&v0, 1.5, 96, &[1.0, 1.0], |a, b| {
            Ok(super_evolution(b)?.matrix * om.symplectic_inverse(&super_evolution(a)?.matrix))
        })
        .unwrap();
        let exact = superquadrature_covariance(1.5).unwrap();
        assert!((v.data() - exact.data()).amax() < 1e-12);
    }

    #[test]
    fn segment_doubling_converges() {
        for zeta in [1.0, 2.0] {
            let n = LossModel::default_segments(zeta);
            let a = lossy_superquadrature_covariance(zeta, &LossModel::new(0.1, 0.1, n).unwrap(), &ctx()).unwrap();
            let b = lossy_superquadrature_covariance(zeta, &LossModel::new(0.1, 0.1, 2 * n).unwrap(), &ctx()).unwrap();
            assert!((a.data() - b.data()).amax() < 1e-6, "zeta {zeta}");
        }
    }

    #[test]
    fn loss_degrades_squeezing_and_stays_physical() {
        let lossless = superquadrature_covariance(1.0).unwrap();
        let lossy = lossy_superquadrature_covariance(1.0, &LossModel::typical_ppln(1.0), &ctx()).unwrap();
        assert!(lossy.var_x(0) > lossless.var_x(0));
        assert!(lossy.var_x(0) < 0.5);
        assert!(lossy.min_mode_determinant() >= 0.25 - 1e-9);
    }
}
