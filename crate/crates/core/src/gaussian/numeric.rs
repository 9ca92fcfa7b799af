//! Linearized fluctuation propagator integrated along a numeric mean-field
//! trajectory. Serves as an independent check of the closed-form
//! superquadrature solution and carries the modes the analytic path drops.
//!
//! Mode ordering is the `N` fundamentals followed by the `N` harmonics,
//! each as an interleaved `(X, Y)` pair, for a `4N`-dimensional phase space.
//! With `a = (X + iY)/√2`, the linearized equations read
//!
//! ```text
//! da_f,j/dζ = i c (a_f,j-1 + a_f,j+1) + 2iγ (α_h,j a_f,j† + α_f,j* a_h,j)
//! da_h,j/dζ = 2iγ α_f,j a_f,j
//! ```

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::classical::{ClassicalField, MeanFieldModel, Trajectory};
use crate::gaussian::SymplecticForm;
use crate::rk4::rk4_step;
use crate::{Error, Result};

/// Propagators `U(ζ_k, ζ_0)` sampled along the trajectory.
#[derive(Clone, Debug)]
pub struct FluctuationPropagator {
    pub zetas: Vec<f64>,
    pub matrices: Vec<DMatrix<f64>>,
}

impl FluctuationPropagator {
    pub fn last(&self) -> &DMatrix<f64> {
        self.matrices.last().expect("propagator is never empty")
    }

    /// Propagator stored at `zeta`, if that grid point was kept.
    pub fn at(&self, zeta: f64) -> Option<&DMatrix<f64>> {
        self.zetas.iter().position(|&z| (z - zeta).abs() < 1e-9).map(|i| &self.matrices[i])
    }

    /// `U(ζ_b, ζ_a) = U(ζ_b) U(ζ_a)⁻¹` between stored samples.
    pub fn between(&self, a: usize, b: usize) -> DMatrix<f64> {
        let om = SymplecticForm::new(self.matrices[a].nrows() / 2);
        &self.matrices[b] * om.symplectic_inverse(&self.matrices[a])
    }

    /// Worst symplectic deviation over all stored samples.
    pub fn max_symplectic_deviation(&self) -> f64 {
        let om = SymplecticForm::new(self.matrices[0].nrows() / 2);
        self.matrices.iter().map(|u| om.deviation(u)).fold(0.0, f64::max)
    }
}

/// Real `4N × 4N` generator of the quadrature dynamics at one mean field.
pub(crate) fn fluctuation_generator(field: &ClassicalField, model: &MeanFieldModel) -> DMatrix<f64> {
    let n = field.n();
    let c = model.coupling();
    let two_ig = Complex64::new(0.0, 2.0 * model.gamma());
    let mut a = DMatrix::zeros(4 * n, 4 * n);
    // da_m += k a_n  ->  X/Y blocks [[Re k, -Im k], [Im k, Re k]]
    let mut add_k = |m: usize, nn: usize, k: Complex64| {
        a[(2 * m, 2 * nn)] += k.re;
        a[(2 * m, 2 * nn + 1)] -= k.im;
        a[(2 * m + 1, 2 * nn)] += k.im;
        a[(2 * m + 1, 2 * nn + 1)] += k.re;
    };
    for j in 0..n {
        if j > 0 {
            add_k(j, j - 1, Complex64::new(0.0, c));
        }
        if j + 1 < n {
            add_k(j, j + 1, Complex64::new(0.0, c));
        }
        add_k(j, n + j, two_ig * field.fundamental[j].conj());
        add_k(n + j, j, two_ig * field.fundamental[j]);
    }
    // da_m += q a_m†  ->  [[Re q, Im q], [Im q, -Re q]]
    for j in 0..n {
        let q = two_ig * field.harmonic[j];
        a[(2 * j, 2 * j)] += q.re;
        a[(2 * j, 2 * j + 1)] += q.im;
        a[(2 * j + 1, 2 * j)] += q.im;
        a[(2 * j + 1, 2 * j + 1)] -= q.re;
    }
    a
}

/// Integrates `dU/dζ = A(ζ) U`, `U(0) = I`, with RK4 of step `2h` using the
/// trajectory samples (step `h`) for start, midpoint and end fields. The
/// trajectory must be undecimated with an even number of steps. Every
/// `store_every`-th propagator is kept, together with the last one.
pub fn numeric_fluctuation_propagator(
    trajectory: &Trajectory,
    model: &MeanFieldModel,
    store_every: usize,
) -> Result<FluctuationPropagator> {
    let samples = &trajectory.samples;
    let n = model.lattice().n_waveguides();
    if trajectory.decimation != 1 {
        return Err(Error::GridMismatch("trajectory must not be decimated".into()));
    }
    if samples.len() < 3 || samples.len().is_multiple_of(2) {
        return Err(Error::GridMismatch(format!(
            "need an even number of trajectory steps, got {}",
            samples.len().saturating_sub(1)
        )));
    }
    if samples[0].n() != n {
        return Err(Error::Dimension { expected: n, got: samples[0].n() });
    }
    let h = trajectory.step;
    let z0 = samples[0].zeta;
    for (k, s) in samples.iter().enumerate() {
        let expect = z0 + k as f64 * h;
        if (s.zeta - expect).abs() > 1e-9 * expect.abs().max(1.0) {
            return Err(Error::GridMismatch(format!("sample {k} at zeta {} expected {expect}", s.zeta)));
        }
    }
    if store_every == 0 {
        return Err(Error::Domain("store_every must be >= 1".into()));
    }

    let dim = 4 * n;
    let mut u = DMatrix::identity(dim, dim);
    let mut zetas = vec![z0];
    let mut matrices = vec![u.clone()];
    let mut gen_start = fluctuation_generator(&samples[0], model);
    let steps = (samples.len() - 1) / 2;
    for step in 0..steps {
        let gen_mid = fluctuation_generator(&samples[2 * step + 1], model);
        let gen_end = fluctuation_generator(&samples[2 * step + 2], model);
        u = rk4_step(&u, 2.0 * h, |frac, y| {
            let g = if frac == 0.0 {
                &gen_start
            } else if frac == 1.0 {
                &gen_end
            } else {
                &gen_mid
            };
            g * y
        });
        if (step + 1) % store_every == 0 || step + 1 == steps {
            zetas.push(samples[2 * step + 2].zeta);
            matrices.push(u.clone());
        }
        gen_start = gen_end;
    }
    Ok(FluctuationPropagator { zetas, matrices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{integrate_mean_field, IntegrationOptions, PumpSpec};
    use crate::gaussian::{propagate_covariance, super_evolution, superquadrature_projection, CovarianceMatrix};
    use crate::lattice::{build_supermode_basis, LatticeSpec};

    fn zero_mode_run(n: usize, c: f64, zeta: f64) -> (crate::lattice::SupermodeBasis, FluctuationPropagator) {
        let lat = LatticeSpec::new(n, c).unwrap();
        let basis = build_supermode_basis(lat);
        let model = MeanFieldModel::normalized(lat, c);
        let init = ClassicalField::from_pump(&PumpSpec::zero_supermode(&lat, 1.0).unwrap(), &basis).unwrap();
        let traj = integrate_mean_field(&init, &model, zeta, IntegrationOptions::for_zeta(zeta)).unwrap();
        let prop = numeric_fluctuation_propagator(&traj, &model, 1).unwrap();
        (basis, prop)
    }

    #[test]
    fn reproduces_superquadrature_propagator() {
        let (basis, prop) = zero_mode_run(5, 1.0, 1.0);
        let p = superquadrature_projection(&basis);
        let us = super_evolution(1.0).unwrap().matrix;
        let u = prop.last();
        // the superquadrature subspace is closed: P U = U^s P
        assert!((&p * u - &us * &p).amax() < 1e-6);
        assert!((&p * u * p.transpose() - us).amax() < 1e-6);
        assert!(prop.max_symplectic_deviation() < 1e-7);
    }

    #[test]
    fn linear_coupler_preserves_vacuum() {
        let lat = LatticeSpec::new(5, 1.0).unwrap();
        let basis = build_supermode_basis(lat);
        let model = MeanFieldModel::normalized(lat, 1.3).with_gamma(0.0);
        let init = ClassicalField::from_pump(&PumpSpec::zero_supermode(&lat, 1.0).unwrap(), &basis).unwrap();
        let traj = integrate_mean_field(&init, &model, 1.0, IntegrationOptions::for_zeta(1.0)).unwrap();
        let prop = numeric_fluctuation_propagator(&traj, &model, 50).unwrap();
        let u = prop.last();
        // no fundamental-harmonic blocks
        assert!(u.view((0, 10), (10, 10)).amax() < 1e-15);
        assert!(u.view((10, 0), (10, 10)).amax() < 1e-15);
        let v = propagate_covariance(&CovarianceMatrix::vacuum(CovarianceMatrix::numbered_labels("m", 10)), u).unwrap();
        assert!((v.data().view((0, 0), (10, 10)) - DMatrix::<f64>::identity(10, 10) * 0.5).amax() < 1e-10);
        // fundamental block equals exp(i c T t) in quadrature form
        let ct = lat.coupling_matrix() * (1.3 / lat.coupling());
        let eig = ct.clone().symmetric_eigen();
        for (r, cc) in [(0usize, 2usize), (3, 3)] {
            let mut re = 0.0;
            let mut im = 0.0;
            for k in 0..5 {
                let (vr, vc) = (eig.eigenvectors[(r, k)], eig.eigenvectors[(cc, k)]);
                re += vr * vc * eig.eigenvalues[k].cos();
                im += vr * vc * eig.eigenvalues[k].sin();
            }
            assert!((u[(2 * r, 2 * cc)] - re).abs() < 1e-10);
            assert!((u[(2 * r + 1, 2 * cc)] - im).abs() < 1e-10);
        }
    }

    #[test]
    fn single_guide_matches_closed_form() {
        let (_, prop) = zero_mode_run(1, 0.0, 2.0);
        assert!((prop.last() - super_evolution(2.0).unwrap().matrix).amax() < 1e-6);
    }

    #[test]
    fn segment_propagators_compose() {
        let (_, prop) = zero_mode_run(3, 0.7, 1.0);
        let mid = prop.zetas.iter().position(|&z| (z - 0.5).abs() < 1e-9).unwrap();
        let last = prop.matrices.len() - 1;
        let composed = prop.between(mid, last) * &prop.matrices[mid];
        assert!((composed - prop.last()).amax() < 1e-9);
        assert!(prop.at(0.5).is_some());
    }

    #[test]
    fn rejects_bad_grids() {
        let lat = LatticeSpec::new(3, 1.0).unwrap();
        let model = MeanFieldModel::normalized(lat, 1.0);
        let init = ClassicalField::zero(3);
        let odd = integrate_mean_field(&init, &model, 1.0, IntegrationOptions { n_steps: 5, decimation: 1 }).unwrap();
        assert!(matches!(numeric_fluctuation_propagator(&odd, &model, 1), Err(Error::GridMismatch(_))));
        let dec = integrate_mean_field(&init, &model, 1.0, IntegrationOptions { n_steps: 10, decimation: 2 }).unwrap();
        assert!(matches!(numeric_fluctuation_propagator(&dec, &model, 1), Err(Error::GridMismatch(_))));
        let mut bad = integrate_mean_field(&init, &model, 1.0, IntegrationOptions { n_steps: 10, decimation: 1 }).unwrap();
        bad.samples[4].zeta += 0.01;
        assert!(matches!(numeric_fluctuation_propagator(&bad, &model, 1), Err(Error::GridMismatch(_))));
    }
}
