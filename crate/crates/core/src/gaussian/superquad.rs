//! Closed-form propagation of the superquadratures
//! `(X_l^s, Y_l^s, X^h, Y^h)` for zero-supermode pumping, and the map back
//! to individual fundamental modes.

use std::f64::consts::SQRT_2;

use nalgebra::DMatrix;

use super::covariance::{propagate_covariance, CovarianceMatrix};
use crate::lattice::SupermodeBasis;
use crate::{Error, Result};

/// Index of `X_l^s` in the superquadrature vector.
pub const XS: usize = 0;
/// Index of `Y_l^s`.
pub const YS: usize = 1;
/// Index of `X^h`.
pub const XH: usize = 2;
/// Index of `Y^h`.
pub const YH: usize = 3;

/// Beyond this ζ the linearization is no longer trusted.
pub const LINEARIZATION_LIMIT: f64 = 6.0;

/// The eight non-zero entries of the superquadrature propagator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuperEntries {
    pub s_s_x: f64,
    pub s_s_y: f64,
    pub s_h_x: f64,
    pub s_h_y: f64,
    pub h_s_x: f64,
    pub h_s_y: f64,
    pub h_h_x: f64,
    pub h_h_y: f64,
}

impl SuperEntries {
    pub fn at(zeta: f64) -> Self {
        let sech = zeta.cosh().recip();
        let tanh = zeta.tanh();
        Self {
            s_s_x: sech * (1.0 - zeta * tanh),
            s_s_y: sech,
            s_h_x: (zeta.sinh() + zeta * sech) / SQRT_2,
            s_h_y: -SQRT_2 * tanh * sech,
            h_s_x: (tanh + zeta * sech * sech) / SQRT_2,
            h_s_y: -SQRT_2 * tanh,
            h_h_x: 1.0 - zeta * tanh,
            h_h_y: sech * sech,
        }
    }
}

/// `U^s(ζ)` on the ordering `(X_l^s, Y_l^s, X^h, Y^h)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionOperatorSuper {
    pub zeta: f64,
    pub entries: SuperEntries,
    pub matrix: DMatrix<f64>,
}

pub fn super_evolution(zeta: f64) -> Result<EvolutionOperatorSuper> {
    if !(zeta >= 0.0) {
        return Err(Error::Domain(format!("zeta must be >= 0, got {zeta}")));
    }
    if zeta > LINEARIZATION_LIMIT {
        log::warn!("zeta = {zeta} exceeds the linearization validity bound {LINEARIZATION_LIMIT}");
    }
    let e = SuperEntries::at(zeta);
    #[rustfmt::skip]
    let matrix = DMatrix::from_row_slice(4, 4, &[
        e.s_s_x, 0.0,     0.0,     e.s_h_y,
        0.0,     e.s_s_y, e.s_h_x, 0.0,
        0.0,     e.h_s_y, e.h_h_x, 0.0,
        e.h_s_x, 0.0,     0.0,     e.h_h_y,
    ]);
    Ok(EvolutionOperatorSuper { zeta, entries: e, matrix })
}

pub(crate) fn superquadrature_labels() -> Vec<String> {
    vec!["fundamental supermode".into(), "collective harmonic".into()]
}

/// Two-mode state (fundamental zero supermode, collective harmonic) at `ζ`
/// for vacuum input: `V = U^s Uᵀ^s / 2`.
pub fn superquadrature_covariance(zeta: f64) -> Result<CovarianceMatrix> {
    let u = super_evolution(zeta)?;
    propagate_covariance(&CovarianceMatrix::vacuum(superquadrature_labels()), &u.matrix)
}

/// `M ⊗ I₂`: the supermode transform acting on interleaved quadratures.
pub fn symplectic_supermode_matrix(basis: &SupermodeBasis) -> DMatrix<f64> {
    let m = basis.matrix();
    let n = basis.n();
    DMatrix::from_fn(2 * n, 2 * n, |r, c| if r % 2 == c % 2 { m[(r / 2, c / 2)] } else { 0.0 })
}

/// Individual-mode covariance of the fundamental fields. The zero
/// supermode carries `fundamental` (a one-mode covariance); every other
/// supermode is vacuum. The harmonic subsystem is traced out beforehand.
pub fn embed_to_individual(fundamental: &CovarianceMatrix, basis: &SupermodeBasis) -> Result<CovarianceMatrix> {
    if fundamental.n_modes() != 1 {
        return Err(Error::Dimension { expected: 1, got: fundamental.n_modes() });
    }
    let n = basis.n();
    let l = basis.spec().zero_index();
    let mut v = DMatrix::identity(2 * n, 2 * n) * 0.5;
    v.view_mut((2 * l, 2 * l), (2, 2)).copy_from(fundamental.data());
    let msy = symplectic_supermode_matrix(basis);
    let supermode = CovarianceMatrix::new(v, CovarianceMatrix::numbered_labels("s", n))?;
    let out = propagate_covariance(&supermode, &msy)?;
    CovarianceMatrix::new(out.data().clone(), CovarianceMatrix::numbered_labels("f", n))
}

/// Lossless individual-mode fundamental covariance at `ζ`.
pub fn individual_covariance(zeta: f64, basis: &SupermodeBasis) -> Result<CovarianceMatrix> {
    let v = superquadrature_covariance(zeta)?;
    embed_to_individual(&v.reduce(&[0])?, basis)
}

/// `4 × 4N` matrix extracting `(X_l^s, Y_l^s, X^h, Y^h)` from the full
/// fluctuation vector `(X_f1, Y_f1, ..., X_fN, Y_fN, X_h1, Y_h1, ..., Y_hN)`.
/// Rows are orthonormal.
pub fn superquadrature_projection(basis: &SupermodeBasis) -> DMatrix<f64> {
    let n = basis.n();
    let zero = basis.zero_supermode();
    let w = (basis.spec().half_dim() as f64).sqrt().recip();
    let mut p = DMatrix::zeros(4, 4 * n);
    for j in 0..n {
        p[(XS, 2 * j)] = zero[j];
        p[(YS, 2 * j + 1)] = zero[j];
        if j % 2 == 0 {
            p[(XH, 2 * (n + j))] = w;
            p[(YH, 2 * (n + j) + 1)] = w;
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::SymplecticForm;
    use crate::lattice::{build_supermode_basis, LatticeSpec};

    #[test]
    fn identity_at_origin() {
        assert_eq!(super_evolution(0.0).unwrap().matrix, DMatrix::identity(4, 4));
        assert!(super_evolution(-1.0).is_err());
    }

    #[test]
    fn entries_at_one() {
        let e = super_evolution(1.0).unwrap().entries;
        assert!((e.s_s_x - 0.1544999).abs() < 1e-6);
        assert!((e.s_h_y + 0.6979913).abs() < 1e-6);
        assert!((e.s_h_x - 1.2892363).abs() < 1e-6);
        assert!((e.h_h_y - 0.4199743).abs() < 1e-6);
        assert!((e.s_s_x * e.s_s_y - e.s_h_y * e.s_h_x - 1.0).abs() < 1e-12);
    }

    #[test]
    fn symplectic_on_grid() {
        let om = SymplecticForm::new(2);
        for i in 0..=600 {
            let z = 6.0 * i as f64 / 600.0;
            assert!(om.deviation(&super_evolution(z).unwrap().matrix) < 1e-9, "zeta {z}");
        }
    }

    #[test]
    fn finite_difference_matches_superquadrature_equations() {
        // dX_s = -tanh X_s - √2 sech Y_h, dY_s = tanh Y_s + √2 sech X_h,
        // dX_h = -√2 sech Y_s, dY_h = √2 sech X_s
        for z in [0.3, 1.0, 2.5] {
            let (sech, tanh) = (1.0 / f64::cosh(z), f64::tanh(z));
            #[rustfmt::skip]
            let gen = DMatrix::from_row_slice(4, 4, &[
                -tanh, 0.0, 0.0, -SQRT_2 * sech,
                0.0, tanh, SQRT_2 * sech, 0.0,
                0.0, -SQRT_2 * sech, 0.0, 0.0,
                SQRT_2 * sech, 0.0, 0.0, 0.0,
            ]);
            let h = 1e-5;
            let du = (super_evolution(z + h).unwrap().matrix - super_evolution(z - h).unwrap().matrix) / (2.0 * h);
            let rhs = gen * super_evolution(z).unwrap().matrix;
            assert!((du - rhs).amax() < 1e-8);
        }
    }

    #[test]
    fn covariance_at_one() {
        let v = superquadrature_covariance(1.0).unwrap();
        assert!((v.get(XS, XS) - 0.255531007582238).abs() < 1e-12);
        assert!((v.get(YS, YS) - 1.041052295573856).abs() < 1e-12);
        assert_eq!(v.get(XS, YS), 0.0);
        assert!((2.0 * v.var_x(0) - 0.5111).abs() < 1e-4);
        assert_eq!(superquadrature_covariance(0.0).unwrap().data(), &(DMatrix::identity(4, 4) * 0.5));
    }

    #[test]
    fn harmonic_phase_squeezing_saturates() {
        let v = superquadrature_covariance(6.0).unwrap();
        assert!((2.0 * v.var_y(1) - 0.5).abs() < 0.005);
        assert!(2.0 * v.var_x(0) < 0.01);
    }

    fn squeezed(eps: f64) -> CovarianceMatrix {
        CovarianceMatrix::new(DMatrix::from_row_slice(2, 2, &[eps, 0.0, 0.0, 0.25 / eps]), vec!["s".into()]).unwrap()
    }

    #[test]
    fn embedding_limits() {
        for (n, expect) in [(3, 0.5), (9, 0.8)] {
            let basis = build_supermode_basis(LatticeSpec::new(n, 1.0).unwrap());
            let v = embed_to_individual(&squeezed(1e-12), &basis).unwrap();
            for j in 0..n {
                let sq = 2.0 * v.var_x(j);
                if j % 2 == 0 {
                    assert!((sq - expect).abs() < 1e-9, "N={n} j={j} {sq}");
                } else {
                    assert!((sq - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn vacuum_embeds_to_vacuum() {
        let basis = build_supermode_basis(LatticeSpec::new(7, 1.0).unwrap());
        let v = embed_to_individual(&CovarianceMatrix::vacuum(vec!["s".into()]), &basis).unwrap();
        assert!((v.data() - DMatrix::identity(14, 14) * 0.5).amax() < 1e-15);
        let two = CovarianceMatrix::vacuum(vec!["a".into(), "b".into()]);
        assert!(embed_to_individual(&two, &basis).is_err());
    }

    #[test]
    fn projection_rows_orthonormal() {
        let basis = build_supermode_basis(LatticeSpec::new(9, 1.0).unwrap());
        let p = superquadrature_projection(&basis);
        assert!((&p * p.transpose() - DMatrix::<f64>::identity(4, 4)).amax() < 1e-14);
    }
}
