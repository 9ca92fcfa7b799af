//! Entanglement and squeezing diagnostics for Gaussian states.

mod report;
mod vlf;

use nalgebra::DMatrix;

use crate::gaussian::{CovarianceMatrix, SymplecticForm};
use crate::{Error, Result};

pub use report::{EntanglementReport, PairNu};
pub use vlf::{optimize_vlf_gains, vlf_value, VlfOptimum};

/// Symplectic eigenvalues of a physical covariance matrix, ascending.
pub fn symplectic_eigenvalues(v: &CovarianceMatrix) -> Result<Vec<f64>> {
    symplectic_spectrum(v.data())
}

/// Same as [`symplectic_eigenvalues`] for a raw matrix; checks symmetry,
/// even dimension and positive definiteness.
///
/// With `S = V^{1/2}`, the matrix `SΩS` is antisymmetric with eigenvalues
/// `±iν`, so the eigenvalues of the symmetric `(SΩS)(SΩS)ᵀ` are the `ν²`,
/// each twice. Only symmetric eigensolvers are involved.
pub fn symplectic_spectrum(v: &DMatrix<f64>) -> Result<Vec<f64>> {
    if !v.is_square() || !v.nrows().is_multiple_of(2) || v.nrows() == 0 {
        return Err(Error::Dimension { expected: 2 * (v.nrows() / 2).max(1), got: v.nrows() });
    }
    let scale = v.amax().max(1.0);
    let asym = (v - v.transpose()).amax();
    if asym > 1e-12 * scale {
        return Err(Error::NotSymmetric(asym));
    }
    let sym = (v + v.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    if let Some(bad) = eig.eigenvalues.iter().find(|&&d| !(d > 0.0)) {
        return Err(Error::NotPhysical(format!("covariance matrix is not positive definite (eigenvalue {bad})")));
    }
    let sqrt_d = DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt));
    let s = &eig.eigenvectors * sqrt_d * eig.eigenvectors.transpose();
    let om = SymplecticForm::new(v.nrows() / 2);
    let m = &s * om.matrix() * &s;
    let a = &m * m.transpose();
    let mut nu2: Vec<f64> = ((&a + a.transpose()) * 0.5).symmetric_eigenvalues().iter().copied().collect();
    nu2.sort_by(f64::total_cmp);
    Ok(nu2.chunks(2).map(|p| (0.5 * (p[0] + p[1])).max(0.0).sqrt()).collect())
}

/// Flips the sign of the `Y` quadratures of `subset`.
pub fn partial_transpose(v: &CovarianceMatrix, subset: &[usize]) -> Result<CovarianceMatrix> {
    validate_subset(v.n_modes(), subset)?;
    let mut sign = vec![1.0; 2 * v.n_modes()];
    for &m in subset {
        sign[2 * m + 1] = -1.0;
    }
    let data = DMatrix::from_fn(sign.len(), sign.len(), |r, c| sign[r] * v.get(r, c) * sign[c]);
    CovarianceMatrix::new(data, v.labels().to_vec())
}

fn validate_subset(n_modes: usize, subset: &[usize]) -> Result<()> {
    if subset.is_empty() || subset.len() >= n_modes {
        return Err(Error::InvalidSubset(format!(
            "subset must be non-empty and proper ({} of {n_modes} modes)",
            subset.len()
        )));
    }
    let mut seen = vec![false; n_modes];
    for &m in subset {
        if m >= n_modes || std::mem::replace(&mut seen[m], true) {
            return Err(Error::InvalidSubset(format!("mode {m} is out of range or repeated")));
        }
    }
    Ok(())
}

/// Smallest symplectic eigenvalue of the state partially transposed on
/// `side`. Values below 1/2 certify entanglement across the bipartition.
pub fn nu_minus(v: &CovarianceMatrix, side: &[usize]) -> Result<f64> {
    let pt = partial_transpose(v, side)?;
    Ok(symplectic_eigenvalues(&pt)?[0])
}

/// `E_N = max(0, -log₂ 2ν₋)`.
pub fn log_negativity(nu: f64) -> Result<f64> {
    if !(nu > 0.0) {
        return Err(Error::Domain(format!("nu must be > 0, got {nu}")));
    }
    Ok((-(2.0 * nu).log2()).max(0.0))
}

/// `μ = 1 / (2ⁿ √det V)` for an `n`-mode state.
pub fn purity(v: &CovarianceMatrix) -> Result<f64> {
    let det = v.data().determinant();
    if !(det > 0.0) {
        return Err(Error::NotPhysical(format!("determinant {det} is not positive")));
    }
    Ok(1.0 / (2f64.powi(v.n_modes() as i32) * det.sqrt()))
}

/// Large-ζ limits for an `N`-guide array.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticLimits {
    /// `2V(X_j, X_j) → (N-1)/(N+1)`.
    pub squeezing: f64,
    /// `ν₋ → ½√((N-3)/(N+1))`.
    pub nu_minus: f64,
    /// `E_N → log₂√((N+1)/(N-3))`; `+∞` for `N = 3`.
    pub log_negativity: f64,
    pub log_negativity_unbounded: bool,
    /// `VLF → 2(N-1)/(N+1)`.
    pub vlf: f64,
}

pub fn asymptotic_limits(n: usize) -> Result<AsymptoticLimits> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidLattice(format!("asymptotic limits need odd N >= 3, got {n}")));
    }
    let nf = n as f64;
    let squeezing = (nf - 1.0) / (nf + 1.0);
    let unbounded = n == 3;
    let log_negativity = if unbounded { f64::INFINITY } else { ((nf + 1.0) / (nf - 3.0)).sqrt().log2() };
    Ok(AsymptoticLimits {
        squeezing,
        nu_minus: 0.5 * ((nf - 3.0) / (nf + 1.0)).sqrt(),
        log_negativity,
        log_negativity_unbounded: unbounded,
        vlf: 2.0 * squeezing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::superquadrature_covariance;

    fn labels(n: usize) -> Vec<String> {
        CovarianceMatrix::numbered_labels("m", n)
    }

    /// Two-mode squeezed vacuum with squeezing r.
    fn tmsv(r: f64) -> CovarianceMatrix {
        let (c, s) = ((2.0 * r).cosh() / 2.0, (2.0 * r).sinh() / 2.0);
        #[rustfmt::skip]
        let d = DMatrix::from_row_slice(4, 4, &[
            c, 0.0, s, 0.0,
            0.0, c, 0.0, -s,
            s, 0.0, c, 0.0,
            0.0, -s, 0.0, c,
        ]);
        CovarianceMatrix::new(d, labels(2)).unwrap()
    }

    #[test]
    fn vacuum_and_pure_squeezed() {
        for nu in symplectic_eigenvalues(&CovarianceMatrix::vacuum(labels(3))).unwrap() {
            assert!((nu - 0.5).abs() < 1e-14);
        }
        let r: f64 = 0.8;
        let sq = CovarianceMatrix::new(
            DMatrix::from_row_slice(2, 2, &[(-2.0 * r).exp() / 2.0, 0.0, 0.0, (2.0 * r).exp() / 2.0]),
            labels(1),
        )
        .unwrap();
        assert!((symplectic_eigenvalues(&sq).unwrap()[0] - 0.5).abs() < 1e-13);
        for nu in symplectic_eigenvalues(&superquadrature_covariance(1.0).unwrap()).unwrap() {
            assert!((nu - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn thermal_spectrum() {
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.5, 1.5, 0.7, 0.7]));
        let nu = symplectic_spectrum(&d).unwrap();
        assert!((nu[0] - 0.7).abs() < 1e-14 && (nu[1] - 1.5).abs() < 1e-14);
    }

    #[test]
    fn spectrum_errors() {
        assert!(matches!(symplectic_spectrum(&DMatrix::identity(3, 3)), Err(Error::Dimension { .. })));
        let mut m = DMatrix::identity(2, 2);
        m[(0, 1)] = 0.3;
        assert!(matches!(symplectic_spectrum(&m), Err(Error::NotSymmetric(_))));
        // indefinite matrix
        let ind = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        assert!(matches!(symplectic_spectrum(&ind), Err(Error::NotPhysical(_))));
    }

    #[test]
    fn tmsv_negativity() {
        let r = 0.6;
        let nu = nu_minus(&tmsv(r), &[1]).unwrap();
        assert!((nu - (-2.0 * r).exp() / 2.0).abs() < 1e-13);
        let en = log_negativity(nu).unwrap();
        assert!((en - 2.0 * r / 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn partial_transpose_properties() {
        let v = tmsv(0.4);
        let twice = partial_transpose(&partial_transpose(&v, &[0]).unwrap(), &[0]).unwrap();
        assert_eq!(twice, v);
        // product state stays physical under PT
        let a = CovarianceMatrix::new(DMatrix::from_row_slice(2, 2, &[0.3, 0.1, 0.1, 2.0]), labels(1)).unwrap();
        let prod = a.direct_sum(&CovarianceMatrix::vacuum(labels(1)));
        for nu in symplectic_eigenvalues(&partial_transpose(&prod, &[1]).unwrap()).unwrap() {
            assert!(nu >= 0.5 - 1e-12);
        }
        assert!(partial_transpose(&v, &[]).is_err());
        assert!(partial_transpose(&v, &[0, 1]).is_err());
        assert!(partial_transpose(&v, &[2]).is_err());
        assert!(partial_transpose(&CovarianceMatrix::vacuum(labels(3)), &[1, 1]).is_err());
    }

    #[test]
    fn two_color_state_is_entangled() {
        let v = superquadrature_covariance(1.0).unwrap();
        assert!(nu_minus(&v, &[1]).unwrap() < 0.5);
        assert!((nu_minus(&CovarianceMatrix::vacuum(labels(2)), &[0]).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn log_negativity_values() {
        assert_eq!(log_negativity(0.5).unwrap(), 0.0);
        assert_eq!(log_negativity(0.7).unwrap(), 0.0);
        assert!((log_negativity(0.25).unwrap() - 1.0).abs() < 1e-15);
        assert!(log_negativity(0.0).is_err());
        assert!(log_negativity(-1.0).is_err());
    }

    #[test]
    fn purity_values() {
        assert!((purity(&CovarianceMatrix::vacuum(labels(4))).unwrap() - 1.0).abs() < 1e-14);
        let f = superquadrature_covariance(1.0).unwrap().reduce(&[0]).unwrap();
        let expect = 1.0 / (2.0 * (f.var_x(0) * f.var_y(0)).sqrt());
        assert!((purity(&f).unwrap() - expect).abs() < 1e-14);
        assert!((purity(&f).unwrap() - 0.969).abs() < 1e-3);
        let f2 = superquadrature_covariance(2.0).unwrap().reduce(&[0]).unwrap();
        assert!((purity(&f2).unwrap() - 0.773).abs() < 1e-3);
        let bad = CovarianceMatrix::new(DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]), labels(1)).unwrap();
        assert!(purity(&bad).is_err());
    }

    #[test]
    fn closed_form_limits() {
        let l3 = asymptotic_limits(3).unwrap();
        assert_eq!((l3.squeezing, l3.nu_minus, l3.vlf), (0.5, 0.0, 1.0));
        assert!(l3.log_negativity_unbounded && l3.log_negativity.is_infinite());
        let l5 = asymptotic_limits(5).unwrap();
        assert!((l5.squeezing - 2.0 / 3.0).abs() < 1e-15);
        assert!((l5.nu_minus - 0.2886751345948129).abs() < 1e-15);
        assert!((l5.vlf - 4.0 / 3.0).abs() < 1e-15);
        let l7 = asymptotic_limits(7).unwrap();
        assert!((l7.log_negativity - 0.5).abs() < 1e-15);
        assert!((l7.nu_minus - 0.5 * 0.5f64.sqrt()).abs() < 1e-15);
        assert!(asymptotic_limits(10_001).unwrap().squeezing > 0.999);
        assert!(asymptotic_limits(1).is_err());
        assert!(asymptotic_limits(4).is_err());
    }
}
