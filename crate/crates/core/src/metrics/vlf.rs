//! van Loock–Furusawa variance combinations.
//!
//! For parties `p_1..p_n` and a pair `(i, j)` the combination is
//!
//! ```text
//! VLF = V(X_i - X_j) + V(Y_i + Y_j + Σ_{m≠i,j} g_m Y_m)
//! ```
//!
//! normalized so that vacuum (with zero gains) gives exactly 2; full
//! inseparability is certified by simultaneous values below 2.

use nalgebra::{DMatrix, DVector};

use crate::gaussian::CovarianceMatrix;
use crate::{Error, Result};

/// Optimal spectator gains and the resulting combination value.
#[derive(Clone, Debug, PartialEq)]
pub struct VlfOptimum {
    pub gains: Vec<f64>,
    pub value: f64,
    /// Set when the normal equations were singular and the least-norm
    /// solution was used instead.
    pub least_norm: bool,
}

fn check(v: &CovarianceMatrix, parties: &[usize], pair: (usize, usize)) -> Result<()> {
    let (i, j) = pair;
    if i == j || i >= parties.len() || j >= parties.len() {
        return Err(Error::InvalidSubset(format!("invalid pair ({i}, {j}) for {} parties", parties.len())));
    }
    if let Some(&m) = parties.iter().find(|&&m| m >= v.n_modes()) {
        return Err(Error::InvalidSubset(format!("party mode {m} out of range")));
    }
    Ok(())
}

fn spectators(parties: &[usize], pair: (usize, usize)) -> Vec<usize> {
    parties.iter().enumerate().filter(|&(k, _)| k != pair.0 && k != pair.1).map(|(_, &m)| m).collect()
}

/// `aᵀ V a` for a quadrature combination given as (index, weight) pairs.
fn variance(v: &CovarianceMatrix, terms: &[(usize, f64)]) -> f64 {
    terms.iter().map(|&(a, wa)| terms.iter().map(|&(b, wb)| wa * wb * v.get(a, b)).sum::<f64>()).sum()
}

/// `parties` are mode indices into `v`; `pair` indexes into `parties`;
/// `gains` has one entry per remaining party, in party order.
pub fn vlf_value(v: &CovarianceMatrix, parties: &[usize], pair: (usize, usize), gains: &[f64]) -> Result<f64> {
    check(v, parties, pair)?;
    let spec = spectators(parties, pair);
    if gains.len() != spec.len() {
        return Err(Error::Dimension { expected: spec.len(), got: gains.len() });
    }
    let (mi, mj) = (parties[pair.0], parties[pair.1]);
    let x = variance(v, &[(2 * mi, 1.0), (2 * mj, -1.0)]);
    let mut y_terms = vec![(2 * mi + 1, 1.0), (2 * mj + 1, 1.0)];
    y_terms.extend(spec.iter().zip(gains).map(|(&m, &g)| (2 * m + 1, g)));
    Ok(x + variance(v, &y_terms))
}

/// Minimizes [`vlf_value`] over the spectator gains. The value is a convex
/// quadratic in the gains, so the optimum solves `A g = -b` with
/// `A = V(Y_s, Y_s')` and `b = V(Y_s, Y_i + Y_j)`.
pub fn optimize_vlf_gains(v: &CovarianceMatrix, parties: &[usize], pair: (usize, usize)) -> Result<VlfOptimum> {
    check(v, parties, pair)?;
    let spec = spectators(parties, pair);
    if spec.is_empty() {
        return Ok(VlfOptimum { gains: vec![], value: vlf_value(v, parties, pair, &[])?, least_norm: false });
    }
    let (yi, yj) = (2 * parties[pair.0] + 1, 2 * parties[pair.1] + 1);
    let a = DMatrix::from_fn(spec.len(), spec.len(), |r, c| v.get(2 * spec[r] + 1, 2 * spec[c] + 1));
    let b = DVector::from_fn(spec.len(), |r, _| v.get(2 * spec[r] + 1, yi) + v.get(2 * spec[r] + 1, yj));
    let (g, least_norm) = match a.clone().cholesky() {
        Some(ch) => (ch.solve(&(-&b)), false),
        None => {
            let svd = a.svd(true, true);
            let g = svd.solve(&(-&b), 1e-12).map_err(|e| Error::Domain(e.to_string()))?;
            (g, true)
        }
    };
    let gains: Vec<f64> = g.iter().copied().collect();
    let value = vlf_value(v, parties, pair, &gains)?;
    Ok(VlfOptimum { gains, value, least_norm })
}
