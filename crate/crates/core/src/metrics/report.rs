use crate::gaussian::{embed_to_individual, CovarianceMatrix};
use crate::harness::csv::fmt;
use crate::lattice::SupermodeBasis;
use crate::metrics::{log_negativity, nu_minus, optimize_vlf_gains, purity};
use crate::Result;

/// ν₋ for the pair of fundamental modes `(i, j)` (0-based waveguides).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairNu {
    pub i: usize,
    pub j: usize,
    pub nu: f64,
}

/// Squeezing and entanglement diagnostics at one ζ for one array.
#[derive(Clone, Debug, PartialEq)]
pub struct EntanglementReport {
    pub zeta: f64,
    pub n_waveguides: usize,
    /// `2V(X_j, X_j)` for every fundamental mode (shot noise = 1).
    pub squeezing_per_mode: Vec<f64>,
    /// ν₋ for every pair of fundamental modes.
    pub nu_minus_pairs: Vec<PairNu>,
    /// ν₋ between waveguides 1 and 3; `None` for a single guide.
    pub nu_pair: Option<f64>,
    /// ν₋ between the fundamental supermode and the collective harmonic.
    pub two_color_nu: f64,
    /// `E_N` of [`Self::nu_pair`].
    pub log_negativity: Option<f64>,
    /// Partial purity of the fundamental supermode.
    pub purity_fundamental: f64,
    /// Optimized VLF combinations over consecutive odd-waveguide pairs.
    pub vlf_values: Vec<f64>,
}

impl EntanglementReport {
    /// Builds the report from the two-mode superquadrature state.
    pub fn from_superquadrature(zeta: f64, superquad: &CovarianceMatrix, basis: &SupermodeBasis) -> Result<Self> {
        let fundamental = superquad.reduce(&[0])?;
        let individual = embed_to_individual(&fundamental, basis)?;
        let n = basis.n();
        let squeezing_per_mode = (0..n).map(|j| 2.0 * individual.var_x(j)).collect();

        let mut nu_minus_pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let pair = individual.reduce(&[i, j])?;
                nu_minus_pairs.push(PairNu { i, j, nu: nu_minus(&pair, &[1])? });
            }
        }
        let nu_pair = nu_minus_pairs.iter().find(|p| p.i == 0 && p.j == 2).map(|p| p.nu);
        let log_negativity = nu_pair.map(log_negativity).transpose()?;

        let parties = basis.spec().odd_guides();
        let vlf_values = (0..parties.len().saturating_sub(1))
            .map(|k| optimize_vlf_gains(&individual, &parties, (k, k + 1)).map(|o| o.value))
            .collect::<Result<Vec<_>>>()?;

        Ok(Self {
            zeta,
            n_waveguides: n,
            squeezing_per_mode,
            nu_minus_pairs,
            nu_pair,
            two_color_nu: nu_minus(superquad, &[1])?,
            log_negativity,
            purity_fundamental: purity(&fundamental)?,
            vlf_values,
        })
    }

    /// `zeta,N,sq_1..sq_N,nu_pair,nu_two_color,E_N,purity_f,vlf_1..vlf_{l-1}`
    /// sized for arrays of up to `n_max` guides.
    pub fn csv_header(n_max: usize) -> String {
        let mut cols = vec!["zeta".to_string(), "N".to_string()];
        cols.extend((1..=n_max).map(|j| format!("sq_{j}")));
        cols.extend(["nu_pair", "nu_two_color", "E_N", "purity_f"].map(String::from));
        cols.extend((1..n_max.div_ceil(2)).map(|k| format!("vlf_{k}")));
        cols.join(",")
    }

    /// One CSV row matching [`Self::csv_header`]; columns beyond this
    /// array's size are left empty.
    pub fn csv_row(&self, n_max: usize) -> String {
        let opt = |v: Option<f64>| v.map(fmt).unwrap_or_default();
        let mut cols = vec![fmt(self.zeta), self.n_waveguides.to_string()];
        cols.extend((0..n_max).map(|j| opt(self.squeezing_per_mode.get(j).copied())));
        cols.push(opt(self.nu_pair));
        cols.push(fmt(self.two_color_nu));
        cols.push(opt(self.log_negativity));
        cols.push(fmt(self.purity_fundamental));
        cols.extend((0..n_max.div_ceil(2) - 1).map(|k| opt(self.vlf_values.get(k).copied())));
        cols.join(",")
    }
}
