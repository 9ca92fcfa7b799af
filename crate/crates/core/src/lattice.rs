//! Linear supermode basis of an odd-`N` coupled waveguide array.
//!
//! Waveguide `j` and supermode `k` are 1-based in the formulas
//! `M[j,k] = sin(jkπ/2l)/√l` and `λ_k = 2C cos(kπ/2l)`, with `l = (N+1)/2`.
//! Storage is 0-based: entry `(j-1, k-1)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::{Error, Result};

/// Geometry of a homogeneous array with an odd number of waveguides.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticeSpec {
    n_waveguides: usize,
    coupling: f64,
}

impl LatticeSpec {
    /// `coupling` is the evanescent coupling constant `C` per unit length.
    /// `C = 0` is admitted for the uncoupled single-guide baseline.
    pub fn new(n_waveguides: usize, coupling: f64) -> Result<Self> {
        if n_waveguides == 0 || n_waveguides.is_multiple_of(2) {
            return Err(Error::InvalidLattice(format!(
                "number of waveguides must be odd and >= 1, got {n_waveguides}"
            )));
        }
        if !coupling.is_finite() || coupling < 0.0 {
            return Err(Error::InvalidLattice(format!(
                "coupling must be finite and non-negative, got {coupling}"
            )));
        }
        Ok(Self { n_waveguides, coupling })
    }

    pub fn n_waveguides(&self) -> usize {
        self.n_waveguides
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    /// `l = (N+1)/2`, the number of odd ("propagating") waveguides.
    pub fn half_dim(&self) -> usize {
        self.n_waveguides.div_ceil(2)
    }

    /// 0-based index of the zero-eigenvalue supermode, `l - 1`.
    pub fn zero_index(&self) -> usize {
        self.half_dim() - 1
    }

    /// 0-based indices of the odd waveguides `j = 1, 3, ..., N`.
    pub fn odd_guides(&self) -> Vec<usize> {
        (0..self.n_waveguides).step_by(2).collect()
    }

    /// The nearest-neighbour coupling matrix `C·T` with open boundaries.
    pub fn coupling_matrix(&self) -> DMatrix<f64> {
        let n = self.n_waveguides;
        DMatrix::from_fn(n, n, |r, c| if r.abs_diff(c) == 1 { self.coupling } else { 0.0 })
    }
}

/// Real orthogonal, symmetric supermode matrix and its spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct SupermodeBasis {
    spec: LatticeSpec,
    matrix: DMatrix<f64>,
    eigenvalues: DVector<f64>,
}

/// Builds `M` and `λ` for the given lattice. `λ_l` is exactly zero.
pub fn build_supermode_basis(spec: LatticeSpec) -> SupermodeBasis {
    let n = spec.n_waveguides();
    let l = spec.half_dim() as f64;
    let norm = l.sqrt().recip();
    let matrix = DMatrix::from_fn(n, n, |r, c| {
        let (j, k) = ((r + 1) as f64, (c + 1) as f64);
        // sin(jkπ/2l) with exact zeros where jk is a multiple of 2l
        let arg = (r + 1) * (c + 1);
        if arg % (2 * spec.half_dim()) == 0 {
            0.0
        } else {
            (j * k * PI / (2.0 * l)).sin() * norm
        }
    });
    let mut eigenvalues = DVector::from_fn(n, |k, _| {
        2.0 * spec.coupling() * ((k + 1) as f64 * PI / (2.0 * l)).cos()
    });
    eigenvalues[spec.zero_index()] = 0.0;
    SupermodeBasis { spec, matrix, eigenvalues }
}

impl SupermodeBasis {
    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    pub fn n(&self) -> usize {
        self.spec.n_waveguides()
    }

    /// Column `l` of `M`: the zero supermode in the individual basis,
    /// `(1, 0, -1, 0, 1, ...)/√l`.
    pub fn zero_supermode(&self) -> DVector<f64> {
        self.matrix.column(self.spec.zero_index()).into_owned()
    }

    /// Individual amplitudes `a` to supermode amplitudes `b = M⁻¹ a = M a`.
    pub fn to_supermode_basis(&self, amplitudes: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        self.apply(amplitudes)
    }

    /// Supermode amplitudes `b` to individual amplitudes `a = M b`.
    pub fn to_individual_basis(&self, supermodes: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        self.apply(supermodes)
    }

    fn apply(&self, v: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        if v.len() != self.n() {
            return Err(Error::Dimension { expected: self.n(), got: v.len() });
        }
        Ok(self.matrix.map(|x| Complex64::new(x, 0.0)) * v)
    }

    /// A copy with `eps` added to the first matrix entry. Only useful as a
    /// negative control for the validation suite.
    pub fn perturbed(&self, eps: f64) -> Self {
        let mut out = self.clone();
        out.matrix[(0, 0)] += eps;
        out
    }

    /// `max |M Mᵀ - I|`.
    pub fn orthogonality_error(&self) -> f64 {
        let n = self.n();
        (&self.matrix * self.matrix.transpose() - DMatrix::<f64>::identity(n, n)).amax()
    }

    /// `max |M - Mᵀ|`.
    pub fn symmetry_error(&self) -> f64 {
        (&self.matrix - self.matrix.transpose()).amax()
    }

    /// `max_k |(C·T) M[:,k] - λ_k M[:,k]|`.
    pub fn eigen_residual(&self) -> f64 {
        let ct = self.spec.coupling_matrix();
        (0..self.n())
            .map(|k| {
                let col = self.matrix.column(k);
                (&ct * col - col * self.eigenvalues[k]).amax()
            })
            .fold(0.0, f64::max)
    }
}
