//! Gaussian quantum-noise simulation of χ⁽²⁾ nonlinear waveguide arrays in the
//! second-harmonic-generation regime, pumped with the zero-eigenvalue
//! fundamental supermode.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`] builds the linear supermode basis of an odd-`N` array.
//! * [`classical`] integrates the mean-field propagation and provides the
//!   closed-form sech/tanh solution and unit conversions.
//! * [`gaussian`] propagates quadrature fluctuations: the analytic 4×4
//!   superquadrature propagator, covariance propagation and embedding, a
//!   numerically integrated linearized propagator, and a beam-splitter loss
//!   channel.
//! * [`metrics`] computes symplectic spectra, ν₋, logarithmic negativity,
//!   purities and van Loock–Furusawa combinations.
//! * [`harness`] drives scenarios, figure data, sweeps and validation; the
//!   `zeromode` binary is a thin wrapper around it.
//!
//! Mode indices in this API are 0-based. Where documentation talks about
//! "waveguide j" or "supermode k" in the 1-based sense, waveguide `j`
//! lives at index `j - 1`; the zero supermode `k = l = (N+1)/2` lives at
//! index `l - 1`.

// `!(x >= 0.0)` style guards are used on purpose to reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical;
pub mod error;
pub mod gaussian;
pub mod harness;
pub mod lattice;
pub mod metrics;
mod rk4;

pub use error::{Error, Result};

pub use num_complex::Complex64;
