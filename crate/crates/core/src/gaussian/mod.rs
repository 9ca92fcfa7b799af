//! Linearized Gaussian fluctuation dynamics.
//!
//! All covariance matrices use the interleaved ordering
//! `(X_1, Y_1, X_2, Y_2, ...)` and the convention that vacuum is `I/2`.

mod covariance;
mod loss;
mod numeric;
mod superquad;

pub use covariance::{propagate_covariance, CovarianceMatrix, SymplecticForm};
pub use loss::{apply_loss, lossy_propagation, lossy_superquadrature_covariance, LossModel, DEFAULT_SEGMENTS_PER_ZETA};
pub use numeric::{numeric_fluctuation_propagator, FluctuationPropagator};
pub use superquad::{
    embed_to_individual, individual_covariance, super_evolution, superquadrature_covariance,
    superquadrature_projection, symplectic_supermode_matrix, EvolutionOperatorSuper, SuperEntries,
    LINEARIZATION_LIMIT, XH, XS, YH, YS,
};
