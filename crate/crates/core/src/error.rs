use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid normalization context: {0}")]
    InvalidContext(String),

    #[error("mean-field integration diverged at zeta = {zeta}")]
    Divergence { zeta: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("covariance matrix is not physical: {0}")]
    NotPhysical(String),

    #[error("invalid mode subset: {0}")]
    InvalidSubset(String),

    #[error("invalid transmittivity {0}; must lie in [0, 1]")]
    InvalidTransmittivity(f64),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("unknown figure '{0}' (expected fig2, fig3, fig4a, fig4b or fig5)")]
    UnknownFigure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
