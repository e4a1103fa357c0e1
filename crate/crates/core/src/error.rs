use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The drift matrix has an eigenvalue with non-negative real part; no
    /// stationary state exists.
    #[error("no stationary state: drift matrix is unstable (max Re eigenvalue = {max_real_part:.3e})")]
    Unstable { max_real_part: f64 },

    #[error("singular linear system (marginal stability)")]
    SingularSystem,

    #[error("covariance matrix is not physical: {0}")]
    NonPhysical(String),

    #[error("integration produced a non-finite or non-symmetric covariance at step {step}")]
    BadStep { step: usize },

    /// The measurement optimizer failed to converge; carries the best value
    /// found so far.
    #[error("measurement optimization did not converge (best value {best:.6e})")]
    NonConvergence { best: f64 },
}
