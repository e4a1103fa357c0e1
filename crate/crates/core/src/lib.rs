//! Non-equilibrium steady states of two linearly coupled, locally damped
//! quantum harmonic oscillators: drift/diffusion dynamics, Lyapunov steady
//! states, irreversible entropy production, and Rényi-2 correlation
//! measures, together with the optomechanical specialization.
//!
//! All quantities are dimensionless: frequencies and rates are in units of
//! the second oscillator's frequency (fixed to 1), and the vacuum quadrature
//! variance is 1/2. The quadrature ordering is `(q_a, p_a, q_b, p_b)`
//! throughout.

pub mod correlations;
pub mod covariance;
pub mod dynamics;
pub mod entropy;
mod error;
pub mod matrices;
pub mod optomech;
pub mod params;
pub mod sampler;

pub use correlations::{
    classical_correlations, discord_closed_form, discord_numeric, log_negativity,
    mutual_information, renyi2_entropy, renyi2_entropy_mode, wigner_shannon_entropy,
    wigner_shannon_entropy_mode, CorrelationReport, GaussianMeasurement, MeasuredMode,
    SymplecticInvariants,
};
pub use covariance::CovarianceMatrix;
pub use dynamics::{integrate_covariance, is_stable, lyapunov_steady_state, stability_margin,
    steady_state};
pub use entropy::{
    entropy_flux_trace, entropy_production_diagonal, entropy_production_offdiagonal,
    entropy_production_trace, entropy_rate, expand_large_omega, expand_small_coupling,
    identical_oscillators_pi, identical_oscillators_pi_equal_kappa, EntropyBreakdown,
    TimeReversalSplit,
};
pub use error::{Error, Result};
pub use matrices::{build_diffusion, build_drift, symplectic_form, time_reversal, DriftDiffusion};
pub use params::OscillatorParams;
pub use optomech::{
    cooperativity, enhanced_coupling, pi_small_coupling, regime_report, to_oscillator_params,
    OptomechConfig, RegimeRecord, ThermalFlow,
};
pub use sampler::{
    bound_curves, identical_oscillators_mutual_info, min_mutual_info_asymptote,
    sample_steady_states, BoundCurve, BoundCurves, BoundKind, SamplePoint, SampleSpec,
};
