use nalgebra::Matrix4;

use crate::params::OscillatorParams;

/// Symplectic form for two modes in `(q_a, p_a, q_b, p_b)` ordering.
/// Satisfies `Ω^T = -Ω` and `Ω² = -1`; under this convention the vacuum
/// variance is 1/2.
pub fn symplectic_form() -> Matrix4<f64> {
    Matrix4::new(
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0, //
        0.0, 0.0, 0.0, 1.0, //
        0.0, 0.0, -1.0, 0.0,
    )
}

/// Time-reversal operator `E = diag(1, -1, 1, -1)` (momenta flip sign).
pub fn time_reversal() -> Matrix4<f64> {
    Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, 1.0, -1.0))
}

/// Drift matrix of the quadrature Langevin dynamics.
pub fn build_drift(params: &OscillatorParams) -> Matrix4<f64> {
    let OscillatorParams { omega_a, coupling: g, kappa_a, kappa_b, .. } = *params;
    let omega_b = params.omega_b();
    Matrix4::new(
        -kappa_a, omega_a, 0.0, 0.0, //
        -omega_a, -kappa_a, g, 0.0, //
        0.0, 0.0, -kappa_b, omega_b, //
        g, 0.0, -omega_b, -kappa_b,
    )
}

/// Diffusion matrix `D = (1+2N_a)κ_a 1_a ⊕ (1+2N_b)κ_b 1_b`.
pub fn build_diffusion(params: &OscillatorParams) -> Matrix4<f64> {
    let da = (1.0 + 2.0 * params.n_a) * params.kappa_a;
    let db = (1.0 + 2.0 * params.n_b) * params.kappa_b;
    Matrix4::from_diagonal(&nalgebra::Vector4::new(da, da, db, db))
}

/// Drift and diffusion matrices of the covariance equation of motion
/// `σ̇ = Aσ + σA^T + D`.
#[derive(Debug, Clone, Copy)]
pub struct DriftDiffusion {
    pub drift: Matrix4<f64>,
    pub diffusion: Matrix4<f64>,
}

impl DriftDiffusion {
    pub fn from_params(params: &OscillatorParams) -> Self {
        Self { drift: build_drift(params), diffusion: build_diffusion(params) }
    }
}

/// Splitting of the drift matrix by time-reversal symmetry:
/// `A_irr = (A + E A E^T)/2` (even) and `A_rev = (A - E A E^T)/2` (odd),
/// with `A = A_irr + A_rev` exactly. For the coupled-oscillator drift the
/// irreversible part is `diag(-κ_a, -κ_a, -κ_b, -κ_b)`.
#[derive(Debug, Clone, Copy)]
pub struct TimeReversalSplit {
    pub irreversible: Matrix4<f64>,
    pub reversible: Matrix4<f64>,
}

impl TimeReversalSplit {
    pub fn of(drift: &Matrix4<f64>) -> Self {
        let e = time_reversal();
        let conj = e * drift * e.transpose();
        Self { irreversible: (drift + conj) * 0.5, reversible: (drift - conj) * 0.5 }
    }
}
