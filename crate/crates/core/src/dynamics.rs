use nalgebra::{DMatrix, DVector, Matrix4};

use crate::covariance::CovarianceMatrix;
use crate::error::{Error, Result};
use crate::matrices::DriftDiffusion;
use crate::params::OscillatorParams;

/// Largest real part among the eigenvalues of the drift matrix. Negative
/// means the dynamical system is stable and a unique steady state exists.
pub fn stability_margin(drift: &Matrix4<f64>) -> f64 {
    drift
        .complex_eigenvalues()
        .iter()
        .map(|l| l.re)
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn is_stable(drift: &Matrix4<f64>) -> bool {
    stability_margin(drift) < 0.0
}

/// Solves the continuous Lyapunov equation `A σ + σ Aᵀ = −D` for the
/// steady-state covariance matrix by vectorization:
/// `(1 ⊗ A + A ⊗ 1) vec(σ) = −vec(D)`.
pub fn lyapunov_steady_state(
    drift: &Matrix4<f64>,
    diffusion: &Matrix4<f64>,
) -> Result<CovarianceMatrix> {
    let margin = stability_margin(drift);
    if margin >= 0.0 {
        return Err(Error::Unstable { max_real_part: margin });
    }
    let a = DMatrix::from_fn(4, 4, |i, j| drift[(i, j)]);
    let eye = DMatrix::<f64>::identity(4, 4);
    let system = eye.kronecker(&a) + a.kronecker(&eye);
    let rhs = DVector::from_iterator(16, diffusion.iter().map(|v| -v));
    let sol = system.lu().solve(&rhs).ok_or(Error::SingularSystem)?;
    let raw = Matrix4::from_iterator(sol.iter().copied());
    let sym = (raw + raw.transpose()) * 0.5;
    Ok(CovarianceMatrix::from_matrix_unchecked(sym))
}

/// Steady-state covariance for the given physical parameters.
pub fn steady_state(params: &OscillatorParams) -> Result<CovarianceMatrix> {
    let dd = DriftDiffusion::from_params(params);
    lyapunov_steady_state(&dd.drift, &dd.diffusion)
}

/// Integrates `σ̇ = A σ + σ Aᵀ + D` from `initial` with classic fixed-step
/// RK4, symmetrizing after every step to suppress drift. Returns the
/// trajectory including the initial point (`n_steps + 1` entries).
pub fn integrate_covariance(
    drift: &Matrix4<f64>,
    diffusion: &Matrix4<f64>,
    initial: &CovarianceMatrix,
    dt: f64,
    n_steps: usize,
) -> Result<Vec<CovarianceMatrix>> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidParams(format!("step size must be positive, got {dt}")));
    }
    let rhs = |s: &Matrix4<f64>| drift * s + s * drift.transpose() + diffusion;
    let mut out = Vec::with_capacity(n_steps + 1);
    out.push(*initial);
    let mut sigma = *initial.matrix();
    for step in 0..n_steps {
        let k1 = rhs(&sigma);
        let k2 = rhs(&(sigma + k1 * (dt * 0.5)));
        let k3 = rhs(&(sigma + k2 * (dt * 0.5)));
        let k4 = rhs(&(sigma + k3 * dt));
        sigma += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
        sigma = (sigma + sigma.transpose()) * 0.5;
        if sigma.iter().any(|v| !v.is_finite()) {
            return Err(Error::BadStep { step });
        }
        out.push(CovarianceMatrix::from_matrix_unchecked(sigma));
    }
    Ok(out)
}
