//! Irreversible entropy production and entropy flux of the coupled-oscillator
//! steady state, in three mutually equivalent forms, together with the
//! perturbative expansions and the closed forms for identical oscillators.

use nalgebra::Matrix4;

use crate::covariance::CovarianceMatrix;
use crate::error::{Error, Result};
use crate::matrices::{build_diffusion, build_drift};
pub use crate::matrices::TimeReversalSplit;
use crate::params::OscillatorParams;

/// Per-oscillator split of the stationary entropy production rate.
///
/// `pi_s = mu_a + mu_b` by construction, and at stationarity the entropy
/// flux balances production exactly: `phi_s = -pi_s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyBreakdown {
    pub mu_a: f64,
    pub mu_b: f64,
    pub pi_s: f64,
    pub phi_s: f64,
}

impl EntropyBreakdown {
    fn from_contributions(mu_a: f64, mu_b: f64) -> Self {
        let pi_s = mu_a + mu_b;
        Self { mu_a, mu_b, pi_s, phi_s: -pi_s }
    }
}

/// Stationary entropy production from the diagonal covariance entries:
/// each oscillator contributes `μ_k = 2κ_k(⟨n_k⟩-form mismatch with its
/// bath occupation)`.
pub fn entropy_production_diagonal(
    sigma_s: &CovarianceMatrix,
    params: &OscillatorParams,
) -> EntropyBreakdown {
    let s = sigma_s.matrix();
    let mu_a = 2.0 * params.kappa_a * ((s[(0, 0)] + s[(1, 1)]) / (2.0 * params.n_a + 1.0) - 1.0);
    let mu_b = 2.0 * params.kappa_b * ((s[(2, 2)] + s[(3, 3)]) / (2.0 * params.n_b + 1.0) - 1.0);
    EntropyBreakdown::from_contributions(mu_a, mu_b)
}

/// Stationary entropy production from the interaction correlators:
/// `μ_a = G⟨p_a q_b⟩_s/(N_a+1/2)` and `μ_b = G⟨q_a p_b⟩_s/(N_b+1/2)`.
/// Agrees with [`entropy_production_diagonal`] identically; keeping both
/// routes makes the stationarity constraints testable.
pub fn entropy_production_offdiagonal(
    sigma_s: &CovarianceMatrix,
    params: &OscillatorParams,
) -> EntropyBreakdown {
    let s = sigma_s.matrix();
    let g = params.coupling;
    let mu_a = g * s[(1, 2)] / (params.n_a + 0.5);
    let mu_b = g * s[(0, 3)] / (params.n_b + 0.5);
    EntropyBreakdown::from_contributions(mu_a, mu_b)
}

fn trace_pieces(
    sigma: &CovarianceMatrix,
    params: &OscillatorParams,
) -> Result<(Matrix4<f64>, Matrix4<f64>, f64, f64)> {
    let a_irr = TimeReversalSplit::of(&build_drift(params)).irreversible;
    let d = build_diffusion(params);
    let sigma_inv = sigma
        .matrix()
        .try_inverse()
        .ok_or_else(|| Error::NonPhysical("singular covariance matrix".into()))?;
    // D is diagonal and strictly positive for valid params.
    let d_inv = Matrix4::from_diagonal(&d.diagonal().map(|v| 1.0 / v));
    let quad = 2.0 * (a_irr.transpose() * d_inv * a_irr * sigma.matrix()).trace();
    let half_tr = 0.5 * (sigma_inv * d).trace();
    Ok((a_irr, sigma_inv, quad, half_tr))
}

/// Entropy production rate `Π(t)` at an arbitrary physical covariance,
/// stationary or not: `½tr(σ⁻¹D) + 2tr(A_irr) + 2tr(A_irrᵀ D⁻¹ A_irr σ)`.
pub fn entropy_production_trace(
    sigma: &CovarianceMatrix,
    params: &OscillatorParams,
) -> Result<f64> {
    let (a_irr, _, quad, half_tr) = trace_pieces(sigma, params)?;
    Ok(half_tr + 2.0 * a_irr.trace() + quad)
}

/// Entropy flux rate `Φ(t) = −tr(A_irr) − 2tr(A_irrᵀ D⁻¹ A_irr σ)`.
pub fn entropy_flux_trace(sigma: &CovarianceMatrix, params: &OscillatorParams) -> Result<f64> {
    let (a_irr, _, quad, _) = trace_pieces(sigma, params)?;
    Ok(-a_irr.trace() - quad)
}

/// Rate of change of the Wigner entropy, `dS/dt = ½tr(σ⁻¹ σ̇)` with
/// `σ̇ = Aσ + σAᵀ + D`, evaluated analytically. Satisfies the balance
/// `dS/dt = Π(t) + Φ(t)` exactly.
pub fn entropy_rate(sigma: &CovarianceMatrix, params: &OscillatorParams) -> Result<f64> {
    let a = build_drift(params);
    let d = build_diffusion(params);
    let sigma_inv = sigma
        .matrix()
        .try_inverse()
        .ok_or_else(|| Error::NonPhysical("singular covariance matrix".into()))?;
    let sdot = a * sigma.matrix() + sigma.matrix() * a.transpose() + d;
    Ok(0.5 * (sigma_inv * sdot).trace())
}

/// Leading `O(G²)` terms of the two entropy production contributions in the
/// weak-coupling power series (evaluated including the `G²` factor).
pub fn expand_small_coupling(params: &OscillatorParams) -> (f64, f64) {
    let g2 = params.coupling * params.coupling;
    let kt = params.kappa_tot();
    let wa = params.omega_a;
    let den = 2.0 * wa * wa * (kt * kt - 1.0) + (kt * kt + 1.0).powi(2) + wa.powi(4);
    let term = |n_self: f64, n_other: f64| {
        g2 * kt
            * (1.0 + kt * kt + wa * wa - 2.0 * wa * (2.0 * n_self + 1.0)
                + 2.0 * n_other * (1.0 + kt * kt + wa * wa))
            / ((2.0 * n_self + 1.0) * den)
    };
    (term(params.n_a, params.n_b), term(params.n_b, params.n_a))
}

/// Leading `1/ω_a²` tails of the two contributions in the large-detuning
/// limit. Both are strictly positive.
pub fn expand_large_omega(params: &OscillatorParams) -> (f64, f64) {
    let g2 = params.coupling * params.coupling;
    let kt = params.kappa_tot();
    let wa2 = params.omega_a * params.omega_a;
    let ra = (1.0 + 2.0 * params.n_b) / (1.0 + 2.0 * params.n_a);
    let mu_a = g2 * kt * ra / wa2;
    let mu_b = (g2 * kt / ra + g2 * g2 * params.kappa_b / (2.0 * (params.kappa_b * params.kappa_b + 1.0))) / wa2;
    (mu_a, mu_b)
}

/// Closed-form stationary entropy production for identical oscillators on
/// resonance (`ω_a = ω_b`, `N_a = N_b`); independent of the common bath
/// occupation.
pub fn identical_oscillators_pi(kappa_a: f64, kappa_b: f64, g: f64) -> Result<f64> {
    if kappa_a <= 0.0 || kappa_b <= 0.0 {
        return Err(Error::InvalidParams("dissipation rates must be positive".into()));
    }
    let kt = kappa_a + kappa_b;
    let chi = (kappa_a * kappa_a + 1.0) * (kappa_b * kappa_b + 1.0);
    let g2 = g * g;
    let den = 2.0 * (chi - g2) * (g2 + kappa_a * kappa_b * (kt * kt + 4.0));
    if chi - g2 <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "coupling G = {g} exceeds the stability threshold of the resonant system"
        )));
    }
    let num = g2 * kt * (g2 * (kt * kt - 3.0 * kappa_a * kappa_b + 1.0) + 4.0 * kappa_a * kappa_b * chi);
    Ok(num / den)
}

/// Specialization of [`identical_oscillators_pi`] to equal damping rates:
/// `Π̃ = G²κ(κ²+1)/((κ²+1)² − G²)`.
pub fn identical_oscillators_pi_equal_kappa(kappa: f64, g: f64) -> Result<f64> {
    if kappa <= 0.0 {
        return Err(Error::InvalidParams("dissipation rate must be positive".into()));
    }
    let k1 = kappa * kappa + 1.0;
    let den = k1 * k1 - g * g;
    if den <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "coupling G = {g} exceeds the stability threshold of the resonant system"
        )));
    }
    Ok(g * g * kappa * k1 / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{integrate_covariance, steady_state};
    use crate::matrices::DriftDiffusion;
    use approx::assert_abs_diff_eq;

    fn params(omega_a: f64, g: f64, ka: f64, kb: f64, na: f64, nb: f64) -> OscillatorParams {
        OscillatorParams::new(omega_a, g, ka, kb, na, nb).unwrap()
    }

    #[test]
    fn uncoupled_state_produces_nothing() {
        let p = params(1.0, 0.0, 0.2, 0.5, 1.0, 3.0);
        let s = steady_state(&p).unwrap();
        let diag = entropy_production_diagonal(&s, &p);
        assert_abs_diff_eq!(diag.pi_s, 0.0, epsilon = 1e-13);
        let off = entropy_production_offdiagonal(&s, &p);
        assert_abs_diff_eq!(off.pi_s, 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(entropy_production_trace(&s, &p).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(entropy_flux_trace(&s, &p).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn resonant_vacuum_fixture() {
        let p = params(1.0, 0.1, 0.2, 0.2, 0.0, 0.0);
        let s = steady_state(&p).unwrap();
        let expect = 1.9410227696901833e-3;
        assert_abs_diff_eq!(entropy_production_diagonal(&s, &p).pi_s, expect, epsilon = 1e-12);
        assert_abs_diff_eq!(entropy_production_trace(&s, &p).unwrap(), expect, epsilon = 1e-12);
        assert_abs_diff_eq!(identical_oscillators_pi(0.2, 0.2, 0.1).unwrap(), expect, epsilon = 1e-15);
        assert_abs_diff_eq!(
            identical_oscillators_pi_equal_kappa(0.2, 0.1).unwrap(),
            expect,
            epsilon = 1e-15
        );
    }

    #[test]
    fn three_forms_agree() {
        let cases = [
            params(1.0, 0.3, 0.2, 0.5, 0.0, 2.0),
            params(0.4, 0.15, 0.7, 0.1, 3.0, 0.5),
            params(-1.2, 0.5, 0.3, 0.3, 1.0, 1.0),
        ];
        for p in cases {
            let s = steady_state(&p).unwrap();
            let diag = entropy_production_diagonal(&s, &p);
            let off = entropy_production_offdiagonal(&s, &p);
            let tr = entropy_production_trace(&s, &p).unwrap();
            assert_abs_diff_eq!(diag.mu_a, off.mu_a, epsilon = 1e-10);
            assert_abs_diff_eq!(diag.mu_b, off.mu_b, epsilon = 1e-10);
            assert_abs_diff_eq!(diag.pi_s, tr, epsilon = 1e-10);
            assert!(diag.pi_s >= -1e-10);
            assert_abs_diff_eq!(entropy_flux_trace(&s, &p).unwrap(), -tr, epsilon = 1e-10);
        }
    }

    #[test]
    fn identical_oscillators_share_production_equally() {
        let p = params(1.0, 0.4, 0.3, 0.3, 2.0, 2.0);
        let s = steady_state(&p).unwrap();
        let b = entropy_production_diagonal(&s, &p);
        assert_abs_diff_eq!(b.mu_a, b.mu_b, epsilon = 1e-10);
    }

    #[test]
    fn resonant_production_independent_of_occupation() {
        let base = entropy_production_diagonal(
            &steady_state(&params(1.0, 0.3, 0.2, 0.5, 0.0, 0.0)).unwrap(),
            &params(1.0, 0.3, 0.2, 0.5, 0.0, 0.0),
        )
        .pi_s;
        for n in [1.0, 10.0] {
            let p = params(1.0, 0.3, 0.2, 0.5, n, n);
            let pi = entropy_production_diagonal(&steady_state(&p).unwrap(), &p).pi_s;
            assert_abs_diff_eq!(pi, base, epsilon = 1e-9);
        }
        assert_abs_diff_eq!(base, identical_oscillators_pi(0.2, 0.5, 0.3).unwrap(), epsilon = 1e-12);
    }

    #[test]
    fn production_even_in_coupling() {
        for g in [0.1, 0.45, 0.8] {
            let pp = params(0.8, g, 0.2, 0.4, 0.5, 2.0);
            let pm = params(0.8, -g, 0.2, 0.4, 0.5, 2.0);
            let a = entropy_production_diagonal(&steady_state(&pp).unwrap(), &pp).pi_s;
            let b = entropy_production_diagonal(&steady_state(&pm).unwrap(), &pm).pi_s;
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn small_coupling_expansion_is_fourth_order_accurate() {
        let exact_minus_expansion = |g: f64| {
            let p = params(1.0, g, 0.2, 0.2, 0.0, 0.0);
            let s = steady_state(&p).unwrap();
            let (ea, eb) = expand_small_coupling(&p);
            (entropy_production_diagonal(&s, &p).pi_s - (ea + eb)).abs()
        };
        let e1 = exact_minus_expansion(0.05);
        let e2 = exact_minus_expansion(0.025);
        let ratio = e1 / e2;
        assert!((13.0..=19.0).contains(&ratio), "error ratio {ratio} not ~16");
    }

    #[test]
    fn small_coupling_expansion_swaps_with_occupations() {
        let p = params(0.7, 0.1, 0.3, 0.4, 1.0, 3.0);
        let q = params(0.7, 0.1, 0.3, 0.4, 3.0, 1.0);
        let (pa, pb) = expand_small_coupling(&p);
        let (qa, qb) = expand_small_coupling(&q);
        assert_eq!(pa, qb);
        assert_eq!(pb, qa);
    }

    #[test]
    fn large_omega_tails_match_exact_values() {
        let p = params(100.0, 0.1, 0.2, 0.3, 0.5, 2.0);
        let s = steady_state(&p).unwrap();
        let b = entropy_production_diagonal(&s, &p);
        let (ta, tb) = expand_large_omega(&p);
        assert!(ta > 0.0 && tb > 0.0);
        assert!((b.mu_a - ta).abs() / ta < 0.05);
        assert!((b.mu_b - tb).abs() / tb < 0.05);
    }

    #[test]
    fn rate_balance_along_trajectory() {
        let p = params(1.0, 0.3, 0.2, 0.3, 0.0, 2.0);
        let dd = DriftDiffusion::from_params(&p);
        let start = CovarianceMatrix::thermal(0.0, 0.0);
        let traj = integrate_covariance(&dd.drift, &dd.diffusion, &start, 0.05, 200).unwrap();
        for sigma in traj.iter().step_by(20) {
            let pi = entropy_production_trace(sigma, &p).unwrap();
            let phi = entropy_flux_trace(sigma, &p).unwrap();
            let ds = entropy_rate(sigma, &p).unwrap();
            assert!(pi >= -1e-10);
            assert_abs_diff_eq!(ds, pi + phi, epsilon = 1e-8);
        }
    }

    #[test]
    fn closed_form_rejects_unstable_coupling() {
        assert!(identical_oscillators_pi_equal_kappa(0.2, 1.1).is_err());
        assert!(identical_oscillators_pi(0.2, 0.2, 1.1).is_err());
    }
}
