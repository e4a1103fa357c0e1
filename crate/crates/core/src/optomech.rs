//! Linearized cavity optomechanics mapped onto the generic coupled-oscillator
//! problem: the cavity field plays oscillator `a` (zero-temperature bath at
//! rate κ), the mechanical mode plays oscillator `b` (thermal bath at rate
//! γ_m), and frequencies are measured in units of the mechanical frequency.

use crate::correlations::{discord_closed_form, log_negativity, mutual_information, MeasuredMode};
use crate::dynamics::{stability_margin, steady_state};
use crate::entropy::entropy_production_diagonal;
use crate::error::{Error, Result};
use crate::matrices::build_drift;
use crate::params::OscillatorParams;

/// Linearized optomechanical working point. `delta` is the effective cavity
/// detuning (negative = blue-detuned) and `g` the drive-enhanced coupling,
/// both in units of the mechanical frequency. The classical working point
/// is taken as given: the module does not solve the semiclassical
/// self-consistency for the intracavity amplitude, so bistability
/// root-selection never enters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptomechConfig {
    pub delta: f64,
    pub g: f64,
    pub kappa: f64,
    pub gamma_m: f64,
    pub n: f64,
}

impl OptomechConfig {
    pub fn new(delta: f64, g: f64, kappa: f64, gamma_m: f64, n: f64) -> Result<Self> {
        let cfg = Self { delta, g, kappa, gamma_m, n };
        to_oscillator_params(&cfg).map(|_| cfg)
    }
}

/// The standard linearized identification: `ω_a = Δ`, `G = 2g`, `κ_a = κ`, `κ_b = γ_m`,
/// `N_a = 0`, `N_b = N`.
pub fn to_oscillator_params(cfg: &OptomechConfig) -> Result<OscillatorParams> {
    OscillatorParams::new(cfg.delta, 2.0 * cfg.g, cfg.kappa, cfg.gamma_m, 0.0, cfg.n)
}

/// Drive-enhanced coupling `g = √2 g₀|𝓔| / √(κ² + Δ²)` from the
/// single-photon rate `g0` and drive strength `drive`.
pub fn enhanced_coupling(g0: f64, drive: f64, kappa: f64, delta: f64) -> f64 {
    std::f64::consts::SQRT_2 * g0 * drive.abs() / (kappa * kappa + delta * delta).sqrt()
}

/// Multi-photon quantum cooperativity `𝓒 = 4g²/(κ γ_m N)`; undefined at
/// zero mechanical occupation.
pub fn cooperativity(cfg: &OptomechConfig) -> Result<f64> {
    if cfg.n <= 0.0 {
        return Err(Error::InvalidParams(
            "cooperativity is undefined at zero mechanical occupation".into(),
        ));
    }
    Ok(4.0 * cfg.g * cfg.g / (cfg.kappa * cfg.gamma_m * cfg.n))
}

/// Weak-coupling entropy production at negligible mechanical damping:
/// a pair of Lorentzians at the mechanical sidebands `Δ = ∓1`, weighted by
/// `N²` (cooling sideband suppressed at `N = 0`) and `(N+1)²`.
pub fn pi_small_coupling(cfg: &OptomechConfig) -> f64 {
    let g_big = 2.0 * cfg.g;
    let k2 = cfg.kappa * cfg.kappa;
    let n = cfg.n;
    2.0 * cfg.kappa * g_big * g_big / (2.0 * n + 1.0)
        * (n * n / ((cfg.delta - 1.0).powi(2) + k2)
            + (n + 1.0) * (n + 1.0) / ((cfg.delta + 1.0).powi(2) + k2))
}

/// Direction of the stationary heat flow through the mechanical mode, read
/// off the sign of its entropy production contribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThermalFlow {
    Cooling,
    Heating,
}

/// Figures of merit at one detuning of a sweep. Unstable working points
/// carry no figures but stay in the record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeRecord {
    pub delta: f64,
    pub stable: bool,
    pub mu_a: Option<f64>,
    pub mu_b: Option<f64>,
    pub pi_s: Option<f64>,
    pub mutual_info: Option<f64>,
    pub discord: Option<f64>,
    pub log_neg: Option<f64>,
    pub flow: Option<ThermalFlow>,
}

/// Sweeps the detuning at fixed `(g, κ, γ_m, N)` and reports entropy
/// production, correlations, and the cooling/heating tag per point.
pub fn regime_report(cfg: &OptomechConfig, delta_sweep: &[f64]) -> Result<Vec<RegimeRecord>> {
    delta_sweep
        .iter()
        .map(|&delta| {
            let point = OptomechConfig { delta, ..*cfg };
            let params = to_oscillator_params(&point)?;
            if stability_margin(&build_drift(&params)) > -1e-6 {
                return Ok(RegimeRecord {
                    delta,
                    stable: false,
                    mu_a: None,
                    mu_b: None,
                    pi_s: None,
                    mutual_info: None,
                    discord: None,
                    log_neg: None,
                    flow: None,
                });
            }
            let sigma = steady_state(&params)?;
            let b = entropy_production_diagonal(&sigma, &params);
            Ok(RegimeRecord {
                delta,
                stable: true,
                mu_a: Some(b.mu_a),
                mu_b: Some(b.mu_b),
                pi_s: Some(b.pi_s),
                mutual_info: Some(mutual_information(&sigma)),
                discord: Some(discord_closed_form(&sigma, MeasuredMode::B)),
                log_neg: Some(log_negativity(&sigma)),
                flow: Some(if b.mu_b < 0.0 { ThermalFlow::Cooling } else { ThermalFlow::Heating }),
            })
        })
        .collect()
}
