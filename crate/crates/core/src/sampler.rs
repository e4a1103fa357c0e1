//! Randomized steady-state sampling of the correlation-vs-irreversibility
//! planes, plus the analytic bound curves that enclose the scatter.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::correlations::{discord_closed_form, log_negativity, mutual_information, MeasuredMode};
use crate::dynamics::{stability_margin, steady_state};
use crate::entropy::entropy_production_diagonal;
use crate::error::{Error, Result};
use crate::matrices::build_drift;
use crate::params::OscillatorParams;

/// States closer to the stability edge than this margin are treated as
/// unstable: the entropy production diverges there and double-precision
/// values become meaningless.
const STABILITY_MARGIN: f64 = -1e-6;

/// Uniform sampling domain for random steady states. Draws are uniform and
/// independent in `omega_a`, `coupling`, `n_a`, `n_b`; the damping rates are
/// held fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSpec {
    pub omega_a_range: (f64, f64),
    pub coupling_range: (f64, f64),
    pub n_a_range: (f64, f64),
    pub n_b_range: (f64, f64),
    pub kappa_a: f64,
    pub kappa_b: f64,
    pub count: usize,
    pub seed: u64,
}

impl SampleSpec {
    fn validate(&self) -> Result<()> {
        let ranges = [self.omega_a_range, self.coupling_range, self.n_a_range, self.n_b_range];
        if ranges.iter().any(|(lo, hi)| !(lo < hi) || !lo.is_finite() || !hi.is_finite()) {
            return Err(Error::InvalidParams("sampling ranges must be non-degenerate".into()));
        }
        if self.count == 0 {
            return Err(Error::InvalidParams("sample count must be at least 1".into()));
        }
        OscillatorParams::new(1.0, 0.0, self.kappa_a, self.kappa_b, 0.0, 0.0).map(|_| ())
    }
}

/// One random draw with its figures of merit. Unstable draws are retained
/// with `stable = false` and no figures; they are data (the stable fraction
/// is informative), not errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePoint {
    pub params: OscillatorParams,
    pub stable: bool,
    pub pi_s: Option<f64>,
    pub mutual_info: Option<f64>,
    pub discord: Option<f64>,
    pub log_neg: Option<f64>,
    pub entangled: bool,
}

/// Draws `spec.count` parameter sets with a seeded deterministic generator
/// (ChaCha8; draw order `omega_a`, `coupling`, `n_a`, `n_b` per point) and
/// computes entropy production, mutual information, discord (measurement on
/// mode b), and log negativity for every stable draw.
pub fn sample_steady_states(spec: &SampleSpec) -> Result<Vec<SamplePoint>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    for _ in 0..spec.count {
        let omega_a = rng.gen_range(spec.omega_a_range.0..spec.omega_a_range.1);
        let coupling = rng.gen_range(spec.coupling_range.0..spec.coupling_range.1);
        let n_a = rng.gen_range(spec.n_a_range.0..spec.n_a_range.1);
        let n_b = rng.gen_range(spec.n_b_range.0..spec.n_b_range.1);
        let params =
            OscillatorParams::new(omega_a, coupling, spec.kappa_a, spec.kappa_b, n_a, n_b)?;
        out.push(evaluate_point(params));
    }
    Ok(out)
}

fn evaluate_point(params: OscillatorParams) -> SamplePoint {
    let margin = stability_margin(&build_drift(&params));
    if margin > STABILITY_MARGIN {
        return SamplePoint {
            params,
            stable: false,
            pi_s: None,
            mutual_info: None,
            discord: None,
            log_neg: None,
            entangled: false,
        };
    }
    let sigma = steady_state(&params).expect("stable params have a steady state");
    let log_neg = log_negativity(&sigma);
    SamplePoint {
        params,
        stable: true,
        pi_s: Some(entropy_production_diagonal(&sigma, &params).pi_s),
        mutual_info: Some(mutual_information(&sigma)),
        discord: Some(discord_closed_form(&sigma, MeasuredMode::B)),
        log_neg: Some(log_neg),
        entangled: log_neg > 0.0,
    }
}

/// Which scatter plane a bound curve belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    MutualInfo,
    Discord,
}

/// A parametric extremal curve `G ↦ (Π_s(G), value(G))`. `truncated` is set
/// when the requested coupling sweep left the stability region.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCurve {
    pub coupling: Vec<f64>,
    pub pi_s: Vec<f64>,
    pub value: Vec<f64>,
    pub truncated: bool,
}

/// The bound curves of one scatter plane. The discord plane has an analytic
/// upper extremal configuration only; its lower boundary is the axis.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCurves {
    pub kind: BoundKind,
    pub upper: BoundCurve,
    pub lower: Option<BoundCurve>,
}

fn trace_curve(
    base: impl Fn(f64) -> OscillatorParams,
    value_of: impl Fn(&crate::covariance::CovarianceMatrix) -> f64,
    g_max: f64,
    n_points: usize,
) -> BoundCurve {
    let mut curve = BoundCurve {
        coupling: Vec::with_capacity(n_points),
        pi_s: Vec::with_capacity(n_points),
        value: Vec::with_capacity(n_points),
        truncated: false,
    };
    for i in 0..n_points {
        let g = g_max * i as f64 / (n_points - 1).max(1) as f64;
        let params = base(g);
        if stability_margin(&build_drift(&params)) > STABILITY_MARGIN {
            curve.truncated = true;
            break;
        }
        let sigma = steady_state(&params).expect("stable params have a steady state");
        curve.coupling.push(g);
        curve.pi_s.push(entropy_production_diagonal(&sigma, &params).pi_s);
        curve.value.push(value_of(&sigma));
    }
    curve
}

/// Extremal configurations enclosing the scatter planes:
/// the mutual-information upper bound is attained by resonant identical
/// oscillators (`omega_a = 1`, `N_a = N_b`), its lower bound by
/// `omega_a = 0`, `N_a = 0`, `N_b = n_max`; the discord upper bound by
/// `omega_a = 0` at zero temperature. The `omega_a = 0` configurations stay
/// stable for any coupling, which is what makes the lower curve's large-Π
/// asymptote reachable.
pub fn bound_curves(
    kind: BoundKind,
    kappa_a: f64,
    kappa_b: f64,
    g_max: f64,
    n_points: usize,
    n_max: f64,
) -> Result<BoundCurves> {
    if !(g_max > 0.0) || n_points < 2 {
        return Err(Error::InvalidParams("need g_max > 0 and at least two curve points".into()));
    }
    let mk = move |omega_a: f64, n_a: f64, n_b: f64| {
        move |g: f64| OscillatorParams::new(omega_a, g, kappa_a, kappa_b, n_a, n_b)
            .expect("curve configurations are valid")
    };
    let curves = match kind {
        BoundKind::MutualInfo => BoundCurves {
            kind,
            upper: trace_curve(mk(1.0, 0.0, 0.0), mutual_information, g_max, n_points),
            lower: Some(trace_curve(mk(0.0, 0.0, n_max), mutual_information, g_max, n_points)),
        },
        BoundKind::Discord => BoundCurves {
            kind,
            upper: trace_curve(
                mk(0.0, 0.0, 0.0),
                |s| discord_closed_form(s, MeasuredMode::B),
                g_max,
                n_points,
            ),
            lower: None,
        },
    };
    Ok(curves)
}

/// Closed-form mutual information for resonant identical oscillators with
/// equal damping (`omega_a = 1`, `kappa_a = kappa_b`, `N_a = N_b`);
/// independent of the common occupation.
pub fn identical_oscillators_mutual_info(kappa: f64, g: f64) -> Result<f64> {
    if kappa <= 0.0 {
        return Err(Error::InvalidParams("dissipation rate must be positive".into()));
    }
    let k_minus = kappa * kappa - 1.0;
    let k_plus = kappa * kappa + 1.0;
    let g2 = g * g;
    let den = (k_plus * k_plus - g2) * (g2 * g2 + 8.0 * g2 * k_minus + 16.0 * k_plus * k_plus);
    if k_plus * k_plus - g2 <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "coupling G = {g} exceeds the stability threshold of the resonant system"
        )));
    }
    let num = 4.0 * (g2 * k_minus + 2.0 * k_plus * k_plus).powi(2);
    Ok(0.5 * (num / den).ln())
}

/// Large-coupling limit of the mutual information along the lower-bound
/// configuration: the value the lower curve saturates to as `Π_s → ∞`.
pub fn min_mutual_info_asymptote(kappa_a: f64, kappa_b: f64) -> Result<f64> {
    if kappa_a <= 0.0 || kappa_b <= 0.0 {
        return Err(Error::InvalidParams("dissipation rates must be positive".into()));
    }
    let (ka, kb) = (kappa_a, kappa_b);
    let num = (ka + 2.0 * kb)
        * (2.0 * ka.powi(3) + kb + 8.0 * ka * ka * kb + 8.0 * ka * kb * kb + kb.powi(3));
    let den = ka * kb * (1.0 + kb * kb);
    Ok(0.5 * (num / den).ln())
}
