//! The four batch subcommands. Each builds a deterministic grid from the
//! settings, evaluates grid points in parallel (output order is the grid
//! order regardless of scheduling), and returns finished tables.

use rayon::prelude::*;

use ness_core::{
    bound_curves, classical_correlations, discord_closed_form, entropy_flux_trace,
    entropy_production_diagonal, entropy_production_trace, entropy_rate, integrate_covariance,
    log_negativity, mutual_information, regime_report, sample_steady_states, stability_margin,
    steady_state, wigner_shannon_entropy, BoundCurve, BoundKind,
    CovarianceMatrix, DriftDiffusion, MeasuredMode, OptomechConfig, OscillatorParams, SampleSpec,
    ThermalFlow,
};

use crate::config::Settings;
use crate::output::{Cell, Table};

/// Margin below which a drift matrix is treated as effectively unstable;
/// matches the sampler's rejection threshold.
const STABILITY_MARGIN: f64 = -1e-6;

#[derive(Debug)]
pub enum RunError {
    Usage(String),
    Numerical(String),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Usage(m) => write!(f, "usage error: {m}"),
            RunError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<crate::config::ConfigError> for RunError {
    fn from(e: crate::config::ConfigError) -> Self {
        RunError::Usage(e.to_string())
    }
}

fn core_err(e: ness_core::Error) -> RunError {
    match e {
        ness_core::Error::InvalidParams(_) => RunError::Usage(e.to_string()),
        other => RunError::Numerical(other.to_string()),
    }
}

fn metadata(subcommand: &str, settings: &Settings, extra: &[(&str, String)]) -> Vec<(String, String)> {
    let mut out = vec![
        ("subcommand".to_string(), subcommand.to_string()),
        ("format_version".to_string(), "1".to_string()),
        ("units".to_string(), "rates and frequencies in units of omega_b".to_string()),
    ];
    for (k, v) in extra {
        out.push((k.to_string(), v.clone()));
    }
    for (k, v) in settings.entries() {
        out.push((format!("config.{k}"), v.to_string()));
    }
    out
}

fn grid(start: f64, stop: f64, points: usize) -> Result<Vec<f64>, RunError> {
    if points == 0 {
        return Err(RunError::Usage("empty grid: points must be at least 1".into()));
    }
    if !(start.is_finite() && stop.is_finite()) {
        return Err(RunError::Usage("grid endpoints must be finite".into()));
    }
    Ok((0..points)
        .map(|i| {
            if points == 1 {
                start
            } else {
                start + (stop - start) * i as f64 / (points - 1) as f64
            }
        })
        .collect())
}

/// Everything the sweep and trajectory tables report about one steady state.
struct PointFigures {
    stable: bool,
    mu_a: Option<f64>,
    mu_b: Option<f64>,
    pi_s: Option<f64>,
    phi_s: Option<f64>,
    mutual_info: Option<f64>,
    discord: Option<f64>,
    classical: Option<f64>,
    log_neg: Option<f64>,
}

fn evaluate(params: &OscillatorParams) -> PointFigures {
    let dd = DriftDiffusion::from_params(params);
    if stability_margin(&dd.drift) > STABILITY_MARGIN {
        return PointFigures {
            stable: false,
            mu_a: None,
            mu_b: None,
            pi_s: None,
            phi_s: None,
            mutual_info: None,
            discord: None,
            classical: None,
            log_neg: None,
        };
    }
    let sigma = steady_state(params).expect("stable params have a steady state");
    let b = entropy_production_diagonal(&sigma, params);
    PointFigures {
        stable: true,
        mu_a: Some(b.mu_a),
        mu_b: Some(b.mu_b),
        pi_s: Some(b.pi_s),
        phi_s: Some(b.phi_s),
        mutual_info: Some(mutual_information(&sigma)),
        discord: Some(discord_closed_form(&sigma, MeasuredMode::B)),
        classical: Some(classical_correlations(&sigma, MeasuredMode::B)),
        log_neg: Some(log_negativity(&sigma)),
    }
}

pub const SWEEP_COLUMNS: &[&str] = &[
    "omega_a", "coupling", "kappa_a", "kappa_b", "n_a", "n_b", "stable", "mu_a", "mu_b", "pi_s",
    "phi_s", "mutual_info", "discord", "classical", "log_neg",
];

pub fn run_sweep(settings: &Settings) -> Result<Vec<(String, Table)>, RunError> {
    let swept = settings.require("sweep")?.to_string();
    if !["omega_a", "coupling", "n_a", "n_b"].contains(&swept.as_str()) {
        return Err(RunError::Usage(format!(
            "sweep = {swept}: expected one of omega_a, coupling, n_a, n_b"
        )));
    }
    let values = grid(settings.f64("start")?, settings.f64("stop")?, settings.usize("points")?)?;
    let fixed = |key: &str| -> Result<f64, RunError> {
        if key == swept {
            Ok(values[0])
        } else if ["n_a", "n_b"].contains(&key) {
            Ok(settings.f64_or(key, 0.0)?)
        } else {
            Ok(settings.f64(key)?)
        }
    };
    let base = [
        fixed("omega_a")?,
        fixed("coupling")?,
        settings.f64("kappa_a")?,
        settings.f64("kappa_b")?,
        fixed("n_a")?,
        fixed("n_b")?,
    ];
    let slot = ["omega_a", "coupling", "kappa_a", "kappa_b", "n_a", "n_b"]
        .iter()
        .position(|&k| k == swept)
        .unwrap();

    let params: Vec<OscillatorParams> = values
        .iter()
        .map(|&v| {
            let mut p = base;
            p[slot] = v;
            OscillatorParams::new(p[0], p[1], p[2], p[3], p[4], p[5]).map_err(core_err)
        })
        .collect::<Result<_, _>>()?;

    let figures: Vec<PointFigures> = params.par_iter().map(evaluate).collect();

    let mut table = Table::new(SWEEP_COLUMNS.to_vec(), metadata("sweep", settings, &[]));
    for (p, f) in params.iter().zip(&figures) {
        table.push(vec![
            Cell::Float(p.omega_a),
            Cell::Float(p.coupling),
            Cell::Float(p.kappa_a),
            Cell::Float(p.kappa_b),
            Cell::Float(p.n_a),
            Cell::Float(p.n_b),
            Cell::Bool(f.stable),
            Cell::opt_float(f.mu_a),
            Cell::opt_float(f.mu_b),
            Cell::opt_float(f.pi_s),
            Cell::opt_float(f.phi_s),
            Cell::opt_float(f.mutual_info),
            Cell::opt_float(f.discord),
            Cell::opt_float(f.classical),
            Cell::opt_float(f.log_neg),
        ]);
    }
    Ok(vec![(String::new(), table)])
}

pub const SCATTER_COLUMNS: &[&str] = &[
    "omega_a", "coupling", "n_a", "n_b", "stable", "pi_s", "mutual_info", "discord", "log_neg",
    "entangled",
];

pub const CURVE_COLUMNS: &[&str] = &["curve", "coupling", "pi_s", "value"];

pub fn run_random(settings: &Settings, seed: u64) -> Result<Vec<(String, Table)>, RunError> {
    let spec = SampleSpec {
        omega_a_range: (settings.f64_or("omega_a_min", 0.0)?, settings.f64_or("omega_a_max", 3.0)?),
        coupling_range: (
            settings.f64_or("coupling_min", 0.0)?,
            settings.f64_or("coupling_max", 2.0)?,
        ),
        n_a_range: (settings.f64_or("n_a_min", 0.0)?, settings.f64_or("n_a_max", 10.0)?),
        n_b_range: (settings.f64_or("n_b_min", 0.0)?, settings.f64_or("n_b_max", 10.0)?),
        kappa_a: settings.f64("kappa_a")?,
        kappa_b: settings.f64("kappa_b")?,
        count: settings.usize_or("count", 10_000)?,
        seed,
    };
    let points = sample_steady_states(&spec).map_err(core_err)?;

    let stable = points.iter().filter(|p| p.stable).count();
    let meta = [
        ("seed", seed.to_string()),
        ("rng", "chacha8".to_string()),
        ("count", spec.count.to_string()),
        ("stable_count", stable.to_string()),
    ];
    let mut scatter = Table::new(SCATTER_COLUMNS.to_vec(), metadata("random", settings, &meta));
    for p in &points {
        scatter.push(vec![
            Cell::Float(p.params.omega_a),
            Cell::Float(p.params.coupling),
            Cell::Float(p.params.n_a),
            Cell::Float(p.params.n_b),
            Cell::Bool(p.stable),
            Cell::opt_float(p.pi_s),
            Cell::opt_float(p.mutual_info),
            Cell::opt_float(p.discord),
            Cell::opt_float(p.log_neg),
            Cell::Bool(p.entangled),
        ]);
    }

    let g_max = settings.f64_or("curve_g_max", 2.0)?;
    let n_points = settings.usize_or("curve_points", 201)?;
    let n_max = settings.f64_or("curve_n_max", spec.n_b_range.1)?;
    let mi = bound_curves(BoundKind::MutualInfo, spec.kappa_a, spec.kappa_b, g_max, n_points, n_max)
        .map_err(core_err)?;
    let discord =
        bound_curves(BoundKind::Discord, spec.kappa_a, spec.kappa_b, g_max, n_points, n_max)
            .map_err(core_err)?;

    let mut curves = Table::new(CURVE_COLUMNS.to_vec(), metadata("random", settings, &meta));
    let mut emit = |name: &str, curve: &BoundCurve| {
        for i in 0..curve.coupling.len() {
            curves.push(vec![
                Cell::Text(name.to_string()),
                Cell::Float(curve.coupling[i]),
                Cell::Float(curve.pi_s[i]),
                Cell::Float(curve.value[i]),
            ]);
        }
    };
    emit("mutual_info_upper", &mi.upper);
    if let Some(lower) = &mi.lower {
        emit("mutual_info_lower", lower);
    }
    emit("discord_upper", &discord.upper);

    Ok(vec![(String::new(), scatter), ("curves".to_string(), curves)])
}

pub const OPTOMECH_COLUMNS: &[&str] = &[
    "delta", "g", "stable", "mu_a", "mu_b", "pi_s", "mutual_info", "discord", "log_neg", "flow",
];

pub fn run_optomech(settings: &Settings) -> Result<Vec<(String, Table)>, RunError> {
    let swept = settings.get("sweep").unwrap_or("delta").to_string();
    let values = grid(settings.f64("start")?, settings.f64("stop")?, settings.usize("points")?)?;
    let kappa = settings.f64("kappa")?;
    let gamma_m = settings.f64("gamma_m")?;
    let n = settings.f64("n_occ")?;

    let configs: Vec<OptomechConfig> = match swept.as_str() {
        "delta" => {
            let g = settings.f64("g")?;
            values
                .iter()
                .map(|&delta| OptomechConfig::new(delta, g, kappa, gamma_m, n).map_err(core_err))
                .collect::<Result<_, _>>()?
        }
        "g" => {
            let delta = settings.f64("delta")?;
            values
                .iter()
                .map(|&g| OptomechConfig::new(delta, g, kappa, gamma_m, n).map_err(core_err))
                .collect::<Result<_, _>>()?
        }
        other => {
            return Err(RunError::Usage(format!("sweep = {other}: expected delta or g")));
        }
    };

    let records: Vec<_> = configs
        .par_iter()
        .map(|cfg| regime_report(cfg, &[cfg.delta]).map(|mut v| v.remove(0)))
        .collect::<Result<_, _>>()
        .map_err(core_err)?;

    let mut table = Table::new(OPTOMECH_COLUMNS.to_vec(), metadata("optomech", settings, &[]));
    for (cfg, r) in configs.iter().zip(&records) {
        table.push(vec![
            Cell::Float(r.delta),
            Cell::Float(cfg.g),
            Cell::Bool(r.stable),
            Cell::opt_float(r.mu_a),
            Cell::opt_float(r.mu_b),
            Cell::opt_float(r.pi_s),
            Cell::opt_float(r.mutual_info),
            Cell::opt_float(r.discord),
            Cell::opt_float(r.log_neg),
            match r.flow {
                Some(ThermalFlow::Cooling) => Cell::Text("cooling".into()),
                Some(ThermalFlow::Heating) => Cell::Text("heating".into()),
                None => Cell::Missing,
            },
        ]);
    }
    Ok(vec![(String::new(), table)])
}

pub const TRAJECTORY_COLUMNS: &[&str] =
    &["t", "entropy", "ds_dt", "flux", "production", "balance_residual"];

pub fn run_trajectory(settings: &Settings) -> Result<Vec<(String, Table)>, RunError> {
    let params = OscillatorParams::new(
        settings.f64("omega_a")?,
        settings.f64("coupling")?,
        settings.f64("kappa_a")?,
        settings.f64("kappa_b")?,
        settings.f64_or("n_a", 0.0)?,
        settings.f64_or("n_b", 0.0)?,
    )
    .map_err(core_err)?;
    let dt = settings.f64_or("dt", 0.01)?;
    let steps = settings.usize("steps")?;
    let stride = settings.usize_or("stride", 1)?.max(1);

    let initial = match settings.get("init").unwrap_or("thermal") {
        "thermal" => {
            let ia = settings.f64_or("init_n_a", 0.0)?;
            let ib = settings.f64_or("init_n_b", 0.0)?;
            if ia < 0.0 || ib < 0.0 {
                return Err(RunError::Usage(
                    "initial occupations must be non-negative".into(),
                ));
            }
            CovarianceMatrix::thermal(ia, ib)
        }
        "steady" => steady_state(&params).map_err(core_err)?,
        other => {
            return Err(RunError::Usage(format!("init = {other}: expected thermal or steady")));
        }
    };

    let dd = DriftDiffusion::from_params(&params);
    let traj =
        integrate_covariance(&dd.drift, &dd.diffusion, &initial, dt, steps).map_err(core_err)?;

    let mut table = Table::new(TRAJECTORY_COLUMNS.to_vec(), metadata("trajectory", settings, &[]));
    for (i, sigma) in traj.iter().enumerate().step_by(stride) {
        let pi = entropy_production_trace(sigma, &params).map_err(core_err)?;
        let phi = entropy_flux_trace(sigma, &params).map_err(core_err)?;
        let ds = entropy_rate(sigma, &params).map_err(core_err)?;
        table.push(vec![
            Cell::Float(i as f64 * dt),
            Cell::Float(wigner_shannon_entropy(sigma)),
            Cell::Float(ds),
            Cell::Float(phi),
            Cell::Float(pi),
            Cell::Float(ds - phi - pi),
        ]);
    }
    Ok(vec![(String::new(), table)])
}
