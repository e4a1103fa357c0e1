//! Acceptance gate: one test per release criterion, each printing a single
//! PASS/FAIL line. Run with `cargo test --test acceptance -- --nocapture`.
//!
//! Criteria 7 and 8 are currently red; the FAIL lines carry the measured
//! numbers. See the test bodies for what exactly is violated.

use std::time::Instant;

use ness_core::{
    build_drift, discord_closed_form, entropy_flux_trace, entropy_production_diagonal,
    entropy_production_offdiagonal, entropy_production_trace, entropy_rate,
    identical_oscillators_mutual_info, identical_oscillators_pi, identical_oscillators_pi_equal_kappa,
    integrate_covariance, min_mutual_info_asymptote, mutual_information, pi_small_coupling,
    regime_report, sample_steady_states, stability_margin, steady_state, to_oscillator_params,
    CovarianceMatrix, DriftDiffusion, MeasuredMode, OptomechConfig, OscillatorParams, SampleSpec,
    SymplecticInvariants,
};

fn criterion(number: u8, name: &str, result: Result<(), String>) {
    match result {
        Ok(()) => println!("ACCEPTANCE {number:2} {name}: PASS"),
        Err(detail) => {
            println!("ACCEPTANCE {number:2} {name}: FAIL — {detail}");
            panic!("criterion {number} failed: {detail}");
        }
    }
}

fn fig6_spec(seed: u64, count: usize, n_max: f64) -> SampleSpec {
    SampleSpec {
        omega_a_range: (0.0, 3.0),
        coupling_range: (0.0, 2.0),
        n_a_range: (0.0, n_max),
        n_b_range: (0.0, n_max),
        kappa_a: 0.5,
        kappa_b: 1.0,
        count,
        seed,
    }
}

fn stable_params(seed: u64, want: usize) -> Vec<OscillatorParams> {
    let mut out = Vec::with_capacity(want);
    let mut chunk = 0;
    while out.len() < want {
        let points = sample_steady_states(&fig6_spec(seed + chunk, 2000, 10.0)).unwrap();
        out.extend(points.into_iter().filter(|p| p.stable).map(|p| p.params));
        chunk += 1;
    }
    out.truncate(want);
    out
}

#[test]
fn criterion_01_three_way_agreement() {
    let run = || -> Result<(), String> {
        let start = Instant::now();
        let params = stable_params(101, 1000);
        for p in &params {
            let s = steady_state(p).map_err(|e| e.to_string())?;
            let diag = entropy_production_diagonal(&s, p);
            let off = entropy_production_offdiagonal(&s, p);
            let trace = entropy_production_trace(&s, p).map_err(|e| e.to_string())?;
            let scale = diag.pi_s.abs().max(1.0);
            for (x, y, what) in [
                (diag.mu_a, off.mu_a, "mu_a diag vs offdiag"),
                (diag.mu_b, off.mu_b, "mu_b diag vs offdiag"),
                (diag.pi_s, trace, "pi diag vs trace"),
            ] {
                if (x - y).abs() > 1e-9 * scale {
                    return Err(format!("{what}: {x} vs {y} at {p:?}"));
                }
            }
        }
        let elapsed = start.elapsed();
        if elapsed.as_secs_f64() > 10.0 {
            return Err(format!("took {elapsed:?}, budget 10 s"));
        }
        Ok(())
    };
    criterion(1, "three-way entropy production agreement", run());
}

#[test]
fn criterion_02_closed_forms() {
    let run = || -> Result<(), String> {
        for ka in [0.1f64, 0.2, 0.5, 0.8] {
            for kb in [0.1f64, 0.3, 0.6, 1.0] {
                let edge = ((ka * ka + 1.0) * (kb * kb + 1.0)).sqrt();
                for frac in [0.1, 0.3, 0.5, 0.7, 0.9] {
                    let g = frac * edge.min(1.0 + ka.min(kb)); // well inside stability
                    let p = OscillatorParams::new(1.0, g, ka, kb, 0.0, 0.0).unwrap();
                    if stability_margin(&build_drift(&p)) > -1e-6 {
                        continue;
                    }
                    let s = steady_state(&p).unwrap();
                    let pi = entropy_production_diagonal(&s, &p).pi_s;
                    let closed = identical_oscillators_pi(ka, kb, g).map_err(|e| e.to_string())?;
                    if (pi - closed).abs() > 1e-9 * pi.abs().max(1.0) {
                        return Err(format!("identical-oscillator closed form: {closed} vs {pi} at κ=({ka},{kb}), G={g}"));
                    }
                    if (ka - kb).abs() < 1e-15 {
                        let mi = mutual_information(&s);
                        let closed_mi = identical_oscillators_mutual_info(ka, g)
                            .map_err(|e| e.to_string())?;
                        if (mi - closed_mi).abs() > 1e-9 * mi.abs().max(1.0) {
                            return Err(format!("equal-damping mutual-info closed form: {closed_mi} vs {mi} at κ={ka}, G={g}"));
                        }
                    }
                }
            }
        }
        let fixture = identical_oscillators_pi_equal_kappa(0.2, 0.1).unwrap();
        if (fixture - 1.9410e-3).abs() > 1e-7 {
            return Err(format!("fixture: {fixture} vs 1.9410e-3"));
        }
        Ok(())
    };
    criterion(2, "closed forms match the Lyapunov route", run());
}

#[test]
fn criterion_03_rate_balance() {
    let run = || -> Result<(), String> {
        let params = stable_params(303, 10);
        for p in &params {
            let dd = DriftDiffusion::from_params(p);
            let start = CovarianceMatrix::thermal(p.n_b, p.n_a); // deliberately off-steady
            let traj = integrate_covariance(&dd.drift, &dd.diffusion, &start, 0.02, 500)
                .map_err(|e| e.to_string())?;
            for sigma in traj.iter().step_by(10) {
                let pi = entropy_production_trace(sigma, p).map_err(|e| e.to_string())?;
                let phi = entropy_flux_trace(sigma, p).map_err(|e| e.to_string())?;
                let ds = entropy_rate(sigma, p).map_err(|e| e.to_string())?;
                if pi < -1e-10 {
                    return Err(format!("negative production {pi} at {p:?}"));
                }
                let resid = (ds - phi - pi).abs();
                if resid > 1e-8 {
                    return Err(format!("balance residual {resid} at {p:?}"));
                }
            }
        }
        Ok(())
    };
    criterion(3, "entropy rate balance along trajectories", run());
}

#[test]
fn criterion_04_small_coupling_proportionality() {
    let run = || -> Result<(), String> {
        let mi_error = |g: f64| {
            let p = OscillatorParams::new(1.0, g, 0.2, 0.2, 0.0, 0.0).unwrap();
            let s = steady_state(&p).unwrap();
            let pi = entropy_production_diagonal(&s, &p).pi_s;
            (mutual_information(&s) - pi / (2.0 * p.kappa_tot())).abs()
        };
        let (e1, e2, e3) = (mi_error(0.04), mi_error(0.02), mi_error(0.01));
        for (a, b) in [(e1, e2), (e2, e3)] {
            let r = a / b;
            if !(12.0..=20.0).contains(&r) {
                return Err(format!("mutual-information error ratio {r}, expected 16 ± 4"));
            }
        }
        for n in [0.0, 1.0, 4.0] {
            let d_error = |g: f64| {
                let p = OscillatorParams::new(1.0, g, 0.2, 0.2, n, n).unwrap();
                let s = steady_state(&p).unwrap();
                let pi = entropy_production_diagonal(&s, &p).pi_s;
                (discord_closed_form(&s, MeasuredMode::B)
                    - pi / (4.0 * p.kappa_tot() * (n + 1.0)))
                    .abs()
            };
            let r = d_error(0.04) / d_error(0.02);
            if !(12.0..=20.0).contains(&r) {
                return Err(format!("discord error ratio {r} at N = {n}, expected 16 ± 4"));
            }
        }
        Ok(())
    };
    criterion(4, "weak-coupling proportionality laws", run());
}

#[test]
fn criterion_05_occupation_independence() {
    let run = || -> Result<(), String> {
        let at = |n: f64| {
            let p = OscillatorParams::new(1.0, 0.3, 0.2, 0.5, n, n).unwrap();
            let s = steady_state(&p).unwrap();
            (
                entropy_production_diagonal(&s, &p).pi_s,
                mutual_information(&s),
                discord_closed_form(&s, MeasuredMode::B),
            )
        };
        let (pi0, mi0, d0) = at(0.0);
        for n in [1.0, 10.0] {
            let (pi, mi, _) = at(n);
            if (pi - pi0).abs() > 1e-9 || (mi - mi0).abs() > 1e-9 {
                return Err(format!("Π or 𝓘 moved with N = {n}: ΔΠ = {}, Δ𝓘 = {}", pi - pi0, mi - mi0));
            }
        }
        let (_, _, d5) = at(5.0);
        if (d0 - d5).abs() <= 1e-6 {
            return Err(format!("discord insensitive to N: |ΔD| = {}", (d0 - d5).abs()));
        }
        Ok(())
    };
    criterion(5, "occupation independence of Π and 𝓘", run());
}

#[test]
fn criterion_06_discord_oracle() {
    let run = || -> Result<(), String> {
        let params = stable_params(606, 1000);
        let (mut branch1, mut branch2) = (0usize, 0usize);
        for p in &params {
            let s = steady_state(p).unwrap();
            let inv = SymplecticInvariants::of(&s);
            let lhs = (1.0 + 4.0 * inv.i2) * inv.i3 * inv.i3 * (inv.i1 + 4.0 * inv.i4);
            let rhs = 4.0 * (inv.i4 - inv.i1 * inv.i2).powi(2);
            if lhs < rhs {
                branch1 += 1;
            } else {
                branch2 += 1;
            }
            let closed = discord_closed_form(&s, MeasuredMode::B);
            let (numeric, _) =
                ness_core::discord_numeric(&s, MeasuredMode::B).map_err(|e| e.to_string())?;
            if (closed - numeric).abs() > 1e-7 {
                return Err(format!("closed {closed} vs numeric {numeric} at {p:?}"));
            }
        }
        if branch1 < 50 || branch2 < 50 {
            return Err(format!("branch coverage too thin: {branch1} / {branch2}"));
        }
        Ok(())
    };
    criterion(6, "closed-form vs numeric discord", run());
}

/// Π_s of an extremal configuration as a function of G.
fn curve_pi(p_of_g: &dyn Fn(f64) -> OscillatorParams, g: f64) -> Option<f64> {
    let p = p_of_g(g);
    if stability_margin(&build_drift(&p)) > -1e-9 {
        return None;
    }
    let s = steady_state(&p).ok()?;
    Some(entropy_production_diagonal(&s, &p).pi_s)
}

/// Finds G ≥ 0 with Π(G) = target by bisection (Π is monotone in G along
/// the extremal configurations), then evaluates `value` there.
fn value_at_matched_pi(
    p_of_g: &dyn Fn(f64) -> OscillatorParams,
    g_edge: f64,
    target: f64,
    value: &dyn Fn(&CovarianceMatrix) -> f64,
) -> Option<f64> {
    let (mut lo, mut hi) = (0.0f64, g_edge);
    if curve_pi(p_of_g, hi)? < target {
        return None; // target beyond the curve's reach
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        match curve_pi(p_of_g, mid) {
            Some(pi) if pi < target => lo = mid,
            _ => hi = mid,
        }
    }
    let g = 0.5 * (lo + hi);
    let s = steady_state(&p_of_g(g)).ok()?;
    Some(value(&s))
}

#[test]
fn criterion_07_scatter_bounds() {
    let run = || -> Result<(), String> {
        let (ka, kb) = (0.5, 1.0);
        let upper_cfg = move |g: f64| OscillatorParams::new(1.0, g, ka, kb, 0.0, 0.0).unwrap();
        let lower_cfg = move |g: f64| OscillatorParams::new(0.0, g, ka, kb, 0.0, 10.0).unwrap();
        // Resonant configuration destabilizes at G² = (κ_a²+1)(κ_b²+1).
        let g_upper_edge = ((ka * ka + 1.0) * (kb * kb + 1.0)).sqrt() - 1e-7;

        let asym = min_mutual_info_asymptote(ka, kb).unwrap();
        if (asym - 0.5 * 20.625f64.ln()).abs() > 1e-12 {
            return Err(format!("asymptote formula: {asym}"));
        }
        let far = steady_state(&lower_cfg(1e3)).unwrap();
        if (mutual_information(&far) - asym).abs() > 1e-3 {
            return Err(format!(
                "asymptote cross-check: {} vs {asym}",
                mutual_information(&far)
            ));
        }

        let points = sample_steady_states(&fig6_spec(6, 10_000, 10.0)).unwrap();
        let mut worst_upper = 0.0f64;
        let mut worst_lower = 0.0f64;
        let mut upper_violations = 0usize;
        for pt in points.iter().filter(|p| p.stable) {
            let (pi, mi) = (pt.pi_s.unwrap(), pt.mutual_info.unwrap());
            if let Some(upper) =
                value_at_matched_pi(&upper_cfg, g_upper_edge, pi, &mutual_information)
            {
                let excess = mi - upper;
                if excess > 1e-6 {
                    upper_violations += 1;
                    worst_upper = worst_upper.max(excess);
                }
            }
            let lower = value_at_matched_pi(&lower_cfg, 2e3, pi, &mutual_information)
                .ok_or("lower curve did not reach the sampled Π")?;
            worst_lower = worst_lower.max(lower - mi);
            if lower - mi > 1e-6 {
                return Err(format!("lower bound violated by {} at {:?}", lower - mi, pt.params));
            }
        }
        if upper_violations > 0 {
            return Err(format!(
                "{upper_violations} stable points exceed the resonant-identical upper curve, \
                 worst by {worst_upper:.3e} (> 1e-6); near-resonant states with unequal bath \
                 occupations sit slightly above the N_a = N_b extremal family, so the claimed \
                 upper bound does not hold exactly (lower bound and asymptote both hold, \
                 worst lower margin {worst_lower:.3e})"
            ));
        }
        Ok(())
    };
    criterion(7, "scatter-plane bound curves and asymptote", run());
}

#[test]
fn criterion_08_figure_features() {
    let run = || -> Result<(), String> {
        // Hot-bath detuning sweep: Π_s peaks at resonance.
        let pi_at = |wa: f64| {
            let p = OscillatorParams::new(wa, 0.1, 0.2, 0.2, 0.0, 100.0).unwrap();
            entropy_production_diagonal(&steady_state(&p).unwrap(), &p).pi_s
        };
        let grid: Vec<f64> = (0..=300).map(|i| i as f64 * 0.01).collect();
        let peak = grid
            .iter()
            .max_by(|a, b| pi_at(**a).total_cmp(&pi_at(**b)))
            .copied()
            .unwrap();
        if (peak - 1.0).abs() > 0.0101 {
            return Err(format!("hot-bath Π peak at ω_a = {peak}, expected 1"));
        }

        // Occupation-ratio sweep: minimum at N_b/N_a = 1.
        let pi_ratio = |nb: f64| {
            let p = OscillatorParams::new(1.0, 0.05, 0.2, 0.5, 1.0, nb).unwrap();
            entropy_production_diagonal(&steady_state(&p).unwrap(), &p).pi_s
        };
        let ratios: Vec<f64> = (0..=300).map(|i| i as f64 * 0.01).collect();
        let trough = ratios
            .iter()
            .min_by(|a, b| pi_ratio(**a).total_cmp(&pi_ratio(**b)))
            .copied()
            .unwrap();
        if (trough - 1.0).abs() > 0.0101 {
            return Err(format!("Π minimum at N_b/N_a = {trough}, expected 1"));
        }

        // Strong coupling, hot bath: hybridization doublet (two interior
        // local maxima of Π over the detuning).
        let pi_strong = |wa: f64| {
            let p = OscillatorParams::new(wa, 0.6, 0.2, 0.2, 0.0, 10.0).unwrap();
            entropy_production_diagonal(&steady_state(&p).unwrap(), &p).pi_s
        };
        let vals: Vec<f64> = grid.iter().map(|&w| pi_strong(w)).collect();
        let maxima = vals
            .windows(3)
            .filter(|w| w[1] > w[0] && w[1] > w[2])
            .count();
        if maxima < 2 {
            return Err(format!("expected a hybridized doublet, found {maxima} interior maxima"));
        }

        // Entanglement dies entirely with one thermal quantum on b.
        for i in 0..=300 {
            let wa = i as f64 * 0.01;
            let p = OscillatorParams::new(wa, 0.6, 0.2, 0.5, 0.0, 1.0).unwrap();
            if let Ok(s) = steady_state(&p) {
                let en = ness_core::log_negativity(&s);
                if en > 0.0 {
                    return Err(format!("entanglement {en} survives at ω_a = {wa}, N_b = 1"));
                }
            }
        }

        // Optomechanical scan: cooling dip exactly at the red sideband…
        let cfg = OptomechConfig::new(1.0, 0.005, 0.2, 1e-4, 1e3).unwrap();
        let deltas: Vec<f64> = (0..=600).map(|i| -3.0 + 0.01 * i as f64).collect();
        let records = regime_report(&cfg, &deltas).map_err(|e| e.to_string())?;
        let coolest = records
            .iter()
            .filter(|r| r.stable)
            .min_by(|a, b| a.mu_b.unwrap().total_cmp(&b.mu_b.unwrap()))
            .unwrap();
        if (coolest.delta - 1.0).abs() > 0.0101 || coolest.mu_b.unwrap() >= 0.0 {
            return Err(format!("cooling dip at Δ = {}, μ_b = {:?}", coolest.delta, coolest.mu_b));
        }

        // …and Π decays towards decoupling. The criterion asks for < 1e-6
        // of the peak at |Δ| = 20, but the actual tail is ~2.8e-6 of the
        // peak (1/Δ² decay is too slow for that threshold).
        let peak_pi = records
            .iter()
            .filter_map(|r| r.pi_s)
            .fold(f64::NEG_INFINITY, f64::max);
        let far = regime_report(&cfg, &[-20.0, 20.0]).map_err(|e| e.to_string())?;
        let far_ratio = far
            .iter()
            .map(|r| r.pi_s.unwrap() / peak_pi)
            .fold(0.0f64, f64::max);
        if far_ratio > 1e-6 {
            return Err(format!(
                "Π at |Δ| = 20 is {far_ratio:.3e} of its peak (threshold 1e-6); the 1/Δ² \
                 sideband tails decay too slowly for the stated margin, which would need \
                 |Δ| ≈ 33 to reach"
            ));
        }
        Ok(())
    };
    criterion(8, "qualitative figure features", run());
}

#[test]
fn criterion_09_optomech_expansion() {
    let run = || -> Result<(), String> {
        let cfg = OptomechConfig::new(0.0, 2e-5, 0.2, 1e-6, 1e3).unwrap();
        let mut worst = 0.0f64;
        for i in 0..=120 {
            let delta = -3.0 + 0.05 * i as f64;
            let point = OptomechConfig { delta, ..cfg };
            let params = to_oscillator_params(&point).unwrap();
            let exact = entropy_production_diagonal(&steady_state(&params).unwrap(), &params).pi_s;
            let approx = pi_small_coupling(&point);
            worst = worst.max((approx - exact).abs() / exact);
        }
        if worst > 0.02 {
            return Err(format!("worst relative deviation {worst:.4}"));
        }
        Ok(())
    };
    criterion(9, "optomechanical weak-coupling expansion", run());
}

#[test]
fn criterion_10_deterministic_output() {
    let run = || -> Result<(), String> {
        let dir = std::env::temp_dir().join("ness-acceptance-determinism");
        std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
        let cfg = dir.join("run.cfg");
        std::fs::write(
            &cfg,
            "count = 2000\nseed = 6\nkappa_a = 0.5\nkappa_b = 1\ncurve_points = 51\n",
        )
        .map_err(|e| e.to_string())?;
        let mut outputs = Vec::new();
        for run_idx in 0..2 {
            let out = dir.join(format!("run{run_idx}.csv"));
            let status = std::process::Command::new(env!("CARGO_BIN_EXE_ness"))
                .args(["random", "--config"])
                .arg(&cfg)
                .arg("--out")
                .arg(&out)
                .status()
                .map_err(|e| e.to_string())?;
            if !status.success() {
                return Err(format!("run {run_idx} exited with {status}"));
            }
            let scatter = std::fs::read(&out).map_err(|e| e.to_string())?;
            let curves = std::fs::read(dir.join(format!("run{run_idx}.curves.csv")))
                .map_err(|e| e.to_string())?;
            outputs.push((scatter, curves));
        }
        if outputs[0] != outputs[1] {
            return Err("repeated runs with the same seed differ bytewise".into());
        }
        Ok(())
    };
    criterion(10, "bytewise-deterministic random runs", run());
}
