//! Rényi-2 correlation measures of two-mode Gaussian states: mutual
//! information, Gaussian discord (closed form and numerically optimized),
//! one-way classical correlations, and logarithmic negativity.
//!
//! All entropies are Rényi-2 unless noted; with the vacuum-variance-1/2
//! convention, `S₂ = ½ ln det σ + n ln 2` for an `n`-mode state.

use nalgebra::Matrix2;

use crate::covariance::CovarianceMatrix;
use crate::error::{Error, Result};

/// Clamp for `ln λ` in the measurement family; at `λ = e¹²` the conditional
/// determinant has converged to the homodyne limit well below 1e-10.
const LN_LAMBDA_LIMIT: f64 = 12.0;
/// Relative dead zone around the discord branch boundary, inside which both
/// branch formulas are evaluated and the minimum taken.
const BRANCH_DEAD_ZONE: f64 = 1e-12;

/// Local-symplectic invariants of a two-mode covariance matrix. `i3` keeps
/// the sign of `det c_ab`; a negative value signals squeezing-dominated
/// cross correlations (necessary for entanglement).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticInvariants {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: f64,
}

impl SymplecticInvariants {
    pub fn of(sigma: &CovarianceMatrix) -> Self {
        Self {
            i1: sigma.block_a().determinant(),
            i2: sigma.block_b().determinant(),
            i3: sigma.cross_block().determinant(),
            i4: sigma.determinant(),
        }
    }
}

/// Which mode the Gaussian measurement acts on. Discord is asymmetric:
/// `MeasuredMode::B` gives the discord of `a` given measurements on `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasuredMode {
    A,
    B,
}

/// A pure single-mode Gaussian measurement seed, parameterized by a rotation
/// angle and log squeezing: `γ = R(θ) diag(λ/2, 1/(2λ)) R(θ)ᵀ` with
/// `λ = exp(ln_lambda)`. `ln_lambda = 0` is heterodyne; `|ln_lambda| → ∞`
/// approaches homodyne detection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianMeasurement {
    pub theta: f64,
    pub ln_lambda: f64,
}

impl GaussianMeasurement {
    /// Seed covariance of the measurement; `det γ = 1/4` always.
    pub fn seed_covariance(&self) -> Matrix2<f64> {
        let (s, c) = self.theta.sin_cos();
        let r = Matrix2::new(c, -s, s, c);
        let lam = self.ln_lambda.exp();
        r * Matrix2::new(lam * 0.5, 0.0, 0.0, 0.5 / lam) * r.transpose()
    }
}

/// Rényi-2 entropy of a single-mode covariance block.
pub fn renyi2_entropy_mode(block: &Matrix2<f64>) -> f64 {
    0.5 * block.determinant().ln() + std::f64::consts::LN_2
}

/// Rényi-2 entropy of a two-mode state: `½ ln det σ + 2 ln 2`; zero for
/// pure states.
pub fn renyi2_entropy(sigma: &CovarianceMatrix) -> f64 {
    0.5 * sigma.determinant().ln() + 2.0 * std::f64::consts::LN_2
}

fn ln_pi_e() -> f64 {
    (std::f64::consts::PI * std::f64::consts::E).ln()
}

/// Shannon entropy of the Wigner distribution, single mode:
/// `½ ln det σ + ln(πe)`. Exceeds the Rényi-2 entropy by exactly
/// `ln(πe/2)` per mode, which is why the two generate the same ordering
/// of correlation measures.
pub fn wigner_shannon_entropy_mode(block: &Matrix2<f64>) -> f64 {
    0.5 * block.determinant().ln() + ln_pi_e()
}

/// Shannon entropy of the two-mode Wigner distribution.
pub fn wigner_shannon_entropy(sigma: &CovarianceMatrix) -> f64 {
    0.5 * sigma.determinant().ln() + 2.0 * ln_pi_e()
}

/// Rényi-2 mutual information `𝓘 = ½ ln(det σ_a det σ_b / det σ_ab)`;
/// non-negative, zero exactly when the cross block vanishes.
pub fn mutual_information(sigma: &CovarianceMatrix) -> f64 {
    let inv = SymplecticInvariants::of(sigma);
    0.5 * (inv.i1 * inv.i2 / inv.i4).ln()
}

/// Minimum conditional determinant (times no prefactor) over Gaussian
/// measurements, from the invariant-form branch formulas.
fn e_min_closed_form(inv: &SymplecticInvariants) -> f64 {
    let SymplecticInvariants { i1, i2, i3, i4 } = *inv;
    let gamma_p = 1.0 + 4.0 * i2;
    let gamma_m = 1.0 - 4.0 * i2;
    let lambda_p = i1 * i2 + i3 * i3;
    let lambda_m = i1 * i2 - i3 * i3;

    let branch1 = || {
        let disc = (lambda_m * lambda_m - 2.0 * i4 * lambda_p + i4 * i4).max(0.0);
        ((i1 * i2 - i3 * i3 + i4) - disc.sqrt()) / (2.0 * i2)
    };
    let branch2 = || {
        let disc = (i1 - 4.0 * (gamma_m * i4 + lambda_m)).max(0.0);
        (i1 - 4.0 * i1 * i2
            + 4.0 * (2.0 * i3 * i3 - gamma_m * i4 + i3.abs() * disc.sqrt()))
            / (gamma_m * gamma_m)
    };

    // Branch 1 (optimal measurement is homodyne) applies when
    // Γ₊I₃²(I₁+4I₄) < 4(I₄−I₁I₂)²; branch 2 (general Gaussian POVM)
    // otherwise. Near the boundary the two coincide; take the min there.
    let lhs = gamma_p * i3 * i3 * (i1 + 4.0 * i4);
    let rhs = 4.0 * (i4 - i1 * i2) * (i4 - i1 * i2);
    let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
    if (lhs - rhs).abs() <= BRANCH_DEAD_ZONE * scale {
        branch1().min(branch2())
    } else if lhs < rhs {
        branch1()
    } else {
        branch2()
    }
}

fn oriented(sigma: &CovarianceMatrix, mode: MeasuredMode) -> CovarianceMatrix {
    match mode {
        MeasuredMode::B => *sigma,
        MeasuredMode::A => sigma.swap_modes(),
    }
}

/// Gaussian Rényi-2 discord from the closed-form branch expressions,
/// `𝓓 = ½ ln(I₂ E_min / I₄)`, with the measurement acting on `mode`.
pub fn discord_closed_form(sigma: &CovarianceMatrix, mode: MeasuredMode) -> f64 {
    let s = oriented(sigma, mode);
    let inv = SymplecticInvariants::of(&s);
    if inv.i3 == 0.0 {
        return 0.0;
    }
    0.5 * (inv.i2 * e_min_closed_form(&inv) / inv.i4).ln()
}

/// `½ ln det` of the conditional state of mode `a` after measuring `b`
/// with the given seed.
fn conditional_objective(sigma: &CovarianceMatrix, theta: f64, ln_lambda: f64) -> f64 {
    let u = ln_lambda.clamp(-LN_LAMBDA_LIMIT, LN_LAMBDA_LIMIT);
    let gamma = GaussianMeasurement { theta, ln_lambda: u }.seed_covariance();
    let c = sigma.cross_block();
    let inv = (sigma.block_b() + gamma)
        .try_inverse()
        .expect("σ_b + γ is positive definite for physical states");
    let cond = sigma.block_a() - c * inv * c.transpose();
    0.5 * cond.determinant().ln()
}

/// Same objective in the exact homodyne limit `λ → ∞`: the inverse
/// collapses onto the projector `p pᵀ/(pᵀ σ_b p)` with `p = (−sinθ, cosθ)`.
fn homodyne_objective(sigma: &CovarianceMatrix, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let p = nalgebra::Vector2::new(-s, c);
    let cb = sigma.cross_block();
    let denom = (p.transpose() * sigma.block_b() * p)[(0, 0)];
    let cond = sigma.block_a() - (cb * p) * (cb * p).transpose() / denom;
    0.5 * cond.determinant().ln()
}

/// Minimal Nelder-Mead on the 2-parameter measurement surface.
fn nelder_mead<F: Fn(f64, f64) -> f64>(f: &F, start: [f64; 2], scale: f64) -> ([f64; 2], f64) {
    let mut simplex = [
        start,
        [start[0] + scale, start[1]],
        [start[0], start[1] + scale],
    ];
    let mut vals = simplex.map(|p| f(p[0], p[1]));
    for _ in 0..200 {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
        let (best, mid, worst) = (idx[0], idx[1], idx[2]);
        if (vals[worst] - vals[best]).abs() < 1e-13 {
            break;
        }
        let centroid = [
            (simplex[best][0] + simplex[mid][0]) * 0.5,
            (simplex[best][1] + simplex[mid][1]) * 0.5,
        ];
        let reflect = [
            2.0 * centroid[0] - simplex[worst][0],
            2.0 * centroid[1] - simplex[worst][1],
        ];
        let fr = f(reflect[0], reflect[1]);
        if fr < vals[best] {
            let expand = [
                2.0 * reflect[0] - centroid[0],
                2.0 * reflect[1] - centroid[1],
            ];
            let fe = f(expand[0], expand[1]);
            if fe < fr {
                simplex[worst] = expand;
                vals[worst] = fe;
            } else {
                simplex[worst] = reflect;
                vals[worst] = fr;
            }
        } else if fr < vals[mid] {
            simplex[worst] = reflect;
            vals[worst] = fr;
        } else {
            let contract = [
                (centroid[0] + simplex[worst][0]) * 0.5,
                (centroid[1] + simplex[worst][1]) * 0.5,
            ];
            let fc = f(contract[0], contract[1]);
            if fc < vals[worst] {
                simplex[worst] = contract;
                vals[worst] = fc;
            } else {
                for i in [mid, worst] {
                    simplex[i] = [
                        (simplex[i][0] + simplex[best][0]) * 0.5,
                        (simplex[i][1] + simplex[best][1]) * 0.5,
                    ];
                    vals[i] = f(simplex[i][0], simplex[i][1]);
                }
            }
        }
    }
    let mut bi = 0;
    for i in 1..3 {
        if vals[i] < vals[bi] {
            bi = i;
        }
    }
    (simplex[bi], vals[bi])
}

/// Gaussian Rényi-2 discord by direct minimization over the measurement
/// family: a 64×64 grid over `(θ, ln λ)` seeds a Nelder-Mead refinement,
/// and the exact homodyne boundary is scanned separately so that
/// branch-1 optima are not limited by the `ln λ` clamp. Returns the
/// discord and the optimal measurement.
pub fn discord_numeric(
    sigma: &CovarianceMatrix,
    mode: MeasuredMode,
) -> Result<(f64, GaussianMeasurement)> {
    let s = oriented(sigma, mode);
    let inv = SymplecticInvariants::of(&s);
    if inv.i3 == 0.0 {
        return Ok((0.0, GaussianMeasurement { theta: 0.0, ln_lambda: 0.0 }));
    }

    let obj = |theta: f64, u: f64| conditional_objective(&s, theta, u);

    const GRID: usize = 64;
    let mut best = (f64::INFINITY, [0.0f64, 0.0f64]);
    for i in 0..GRID {
        let theta = std::f64::consts::PI * i as f64 / GRID as f64;
        for j in 0..GRID {
            let u = -LN_LAMBDA_LIMIT
                + 2.0 * LN_LAMBDA_LIMIT * j as f64 / (GRID - 1) as f64;
            let v = obj(theta, u);
            if v < best.0 {
                best = (v, [theta, u]);
            }
        }
    }
    let (point, mut fmin) = nelder_mead(&obj, best.1, 0.05);
    let mut argmin = GaussianMeasurement {
        theta: point[0],
        ln_lambda: point[1].clamp(-LN_LAMBDA_LIMIT, LN_LAMBDA_LIMIT),
    };
    if !fmin.is_finite() {
        return Err(Error::NonConvergence { best: fmin });
    }

    // Exact homodyne boundary: coarse θ scan plus golden-section refinement.
    const THETA_GRID: usize = 512;
    let h = std::f64::consts::PI / THETA_GRID as f64;
    let mut bh = (f64::INFINITY, 0.0f64);
    for i in 0..THETA_GRID {
        let theta = h * i as f64;
        let v = homodyne_objective(&s, theta);
        if v < bh.0 {
            bh = (v, theta);
        }
    }
    let (mut lo, mut hi) = (bh.1 - h, bh.1 + h);
    let phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let (mut x1, mut x2) = (hi - phi * (hi - lo), lo + phi * (hi - lo));
    let (mut f1, mut f2) = (homodyne_objective(&s, x1), homodyne_objective(&s, x2));
    for _ in 0..60 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = homodyne_objective(&s, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = homodyne_objective(&s, x2);
        }
    }
    let theta_h = 0.5 * (lo + hi);
    let fh = homodyne_objective(&s, theta_h);
    if fh < fmin {
        fmin = fh;
        argmin = GaussianMeasurement { theta: theta_h, ln_lambda: LN_LAMBDA_LIMIT };
    }

    let discord = 0.5 * inv.i2.ln() - 0.5 * inv.i4.ln() + fmin;
    Ok((discord, argmin))
}

/// One-way classical correlations `𝓙 = 𝓘 − 𝓓` with the measurement on
/// `mode`.
pub fn classical_correlations(sigma: &CovarianceMatrix, mode: MeasuredMode) -> f64 {
    mutual_information(sigma) - discord_closed_form(sigma, mode)
}

/// Logarithmic negativity `E_N = max(0, −ln 2ν̃₋)` where `ν̃₋` is the
/// smaller symplectic eigenvalue of the partial transpose.
pub fn log_negativity(sigma: &CovarianceMatrix) -> f64 {
    let inv = SymplecticInvariants::of(sigma);
    // Partial transposition flips the sign of I₃ only.
    let delta = inv.i1 + inv.i2 - 2.0 * inv.i3;
    let disc = (delta * delta - 4.0 * inv.i4).max(0.0).sqrt();
    let nu2 = ((delta - disc) * 0.5).max(0.0);
    (-(2.0 * nu2.sqrt()).ln()).max(0.0)
}

/// All correlation figures of merit of a two-mode state in one record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    pub mutual_info: f64,
    pub discord_a_given_b: f64,
    pub discord_b_given_a: f64,
    pub classical_j: f64,
    pub log_neg: f64,
    pub invariants: SymplecticInvariants,
}

impl CorrelationReport {
    pub fn of(sigma: &CovarianceMatrix) -> Self {
        let mutual_info = mutual_information(sigma);
        let discord_a_given_b = discord_closed_form(sigma, MeasuredMode::B);
        Self {
            mutual_info,
            discord_a_given_b,
            discord_b_given_a: discord_closed_form(sigma, MeasuredMode::A),
            classical_j: mutual_info - discord_a_given_b,
            log_neg: log_negativity(sigma),
            invariants: SymplecticInvariants::of(sigma),
        }
    }
}
