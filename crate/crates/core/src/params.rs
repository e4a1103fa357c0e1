use crate::error::{Error, Result};

/// Physical parameters of the two coupled oscillators and their local baths,
/// in units of the second oscillator's frequency (`omega_b = 1` after
/// rescaling).
///
/// `omega_a` may be negative: the optomechanical mapping identifies it with
/// an effective detuning that can be blue (negative).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    /// Frequency of oscillator `a` (units of `omega_b`).
    pub omega_a: f64,
    /// Linear coupling strength (units of `omega_b`).
    pub coupling: f64,
    /// Dissipation rate of oscillator `a` into its bath (> 0).
    pub kappa_a: f64,
    /// Dissipation rate of oscillator `b` into its bath (> 0).
    pub kappa_b: f64,
    /// Thermal occupation of bath `a` (>= 0, real-valued).
    pub n_a: f64,
    /// Thermal occupation of bath `b` (>= 0, real-valued).
    pub n_b: f64,
}

impl OscillatorParams {
    pub fn new(
        omega_a: f64,
        coupling: f64,
        kappa_a: f64,
        kappa_b: f64,
        n_a: f64,
        n_b: f64,
    ) -> Result<Self> {
        let p = Self { omega_a, coupling, kappa_a, kappa_b, n_a, n_b };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.omega_a, self.coupling, self.kappa_a, self.kappa_b, self.n_a, self.n_b];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("non-finite parameter".into()));
        }
        if self.kappa_a <= 0.0 || self.kappa_b <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "dissipation rates must be strictly positive (kappa_a = {}, kappa_b = {})",
                self.kappa_a, self.kappa_b
            )));
        }
        if self.n_a < 0.0 || self.n_b < 0.0 {
            return Err(Error::InvalidParams(format!(
                "bath occupations must be non-negative (n_a = {}, n_b = {})",
                self.n_a, self.n_b
            )));
        }
        Ok(())
    }

    /// Fixed to 1 by the rescaling convention.
    pub const fn omega_b(&self) -> f64 {
        1.0
    }

    pub fn kappa_tot(&self) -> f64 {
        self.kappa_a + self.kappa_b
    }
}
