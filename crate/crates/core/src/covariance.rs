use nalgebra::{Matrix2, Matrix4, Vector4};

use crate::error::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-9;

/// 4×4 covariance matrix of a two-mode Gaussian state over the quadrature
/// ordering `(q_a, p_a, q_b, p_b)`, with entries
/// `σ_ij = ⟨{û_i, û_j}⟩/2 − ⟨û_i⟩⟨û_j⟩`.
///
/// Constructed values are symmetrized and checked for positive definiteness;
/// the physicality constraint (symplectic eigenvalues ≥ 1/2) is available
/// separately via [`CovarianceMatrix::is_physical`] since slightly
/// unphysical matrices legitimately appear as roundoff-level perturbations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix {
    entries: Matrix4<f64>,
}

impl CovarianceMatrix {
    pub fn new(entries: Matrix4<f64>) -> Result<Self> {
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonPhysical("non-finite entries".into()));
        }
        let asym = (entries - entries.transpose()).abs().max();
        let scale = entries.abs().max().max(1.0);
        if asym > SYMMETRY_TOL * scale {
            return Err(Error::NonPhysical(format!(
                "not symmetric (max asymmetry {asym:.3e})"
            )));
        }
        let sym = (entries + entries.transpose()) * 0.5;
        let m = Self { entries: sym };
        if !m.is_positive_definite() {
            return Err(Error::NonPhysical("not positive definite".into()));
        }
        Ok(m)
    }

    /// Bypasses validation; for internal use where symmetry and positivity
    /// hold by construction.
    pub(crate) fn from_matrix_unchecked(entries: Matrix4<f64>) -> Self {
        Self { entries }
    }

    /// Uncoupled thermal state `σ_eq = (N_a+1/2) 1_a ⊕ (N_b+1/2) 1_b`.
    pub fn thermal(n_a: f64, n_b: f64) -> Self {
        let va = n_a + 0.5;
        let vb = n_b + 0.5;
        Self { entries: Matrix4::from_diagonal(&Vector4::new(va, va, vb, vb)) }
    }

    pub fn vacuum() -> Self {
        Self::thermal(0.0, 0.0)
    }

    /// Pure two-mode squeezed vacuum with squeezing parameter `r`.
    pub fn two_mode_squeezed(r: f64) -> Self {
        let c = (2.0 * r).cosh() * 0.5;
        let s = (2.0 * r).sinh() * 0.5;
        Self {
            entries: Matrix4::new(
                c, 0.0, s, 0.0, //
                0.0, c, 0.0, -s, //
                s, 0.0, c, 0.0, //
                0.0, -s, 0.0, c,
            ),
        }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.entries
    }

    /// Reduced covariance of mode `a` (top-left block).
    pub fn block_a(&self) -> Matrix2<f64> {
        self.entries.fixed_view::<2, 2>(0, 0).into()
    }

    /// Reduced covariance of mode `b` (bottom-right block).
    pub fn block_b(&self) -> Matrix2<f64> {
        self.entries.fixed_view::<2, 2>(2, 2).into()
    }

    /// Cross-correlation block `c_ab` (top-right).
    pub fn cross_block(&self) -> Matrix2<f64> {
        self.entries.fixed_view::<2, 2>(0, 2).into()
    }

    /// The same state with the two modes exchanged.
    pub fn swap_modes(&self) -> Self {
        let mut m = Matrix4::zeros();
        let perm = [2usize, 3, 0, 1];
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = self.entries[(perm[i], perm[j])];
            }
        }
        Self { entries: m }
    }

    pub fn determinant(&self) -> f64 {
        self.entries.determinant()
    }

    fn is_positive_definite(&self) -> bool {
        self.entries.clone().cholesky().is_some()
    }

    /// Symplectic eigenvalues `ν_- ≤ ν_+`, computed from the symplectic
    /// invariants of the two-mode block form.
    pub fn symplectic_eigenvalues(&self) -> [f64; 2] {
        let i1 = self.block_a().determinant();
        let i2 = self.block_b().determinant();
        let i3 = self.cross_block().determinant();
        let i4 = self.determinant();
        let delta = i1 + i2 + 2.0 * i3;
        let disc = (delta * delta - 4.0 * i4).max(0.0).sqrt();
        let minus = ((delta - disc) * 0.5).max(0.0).sqrt();
        let plus = ((delta + disc) * 0.5).max(0.0).sqrt();
        [minus, plus]
    }

    /// True when all symplectic eigenvalues are at least `1/2 - tol`
    /// (Heisenberg / positivity of the density operator).
    pub fn is_physical(&self, tol: f64) -> bool {
        self.symplectic_eigenvalues()[0] >= 0.5 - tol
    }
}
