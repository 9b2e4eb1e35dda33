//! Numerical tolerances and grid sizes shared by every module.

use serde::{Deserialize, Serialize};

/// Tolerances, grid resolutions and the classification band.
///
/// `undetermined_band` is the half-width around zero inside which a margin is
/// considered borderline; verdicts there are reported as closure/undetermined
/// rather than guessed.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct ToleranceConfig {
    /// Admissible pairwise commutator norm for operator families.
    pub commute_tol: f64,
    /// Admissible residual for algebraic identities (isometry, normality, ...).
    pub residual_tol: f64,
    /// Threshold for clamping eigenvalues / deciding numerical ranks.
    pub rank_tol: f64,
    /// Angular resolution of one-dimensional torus sweeps.
    pub grid_1d: usize,
    /// Per-axis angular resolution of two-dimensional torus sweeps.
    pub grid_2d: usize,
    /// Golden-section steps used to polish grid extrema.
    pub refine_iters: usize,
    /// Margin half-width for borderline membership verdicts.
    pub undetermined_band: f64,
    /// Seed for the internal degeneracy-breaking combinations.
    pub seed: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            commute_tol: 1e-8,
            residual_tol: 1e-8,
            rank_tol: 1e-8,
            grid_1d: 512,
            grid_2d: 128,
            refine_iters: 48,
            undetermined_band: 1e-6,
            seed: 0x5eed,
        }
    }
}

impl ToleranceConfig {
    /// Validates the invariants the rest of the crate relies on.
    pub fn validate(&self) -> crate::Result<()> {
        if self.commute_tol <= 0.0 || self.residual_tol <= 0.0 || self.rank_tol <= 0.0 {
            return Err(crate::Error::InvalidInput(
                "tolerances must be positive".into(),
            ));
        }
        if self.grid_1d < 8 || self.grid_2d < 8 {
            return Err(crate::Error::InvalidInput(
                "grid sizes must be at least 8".into(),
            ));
        }
        if self.undetermined_band < self.residual_tol {
            return Err(crate::Error::InvalidInput(
                "undetermined_band must be at least residual_tol".into(),
            ));
        }
        Ok(())
    }
}
