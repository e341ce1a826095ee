//! Tolerance policy shared by rank decisions, residual checks, and
//! Löwner-order tests.

/// Numerical tolerances. All thresholds are relative to the scale of the
/// matrices they are applied to.
///
/// `rank_rel` of `None` resolves per matrix to `max(rows, cols) * eps`,
/// the usual safe cutoff relative to the largest singular value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Relative singular-value cutoff for numerical rank; `None` = automatic.
    pub rank_rel: Option<f64>,
    /// Relative residual threshold for inclusion and identity checks.
    pub residual_rel: f64,
    /// Relative eigenvalue floor for positive-semidefinite tests.
    pub psd_rel: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rank_rel: None,
            residual_rel: 1e-8,
            psd_rel: 1e-10,
        }
    }
}

impl ToleranceConfig {
    pub fn new(rank_rel: Option<f64>, residual_rel: f64, psd_rel: f64) -> Self {
        assert!(
            rank_rel.is_none_or(|x| x >= 0.0),
            "rank_rel must be nonnegative"
        );
        assert!(residual_rel >= 0.0, "residual_rel must be nonnegative");
        assert!(psd_rel >= 0.0, "psd_rel must be nonnegative");
        Self {
            rank_rel,
            residual_rel,
            psd_rel,
        }
    }

    /// Rank cutoff factor for a matrix of the given shape. Multiplied by the
    /// largest singular value before comparing.
    pub fn rank_cutoff(&self, rows: usize, cols: usize) -> f64 {
        self.rank_rel
            .unwrap_or(rows.max(cols) as f64 * f64::EPSILON)
    }

    /// Residual threshold scaled to the magnitude of the operand.
    pub fn residual_threshold(&self, scale: f64) -> f64 {
        self.residual_rel * (1.0 + scale)
    }

    /// Threshold for deciding equality of two orthogonal projectors of the
    /// given ambient dimension, via Frobenius distance.
    pub fn projector_threshold(&self, dim: usize) -> f64 {
        self.residual_rel * dim as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_rank_cutoff_scales_with_shape() {
        let tol = ToleranceConfig::default();
        assert_eq!(tol.rank_cutoff(4, 7), 7.0 * f64::EPSILON);
        let fixed = ToleranceConfig::new(Some(1e-6), 1e-8, 1e-10);
        assert_eq!(fixed.rank_cutoff(4, 7), 1e-6);
    }
}
