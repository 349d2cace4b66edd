//! Instance generation parameters shared by all suites.

use serde::Serialize;

/// Weighting of generated measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    Uniform,
    Random,
}

/// Configuration of a suite run. Matrix suites draw a per-trial dimension
/// from `2..=max_dim` (symplectic suites draw a half-dimension from
/// `1..=max_dim`), and measure suites draw the atom count from
/// `1..=max_atoms`, so the configured values bound the instance sizes.
#[derive(Debug, Clone, Serialize)]
pub struct InstanceConfig {
    pub trials: usize,
    /// Dimension bound (half-dimension bound for symplectic suites).
    pub max_dim: usize,
    /// Atom-count bound for measure suites.
    pub max_atoms: usize,
    /// Number of measures for the multi-measure suites.
    pub measures: usize,
    /// Support-size bound per measure for the multi-measure suites.
    pub max_support: usize,
    /// Power-map exponents used by the majorization chains.
    pub r_grid: Vec<f64>,
    pub weight_mode: WeightMode,
    /// Condition-number cap of generated SPD matrices.
    pub cond_cap: f64,
    pub seed: u64,
    /// Overrides the suite's default tolerance when set.
    pub tol: Option<f64>,
    /// Attach serialized instances to trial outcomes.
    #[serde(skip)]
    pub emit_instances: bool,
}

impl Default for InstanceConfig {
    fn default() -> Self {
        InstanceConfig {
            trials: 100,
            max_dim: 4,
            max_atoms: 3,
            measures: 2,
            max_support: 2,
            r_grid: vec![0.25, 0.5, 0.75],
            weight_mode: WeightMode::Random,
            cond_cap: 1e4,
            seed: 7,
            tol: None,
            emit_instances: false,
        }
    }
}

impl InstanceConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.trials == 0 {
            return Err("trials must be positive".into());
        }
        if self.max_dim == 0 || self.max_atoms == 0 || self.measures == 0 || self.max_support == 0
        {
            return Err("dimensions, atom counts and measure counts must be positive".into());
        }
        if self.cond_cap < 1.0 {
            return Err("condition cap must be >= 1".into());
        }
        if self.r_grid.is_empty() || self.r_grid.iter().any(|&r| !(r > 0.0 && r <= 1.0)) {
            return Err("r grid entries must lie in (0, 1]".into());
        }
        if let Some(tol) = self.tol {
            if tol <= 0.0 || !tol.is_finite() {
                return Err("tolerance must be positive".into());
            }
        }
        Ok(())
    }
}
