use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

/// Parameters of the single-vehicle route optimizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Maximum number of chained 2-opt moves in one LK-op sequence.
    pub alpha: usize,
    /// Candidate edges tried at each depth; the last entry applies to all
    /// deeper levels.
    pub beta: Vec<usize>,
    /// Constructions per greedy heuristic.
    pub n_it: usize,
    /// LK-op runs on a locally optimal route whose cost is below
    /// `lk_trigger` times the incumbent.
    pub lk_trigger: f64,
    /// Restricted candidate list length of the randomized construction.
    pub rcl_size: usize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            alpha: 20,
            beta: vec![5, 5, 5, 5, 1],
            n_it: 50,
            lk_trigger: 1.1,
            rcl_size: 10,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let at_least = |name, min: usize, value: usize| {
            if value < min {
                Err(ConfigError::TooSmall {
                    name,
                    min: min as f64,
                    value: value as f64,
                })
            } else {
                Ok(())
            }
        };
        at_least("alpha", 1, self.alpha)?;
        at_least("n_it", 1, self.n_it)?;
        at_least("rcl_size", 1, self.rcl_size)?;
        if self.beta.is_empty() {
            return Err(ConfigError::EmptyBeta);
        }
        for &b in &self.beta {
            at_least("beta", 1, b)?;
        }
        if self.lk_trigger.is_nan() || self.lk_trigger < 1.0 {
            return Err(ConfigError::TooSmall {
                name: "lk_trigger",
                min: 1.0,
                value: self.lk_trigger,
            });
        }
        Ok(())
    }

    /// Candidate count at 1-based `depth`.
    pub fn beta_at(&self, depth: usize) -> usize {
        let idx = depth.saturating_sub(1).min(self.beta.len() - 1);
        self.beta[idx]
    }

    pub fn max_beta(&self) -> usize {
        self.beta.iter().copied().max().unwrap_or(1)
    }
}
