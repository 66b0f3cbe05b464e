use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::dynamics::{BracketBudgetConfig, SweepOptions};
use crate::error::{Error, Result};
use crate::rational::parse_q;
use crate::tricurves::PunctureSet;

/// Input of the `sweep` command.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub matrix: String,
    /// Each entry is a list of periods `n`; the set is the union of `Fix(A^n)`.
    #[serde(default)]
    pub periods: Vec<Vec<u64>>,
    /// Explicit puncture sets as `"x,y"` points; they must be invariant.
    #[serde(default)]
    pub puncture_sets: Vec<Vec<String>>,
    #[serde(default = "default_k_max")]
    pub k_max: u64,
    #[serde(default)]
    pub budget: Option<BracketBudgetConfig>,
    #[serde(default)]
    pub width_tolerance: Option<String>,
    #[serde(default)]
    pub axis_m_max: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub seed: Option<u64>,
}

fn default_k_max() -> u64 {
    8
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<SweepConfig> {
        let c: SweepConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        if c.periods.is_empty() && c.puncture_sets.is_empty() {
            return Err(Error::Config("no period lists and no puncture sets".into()));
        }
        if c.periods.iter().any(|l| l.is_empty() || l.contains(&0)) {
            return Err(Error::Config("period lists must be nonempty and positive".into()));
        }
        if c.k_max == 0 {
            return Err(Error::Config("k_max must be positive".into()));
        }
        Ok(c)
    }

    pub fn options(&self) -> Result<SweepOptions> {
        let mut o = SweepOptions { k_max: self.k_max, axis_m_max: self.axis_m_max, ..SweepOptions::default() };
        if let Some(b) = &self.budget {
            o.budget = b.clone();
        }
        if let Some(w) = &self.width_tolerance {
            o.width_tolerance = parse_q(w).map_err(|e| Error::Config(e.to_string()))?;
        }
        Ok(o)
    }

    pub fn explicit_sets(&self) -> Result<Vec<PunctureSet>> {
        self.puncture_sets
            .iter()
            .map(|pts| PunctureSet::parse(&pts.join("\n")).map_err(|e| Error::Config(e.to_string())))
            .collect()
    }
}
