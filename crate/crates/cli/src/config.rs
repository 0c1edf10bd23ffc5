//! Layered configuration: built-in defaults, then an optional JSON config
//! file, then CLI flags. `defaults.json` at the repository root mirrors
//! the built-ins.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use padplan_core::harness::SolverConfig;
use padplan_core::UavParams;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepDefaults {
    pub region_side: f64,
    pub node_count: usize,
    pub trials: usize,
}

impl Default for SweepDefaults {
    fn default() -> Self {
        Self {
            region_side: 16_000.0,
            node_count: 200,
            trials: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub uav: UavParams,
    pub solver: SolverConfig,
    pub sweep: SweepDefaults,
    /// Free-form commentary carried by config files (e.g. which values are
    /// calibration rather than measurements). Ignored by the tools.
    pub notes: Vec<String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let raw = fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        let cfg: Config = serde_json::from_str(&raw)
            .with_context(|| format!("bad config file {}", path.display()))?;
        cfg.uav
            .validate()
            .with_context(|| format!("invalid uav section in {}", path.display()))?;
        Ok(cfg)
    }

    pub fn load_or_default(path: Option<&Path>) -> Result<Self> {
        match path {
            Some(p) => Self::load(p),
            None => Ok(Self::default()),
        }
    }
}
