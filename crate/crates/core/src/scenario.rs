//! Scenario generation and the scenario file format.
//!
//! A scenario is a square monitoring region, a set of sensor nodes inside
//! it, and a base station that may sit outside it. Generators are pure
//! functions of their arguments and seed; see [`crate::seeding`] for the
//! stream layout.

use std::fs;
use std::path::Path;

use rand::Rng;
use rand_distr::{Distribution as _, Normal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{dist, Point};
use crate::seeding::substream;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    /// Malformed or invariant-violating scenario file.
    #[error("scenario parse error: {0}")]
    Parse(String),
}

/// Base station placement mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BsMode {
    /// BS at the region center, surrounded by nodes.
    Center,
    /// BS outside the region, at 1.25x the side along the diagonal.
    Isolated,
}

impl BsMode {
    pub fn name(self) -> &'static str {
        match self {
            BsMode::Center => "center",
            BsMode::Isolated => "isolated",
        }
    }

    /// BS location for a square region of the given side.
    pub fn bs_location(self, region_side: f64) -> Point {
        match self {
            BsMode::Center => Point::new(region_side / 2.0, region_side / 2.0),
            BsMode::Isolated => Point::new(1.25 * region_side, 1.25 * region_side),
        }
    }
}

/// A generated or loaded network instance.
///
/// Serialized as `{"region_side": .., "seed": .., "bs": [x,y],
/// "nodes": [[x,y], ..]}` with coordinates in decimal meters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub region_side: f64,
    pub seed: u64,
    pub bs: Point,
    pub nodes: Vec<Point>,
}

// Substream indices; group g of a mixture draws from NODE_GROUP_BASE + g.
const STREAM_NODES: u64 = 0;
const STREAM_MIXTURE_META: u64 = 1;
const STREAM_NODE_GROUP_BASE: u64 = 2;

/// `n` i.i.d. uniform nodes in the square `[0, region_side]^2`.
pub fn gen_uniform(n: usize, region_side: f64, bs_mode: BsMode, seed: u64) -> Scenario {
    assert!(n >= 1, "a scenario needs at least one node");
    assert!(region_side > 0.0);
    let mut rng = substream(seed, STREAM_NODES);
    let nodes = (0..n)
        .map(|_| {
            Point::new(
                rng.random_range(0.0..region_side),
                rng.random_range(0.0..region_side),
            )
        })
        .collect();
    Scenario {
        region_side,
        seed,
        bs: bs_mode.bs_location(region_side),
        nodes,
    }
}

/// Gaussian-mixture nodes: each group gets a mean drawn uniformly in the
/// region and an isotropic standard deviation drawn uniformly from
/// `[side/20, side/8]`; samples falling outside the region are redrawn.
/// Group sizes are `n / groups`, remainder assigned to the last group.
pub fn gen_gaussian_mixture(
    n: usize,
    region_side: f64,
    groups: usize,
    bs_mode: BsMode,
    seed: u64,
) -> Scenario {
    assert!(n >= 1 && groups >= 1);
    assert!(region_side > 0.0);
    let mut meta = substream(seed, STREAM_MIXTURE_META);
    let params: Vec<(Point, f64)> = (0..groups)
        .map(|_| {
            let mean = Point::new(
                meta.random_range(0.0..region_side),
                meta.random_range(0.0..region_side),
            );
            let sigma = meta.random_range(region_side / 20.0..region_side / 8.0);
            (mean, sigma)
        })
        .collect();

    let base = n / groups;
    let mut nodes = Vec::with_capacity(n);
    for (g, &(mean, sigma)) in params.iter().enumerate() {
        let count = if g + 1 == groups { n - base * g } else { base };
        let mut rng = substream(seed, STREAM_NODE_GROUP_BASE + g as u64);
        let dist_x = Normal::new(mean.x, sigma).expect("sigma is positive");
        let dist_y = Normal::new(mean.y, sigma).expect("sigma is positive");
        for _ in 0..count {
            loop {
                let x = dist_x.sample(&mut rng);
                let y = dist_y.sample(&mut rng);
                if (0.0..=region_side).contains(&x) && (0.0..=region_side).contains(&y) {
                    nodes.push(Point::new(x, y));
                    break;
                }
            }
        }
    }
    Scenario {
        region_side,
        seed,
        bs: bs_mode.bs_location(region_side),
        nodes,
    }
}

impl Scenario {
    fn validate(&self) -> Result<(), ScenarioError> {
        if !(self.region_side.is_finite() && self.region_side > 0.0) {
            return Err(ScenarioError::Parse(format!(
                "field `region_side` must be positive, got {}",
                self.region_side
            )));
        }
        if self.nodes.is_empty() {
            return Err(ScenarioError::Parse(
                "field `nodes` must be non-empty".into(),
            ));
        }
        for (i, p) in self.nodes.iter().enumerate() {
            let inside =
                (0.0..=self.region_side).contains(&p.x) && (0.0..=self.region_side).contains(&p.y);
            if !inside {
                return Err(ScenarioError::Parse(format!(
                    "node {i} at [{}, {}] lies outside the region [0, {}]^2",
                    p.x, p.y, self.region_side
                )));
            }
        }
        Ok(())
    }

    /// Distance from the BS to its nearest node. `None` would be
    /// impossible since nodes are non-empty.
    pub fn min_bs_node_dist(&self) -> f64 {
        self.nodes
            .iter()
            .map(|&p| dist(self.bs, p))
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn save_scenario(scenario: &Scenario, path: &Path) -> Result<(), ScenarioError> {
    let json = serde_json::to_string_pretty(scenario).expect("scenario serializes");
    fs::write(path, json)?;
    Ok(())
}

pub fn load_scenario(path: &Path) -> Result<Scenario, ScenarioError> {
    let raw = fs::read_to_string(path)?;
    let scenario: Scenario =
        serde_json::from_str(&raw).map_err(|e| ScenarioError::Parse(e.to_string()))?;
    scenario.validate()?;
    Ok(scenario)
}
