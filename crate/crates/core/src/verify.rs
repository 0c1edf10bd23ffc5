//! Independent checker for the two deployment constraints.
//!
//! Everything the solvers produce is re-checked here: coverage (every node
//! within `d_cover` of some station) and connectivity (the station graph
//! with edges up to `d_max` is connected, so the UAV can hop from the BS
//! to every disk). The checks are the referee for the whole test suite, so
//! they stay simple: brute-force distance scans and union-find.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{dist_sq, Point};
use crate::scenario::Scenario;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("the base station (station 0) is never removable")]
    BsNotRemovable,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("deployment parse error: {0}")]
    Parse(String),
}

/// Relative tolerance applied to squared radii in boundary comparisons.
///
/// Both constraints are boundary-inclusive. Relays are placed at exactly
/// `d_max` from their anchor, so an exact `<=` on recomputed coordinates
/// would flip on the last floating-point bit; this slack (about 3e-9 m at
/// the scales used here, far below every stated tolerance) makes the
/// inclusive boundary robust without affecting any real decision.
pub const RADIUS_REL_TOL: f64 = 1e-12;

/// Boundary-inclusive disk test on squared distances.
pub fn within_radius_sq(d_sq: f64, radius: f64) -> bool {
    d_sq <= radius * radius * (1.0 + RADIUS_REL_TOL)
}

/// An ordered list of charging stations; index 0 is the base station.
///
/// Serialized as `{"d_cover": .., "d_max": .., "stations": [[x,y], ..]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Deployment {
    pub d_cover: f64,
    pub d_max: f64,
    pub stations: Vec<Point>,
}

impl Deployment {
    pub fn new(bs: Point, pads: Vec<Point>, d_cover: f64, d_max: f64) -> Self {
        let mut stations = Vec::with_capacity(pads.len() + 1);
        stations.push(bs);
        stations.extend(pads);
        let dep = Self {
            d_cover,
            d_max,
            stations,
        };
        debug_assert!(dep.validate().is_ok());
        dep
    }

    pub fn bs(&self) -> Point {
        self.stations[0]
    }

    /// Number of deployed PADs (the BS does not count).
    pub fn pad_count(&self) -> usize {
        self.stations.len() - 1
    }

    pub fn validate(&self) -> Result<(), VerifyError> {
        if self.stations.is_empty() {
            return Err(VerifyError::Parse(
                "field `stations` must be non-empty".into(),
            ));
        }
        if !(self.d_cover > 0.0 && self.d_max > 0.0) {
            return Err(VerifyError::Parse(format!(
                "radii must be positive, got d_cover {} and d_max {}",
                self.d_cover, self.d_max
            )));
        }
        if self.d_cover >= self.d_max / 2.0 {
            return Err(VerifyError::Parse(format!(
                "d_cover {} must be below half of d_max {}",
                self.d_cover, self.d_max
            )));
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<(), VerifyError> {
        let json = serde_json::to_string_pretty(self).expect("deployment serializes");
        fs::write(path, json)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, VerifyError> {
        let raw = fs::read_to_string(path)?;
        let dep: Deployment =
            serde_json::from_str(&raw).map_err(|e| VerifyError::Parse(e.to_string()))?;
        dep.validate()?;
        Ok(dep)
    }
}

/// Who covers whom, both directions.
#[derive(Debug, Clone)]
pub struct CoverageIndex {
    /// Station id -> ids of nodes inside its disk.
    pub covers: Vec<Vec<usize>>,
    /// Node id -> ids of stations whose disk contains it.
    pub covered_by: Vec<Vec<usize>>,
}

/// Exact coverage index: node `i` is covered by station `j` iff their
/// distance is at most `d_cover` (boundary inclusive).
pub fn covered_set(dep: &Deployment, scenario: &Scenario) -> CoverageIndex {
    let mut covers = vec![Vec::new(); dep.stations.len()];
    let mut covered_by = vec![Vec::new(); scenario.nodes.len()];
    for (j, &station) in dep.stations.iter().enumerate() {
        for (i, &node) in scenario.nodes.iter().enumerate() {
            if within_radius_sq(dist_sq(station, node), dep.d_cover) {
                covers[j].push(i);
                covered_by[i].push(j);
            }
        }
    }
    CoverageIndex { covers, covered_by }
}

/// Ids of nodes not covered by any station; empty means the coverage
/// constraint holds.
pub fn check_coverage(dep: &Deployment, scenario: &Scenario) -> Vec<usize> {
    scenario
        .nodes
        .iter()
        .enumerate()
        .filter(|(_, &node)| {
            !dep.stations
                .iter()
                .any(|&s| within_radius_sq(dist_sq(s, node), dep.d_cover))
        })
        .map(|(i, _)| i)
        .collect()
}

/// Ids of stations unreachable from the BS in the graph whose edges join
/// stations at most `d_max` apart; empty means the connectivity
/// constraint holds.
pub fn check_connectivity(dep: &Deployment) -> Vec<usize> {
    let n = dep.stations.len();
    let mut dsu = DisjointSet::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if within_radius_sq(dist_sq(dep.stations[i], dep.stations[j]), dep.d_max) {
                dsu.union(i, j);
            }
        }
    }
    let bs_root = dsu.find(0);
    (0..n).filter(|&i| dsu.find(i) != bs_root).collect()
}

/// Connectivity predicate over a raw station list, optionally with one
/// station removed. Used by the optimizer to evaluate tentative edits
/// without building throwaway deployments.
pub(crate) fn stations_connected(stations: &[Point], skip: Option<usize>, d_max: f64) -> bool {
    let ids: Vec<usize> = (0..stations.len()).filter(|&i| Some(i) != skip).collect();
    if ids.is_empty() {
        return true;
    }
    let mut dsu = DisjointSet::new(ids.len());
    for a in 0..ids.len() {
        for b in (a + 1)..ids.len() {
            if within_radius_sq(dist_sq(stations[ids[a]], stations[ids[b]]), d_max) {
                dsu.union(a, b);
            }
        }
    }
    let root = dsu.find(0);
    (1..ids.len()).all(|i| dsu.find(i) == root)
}

/// Nodes covered by station `station_id` and by no other station.
pub fn effect_set(dep: &Deployment, scenario: &Scenario, station_id: usize) -> Vec<usize> {
    assert!(station_id < dep.stations.len());
    let index = covered_set(dep, scenario);
    index.covers[station_id]
        .iter()
        .copied()
        .filter(|&node| index.covered_by[node].len() == 1)
        .collect()
}

/// Nodes not covered by any station other than `i` and `j` (which must be
/// distinct non-BS stations). Note this is the literal complement of the
/// other stations' coverage, so on a coverage-feasible deployment it
/// equals the set covered exclusively by `i` and/or `j`.
pub fn pair_exclusive_set(dep: &Deployment, scenario: &Scenario, i: usize, j: usize) -> Vec<usize> {
    assert!(i != j && i != 0 && j != 0);
    assert!(i < dep.stations.len() && j < dep.stations.len());
    scenario
        .nodes
        .iter()
        .enumerate()
        .filter(|(_, &node)| {
            !dep.stations
                .iter()
                .enumerate()
                .any(|(k, &s)| k != i && k != j && within_radius_sq(dist_sq(s, node), dep.d_cover))
        })
        .map(|(idx, _)| idx)
        .collect()
}

/// Whether the deployment still satisfies both constraints after removing
/// the given (non-BS) station.
pub fn is_redundant(
    dep: &Deployment,
    scenario: &Scenario,
    station_id: usize,
) -> Result<bool, VerifyError> {
    if station_id == 0 {
        return Err(VerifyError::BsNotRemovable);
    }
    assert!(station_id < dep.stations.len());
    let mut reduced = dep.clone();
    reduced.stations.remove(station_id);
    Ok(check_coverage(&reduced, scenario).is_empty() && check_connectivity(&reduced).is_empty())
}

/// Full verification result, as consumed by the CLI and the harness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub uncovered_nodes: Vec<usize>,
    pub disconnected_stations: Vec<usize>,
    pub bs_mismatch: bool,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        self.uncovered_nodes.is_empty()
            && self.disconnected_stations.is_empty()
            && !self.bs_mismatch
    }
}

/// Run both constraint checks plus the BS-identity check against a
/// scenario.
pub fn verify_deployment(dep: &Deployment, scenario: &Scenario) -> VerificationReport {
    VerificationReport {
        uncovered_nodes: check_coverage(dep, scenario),
        disconnected_stations: check_connectivity(dep),
        bs_mismatch: dep.bs() != scenario.bs,
    }
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
