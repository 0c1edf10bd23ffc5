//! Deterministic planner and benchmark harness for placing wireless charging
//! PADs in UAV-serviced rechargeable sensor networks.
//!
//! A single UAV recharges ground sensor nodes and must itself land on
//! charging stations (the base station or deployed PADs) to refill its
//! battery. A deployment is feasible when every node lies within the UAV's
//! charging radius `d_cover` of some station and the station graph with
//! edges up to the flight range `d_max` is connected. The planner minimizes
//! the number of PADs under those two constraints.
//!
//! Modules:
//! - [`geometry`]: planar primitives (distance, circumcircle, minimum
//!   enclosing circle).
//! - [`energy`]: UAV consumption model yielding `d_cover` and `d_max`.
//! - [`scenario`]: seeded scenario generators and the scenario file format.
//! - [`verify`]: independent coverage/connectivity checker used as referee.
//! - [`cdc`]: phase 1 — clustering plus coverage and connectivity repair.
//! - [`dsc`]: phase 2 — prune, shift, and merge refinement.
//! - [`baseline_dc`]: grid-cell baseline for comparisons.
//! - [`harness`]: seeded parameter sweeps, CSV and SVG emission.

pub mod baseline_dc;
pub mod cdc;
pub mod dsc;
pub mod energy;
pub mod geometry;
pub mod harness;
pub mod scenario;
pub mod seeding;
pub mod verify;

pub use baseline_dc::CellGrid;
pub use cdc::{CdcConfig, ClusterModel, IsolationStats};
pub use dsc::{DscConfig, MergeStrategy, ShiftConfig};
pub use energy::{EnergyError, FlightEnergy, UavParams};
pub use geometry::{Circle, GeometryError, Point};
pub use harness::{Algorithm, SolverConfig, SweepReport, SweepSpec};
pub use scenario::{BsMode, Scenario, ScenarioError};
pub use verify::{CoverageIndex, Deployment, VerifyError};
