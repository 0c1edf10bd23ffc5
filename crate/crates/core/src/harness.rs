//! Seeded experiment sweeps.
//!
//! A sweep varies one parameter (region side, node count, or battery
//! capacity) over a list of values, runs each configured algorithm on
//! matched scenarios for a number of trials, re-checks every output with
//! the independent verifier, and emits a canonically sorted CSV plus
//! optional SVG charts. Reruns of the same spec produce byte-identical
//! CSVs; per-cell wall time is captured only on request since it is the
//! one non-reproducible column.

use std::fs;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::baseline_dc::dc_solve;
use crate::cdc::{cdc_solve, CdcConfig};
use crate::dsc::{dsc_optimize, DscConfig, MergeStrategy};
use crate::energy::{EnergyError, UavParams};
use crate::scenario::{gen_gaussian_mixture, gen_uniform, BsMode, Scenario};
use crate::seeding::cell_seed;
use crate::verify::{verify_deployment, Deployment};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("sweep config error: {0}")]
    Config(String),
    #[error(transparent)]
    Energy(#[from] EnergyError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Solver knobs shared by the CLI and the harness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub alpha: f64,
    pub d_delta: f64,
    pub kmeans_max_iters: usize,
    pub kmeans_tol: f64,
    pub merge_strategy: MergeStrategy,
    pub combine_until_fixed_point: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            alpha: 0.3,
            d_delta: 30.0,
            kmeans_max_iters: 100,
            kmeans_tol: 1e-6,
            merge_strategy: MergeStrategy::Mec,
            combine_until_fixed_point: false,
        }
    }
}

impl SolverConfig {
    pub fn cdc(&self) -> CdcConfig {
        CdcConfig {
            alpha: self.alpha,
            kmeans_max_iters: self.kmeans_max_iters,
            kmeans_tol: self.kmeans_tol,
        }
    }

    pub fn dsc(&self) -> DscConfig {
        DscConfig {
            d_delta: self.d_delta,
            merge_strategy: self.merge_strategy,
            combine_until_fixed_point: self.combine_until_fixed_point,
        }
    }
}

/// Deployment algorithms runnable in a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "cdc")]
    Cdc,
    #[serde(rename = "cdc-dsc")]
    CdcDsc,
    #[serde(rename = "dc")]
    Dc,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Cdc => "cdc",
            Algorithm::CdcDsc => "cdc-dsc",
            Algorithm::Dc => "dc",
        }
    }

    pub fn parse(name: &str) -> Result<Self, HarnessError> {
        match name {
            "cdc" => Ok(Algorithm::Cdc),
            "cdc-dsc" => Ok(Algorithm::CdcDsc),
            "dc" => Ok(Algorithm::Dc),
            other => Err(HarnessError::Config(format!(
                "unknown algorithm `{other}` (expected cdc, cdc-dsc, or dc)"
            ))),
        }
    }

    pub fn run(
        self,
        scenario: &Scenario,
        params: &UavParams,
        cfg: &SolverConfig,
    ) -> Result<Deployment, EnergyError> {
        match self {
            Algorithm::Cdc => cdc_solve(scenario, params, &cfg.cdc()),
            Algorithm::CdcDsc => {
                let initial = cdc_solve(scenario, params, &cfg.cdc())?;
                Ok(dsc_optimize(&initial, scenario, &cfg.dsc()))
            }
            Algorithm::Dc => dc_solve(scenario, params),
        }
    }
}

/// Node placement model for generated scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distribution {
    Uniform,
    /// Three-group Gaussian mixture.
    Gaussian3,
}

/// Which parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweptParameter {
    RegionSide,
    NodeCount,
    EMax,
}

impl SweptParameter {
    pub fn label(self) -> &'static str {
        match self {
            SweptParameter::RegionSide => "region side (m)",
            SweptParameter::NodeCount => "node count",
            SweptParameter::EMax => "battery capacity (J)",
        }
    }
}

fn default_trials() -> usize {
    10
}

/// Declarative sweep description; the JSON spec file mirrors these fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub swept_parameter: SweptParameter,
    pub values: Vec<f64>,
    pub distribution: Distribution,
    pub bs_mode: BsMode,
    pub algorithms: Vec<Algorithm>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub base_seed: u64,
    /// Fixed node count when `node_count` is not the swept parameter.
    #[serde(default)]
    pub node_count: Option<usize>,
    /// Fixed region side when `region_side` is not the swept parameter.
    #[serde(default)]
    pub region_side: Option<f64>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.values.is_empty() {
            return Err(HarnessError::Config("`values` must be non-empty".into()));
        }
        if self.algorithms.is_empty() {
            return Err(HarnessError::Config(
                "`algorithms` must be non-empty".into(),
            ));
        }
        if self.trials < 1 {
            return Err(HarnessError::Config("`trials` must be at least 1".into()));
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let raw = fs::read_to_string(path)?;
        let spec: SweepSpec = serde_json::from_str(&raw)
            .map_err(|e| HarnessError::Config(format!("bad sweep spec: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }
}

/// One solver run inside a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    pub algorithm: Algorithm,
    pub bs_mode: BsMode,
    /// Derived scenario seed; feed it to `generate --seed` to reproduce
    /// this cell in isolation.
    pub seed: u64,
    pub pads: usize,
    /// Zero unless timing capture was requested; timing is excluded from
    /// the reproducibility contract.
    pub wall_ms: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
    /// Verifier rejections; always empty unless a solver is broken.
    pub failures: Vec<String>,
}

/// Mean/min/max pads per (param, algorithm, bs_mode) cell group.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub param: f64,
    pub algorithm: Algorithm,
    pub bs_mode: BsMode,
    pub mean_pads: f64,
    pub min_pads: usize,
    pub max_pads: usize,
}

fn canonical_order(a: &SweepRow, b: &SweepRow) -> std::cmp::Ordering {
    a.param
        .total_cmp(&b.param)
        .then_with(|| a.algorithm.name().cmp(b.algorithm.name()))
        .then_with(|| a.bs_mode.name().cmp(b.bs_mode.name()))
        .then_with(|| a.seed.cmp(&b.seed))
}

/// Run every (value, trial, algorithm) cell of the spec.
///
/// Scenario seeds derive from `(base_seed, value, trial)` only, so all
/// algorithms of a cell see the same scenario and matched-seed pairing
/// across BS modes is exact. Every deployment is re-checked with the
/// independent verifier before its row is recorded.
pub fn run_sweep(
    spec: &SweepSpec,
    params_base: &UavParams,
    solver: &SolverConfig,
    timing: bool,
) -> Result<SweepReport, HarnessError> {
    spec.validate()?;
    let mut rows = Vec::new();
    let mut failures = Vec::new();

    for &value in &spec.values {
        let mut params = *params_base;
        let mut side = spec.region_side.unwrap_or(16_000.0);
        let mut n = spec.node_count.unwrap_or(200);
        match spec.swept_parameter {
            SweptParameter::RegionSide => side = value,
            SweptParameter::NodeCount => {
                n = value.round() as usize;
                if n < 1 {
                    return Err(HarnessError::Config(format!(
                        "node count value {value} is below 1"
                    )));
                }
            }
            SweptParameter::EMax => params.e_max = value,
        }
        params
            .validate()
            .map_err(|e| HarnessError::Config(format!("at value {value}: {e}")))?;

        for trial in 0..spec.trials {
            let seed = cell_seed(spec.base_seed, value, trial as u64);
            let scenario = match spec.distribution {
                Distribution::Uniform => gen_uniform(n, side, spec.bs_mode, seed),
                Distribution::Gaussian3 => gen_gaussian_mixture(n, side, 3, spec.bs_mode, seed),
            };
            if spec.bs_mode == BsMode::Isolated {
                let nearest = scenario.min_bs_node_dist();
                if nearest <= params.d_max() {
                    log::warn!(
                        "isolated BS property violated: nearest node at {:.1} m <= d_max {:.1} m (value {}, trial {})",
                        nearest,
                        params.d_max(),
                        value,
                        trial
                    );
                }
            }

            for &algorithm in &spec.algorithms {
                let started = Instant::now();
                let dep = algorithm.run(&scenario, &params, solver)?;
                let wall_ms = if timing {
                    started.elapsed().as_millis() as u64
                } else {
                    0
                };
                let report = verify_deployment(&dep, &scenario);
                if !report.is_ok() {
                    failures.push(format!(
                        "{} failed verification at value {value} seed {seed}: {report:?}",
                        algorithm.name()
                    ));
                    continue;
                }
                rows.push(SweepRow {
                    param: value,
                    algorithm,
                    bs_mode: spec.bs_mode,
                    seed,
                    pads: dep.pad_count(),
                    wall_ms,
                });
            }
        }
    }

    rows.sort_by(canonical_order);
    Ok(SweepReport {
        spec: spec.clone(),
        rows,
        failures,
    })
}

impl SweepReport {
    /// Group rows by (param, algorithm, bs_mode) in canonical order.
    pub fn aggregate(&self) -> Vec<AggregateRow> {
        aggregate_rows(&self.rows)
    }
}

pub fn aggregate_rows(rows: &[SweepRow]) -> Vec<AggregateRow> {
    let mut sorted: Vec<SweepRow> = rows.to_vec();
    sorted.sort_by(canonical_order);
    let mut out: Vec<AggregateRow> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for row in sorted {
        let same_group = out.last().is_some_and(|a: &AggregateRow| {
            a.param == row.param && a.algorithm == row.algorithm && a.bs_mode == row.bs_mode
        });
        if !same_group {
            out.push(AggregateRow {
                param: row.param,
                algorithm: row.algorithm,
                bs_mode: row.bs_mode,
                mean_pads: 0.0,
                min_pads: usize::MAX,
                max_pads: 0,
            });
            counts.push(0);
        }
        let agg = out.last_mut().expect("just pushed");
        agg.min_pads = agg.min_pads.min(row.pads);
        agg.max_pads = agg.max_pads.max(row.pads);
        // Sum for now; normalized to the mean below.
        agg.mean_pads += row.pads as f64;
        *counts.last_mut().expect("just pushed") += 1;
    }
    for (agg, c) in out.iter_mut().zip(counts) {
        agg.mean_pads /= c as f64;
    }
    out
}

pub const CSV_HEADER: &str = "param,algorithm,bs_mode,seed,pads,wall_ms";

/// Canonical CSV: header plus one row per run, sorted by
/// (param, algorithm, bs_mode, seed).
pub fn csv_string(report: &SweepReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.param,
            row.algorithm.name(),
            row.bs_mode.name(),
            row.seed,
            row.pads,
            row.wall_ms
        ));
    }
    out
}

pub fn emit_csv(report: &SweepReport, path: &Path) -> Result<(), HarnessError> {
    fs::write(path, csv_string(report))?;
    Ok(())
}

/// Parse a CSV produced by [`emit_csv`] back into rows.
pub fn parse_csv(raw: &str) -> Result<Vec<SweepRow>, HarnessError> {
    let mut lines = raw.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => return Err(HarnessError::Config(format!("bad CSV header: {other:?}"))),
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(HarnessError::Config(format!(
                "line {}: expected 6 fields, got {}",
                i + 2,
                fields.len()
            )));
        }
        let parse_err =
            |field: &str, e: String| HarnessError::Config(format!("line {}: {field}: {e}", i + 2));
        rows.push(SweepRow {
            param: fields[0]
                .parse()
                .map_err(|e: std::num::ParseFloatError| parse_err("param", e.to_string()))?,
            algorithm: Algorithm::parse(fields[1])?,
            bs_mode: match fields[2] {
                "center" => BsMode::Center,
                "isolated" => BsMode::Isolated,
                other => return Err(parse_err("bs_mode", format!("unknown mode `{other}`"))),
            },
            seed: fields[3]
                .parse()
                .map_err(|e: std::num::ParseIntError| parse_err("seed", e.to_string()))?,
            pads: fields[4]
                .parse()
                .map_err(|e: std::num::ParseIntError| parse_err("pads", e.to_string()))?,
            wall_ms: fields[5]
                .parse()
                .map_err(|e: std::num::ParseIntError| parse_err("wall_ms", e.to_string()))?,
        });
    }
    Ok(rows)
}

/// Matched-seed comparison of the two BS placements.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedRow {
    pub param: f64,
    pub algorithm: Algorithm,
    pub seed: u64,
    pub pads_center: usize,
    pub pads_isolated: usize,
}

impl PairedRow {
    pub fn diff(&self) -> i64 {
        self.pads_isolated as i64 - self.pads_center as i64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairedReport {
    pub rows: Vec<PairedRow>,
}

impl PairedReport {
    /// Mean of (isolated - center) over all rows of one algorithm.
    pub fn mean_diff(&self, algorithm: Algorithm) -> f64 {
        let diffs: Vec<i64> = self
            .rows
            .iter()
            .filter(|r| r.algorithm == algorithm)
            .map(PairedRow::diff)
            .collect();
        diffs.iter().sum::<i64>() as f64 / diffs.len() as f64
    }

    pub fn csv_string(&self) -> String {
        let mut out = String::from("param,algorithm,seed,pads_center,pads_isolated,diff\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.param,
                r.algorithm.name(),
                r.seed,
                r.pads_center,
                r.pads_isolated,
                r.diff()
            ));
        }
        out
    }
}

/// Run the spec under both BS modes with matched seeds and pair the rows.
pub fn compare_bs_modes(
    spec: &SweepSpec,
    params: &UavParams,
    solver: &SolverConfig,
) -> Result<PairedReport, HarnessError> {
    let mut center_spec = spec.clone();
    center_spec.bs_mode = BsMode::Center;
    let mut isolated_spec = spec.clone();
    isolated_spec.bs_mode = BsMode::Isolated;

    let center = run_sweep(&center_spec, params, solver, false)?;
    let isolated = run_sweep(&isolated_spec, params, solver, false)?;
    if !center.failures.is_empty() || !isolated.failures.is_empty() {
        return Err(HarnessError::Config(format!(
            "verification failures during paired sweep: {:?} {:?}",
            center.failures, isolated.failures
        )));
    }
    assert_eq!(center.rows.len(), isolated.rows.len());

    let rows = center
        .rows
        .iter()
        .zip(&isolated.rows)
        .map(|(c, i)| {
            assert!(
                c.param == i.param && c.algorithm == i.algorithm && c.seed == i.seed,
                "paired sweeps must align row-for-row"
            );
            PairedRow {
                param: c.param,
                algorithm: c.algorithm,
                seed: c.seed,
                pads_center: c.pads,
                pads_isolated: i.pads,
            }
        })
        .collect();
    Ok(PairedReport { rows })
}

const SVG_PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

/// Standalone SVG line chart: mean pads versus the swept value, one series
/// per (algorithm, bs_mode).
pub fn svg_string(rows: &[SweepRow], x_label: &str) -> String {
    let aggregates = aggregate_rows(rows);
    let mut series: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    for agg in &aggregates {
        let label = format!("{} ({})", agg.algorithm.name(), agg.bs_mode.name());
        match series.iter_mut().find(|(l, _)| *l == label) {
            Some((_, pts)) => pts.push((agg.param, agg.mean_pads)),
            None => series.push((label, vec![(agg.param, agg.mean_pads)])),
        }
    }
    for (_, pts) in &mut series {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    }

    let (width, height) = (720.0, 480.0);
    let (left, right, top, bottom) = (70.0, 20.0, 30.0, 50.0);
    let all_pts: Vec<(f64, f64)> = series.iter().flat_map(|(_, p)| p.iter().copied()).collect();
    let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut y_max = 0.0f64;
    for &(x, y) in &all_pts {
        x_min = x_min.min(x);
        x_max = x_max.max(x);
        y_max = y_max.max(y);
    }
    if all_pts.is_empty() {
        x_min = 0.0;
        x_max = 1.0;
    }
    if x_max == x_min {
        x_min -= 1.0;
        x_max += 1.0;
    }
    if y_max == 0.0 {
        y_max = 1.0;
    }
    y_max *= 1.1;

    let sx = |x: f64| left + (x - x_min) / (x_max - x_min) * (width - left - right);
    let sy = |y: f64| height - bottom - y / y_max * (height - top - bottom);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    // Axes.
    svg.push_str(&format!(
        "<line x1=\"{left}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        height - bottom,
        width - right,
        height - bottom
    ));
    svg.push_str(&format!(
        "<line x1=\"{left}\" y1=\"{top}\" x2=\"{left}\" y2=\"{}\" stroke=\"black\"/>\n",
        height - bottom
    ));
    // Ticks and labels.
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let xv = x_min + t * (x_max - x_min);
        let yv = t * y_max;
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
            sx(xv),
            height - bottom + 16.0,
            format_tick(xv)
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"end\">{}</text>\n",
            left - 6.0,
            sy(yv) + 4.0,
            format_tick(yv)
        ));
        svg.push_str(&format!(
            "<line x1=\"{left}\" y1=\"{:.1}\" x2=\"{}\" y2=\"{:.1}\" stroke=\"#dddddd\"/>\n",
            sy(yv),
            width - right,
            sy(yv)
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\" text-anchor=\"middle\">{x_label}</text>\n",
        left + (width - left - right) / 2.0,
        height - 12.0
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{:.1}\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.1})\">mean PADs</text>\n",
        top + (height - top - bottom) / 2.0,
        top + (height - top - bottom) / 2.0
    ));
    // Series.
    for (s, (label, pts)) in series.iter().enumerate() {
        let color = SVG_PALETTE[s % SVG_PALETTE.len()];
        let path: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"2\" points=\"{}\"/>\n",
            path.join(" ")
        ));
        for &(x, y) in pts {
            svg.push_str(&format!(
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{color}\"/>\n",
                sx(x),
                sy(y)
            ));
        }
        let ly = top + 14.0 * s as f64;
        svg.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{ly:.1}\" x2=\"{:.1}\" y2=\"{ly:.1}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            width - right - 150.0,
            width - right - 130.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\">{label}</text>\n",
            width - right - 124.0,
            ly + 4.0
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

fn format_tick(v: f64) -> String {
    if v == v.trunc() {
        format!("{v}")
    } else {
        format!("{v:.1}")
    }
}

pub fn emit_charts(report: &SweepReport, path: &Path) -> Result<(), HarnessError> {
    fs::write(
        path,
        svg_string(&report.rows, report.spec.swept_parameter.label()),
    )?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec() -> SweepSpec {
        SweepSpec {
            swept_parameter: SweptParameter::RegionSide,
            values: vec![6000.0, 10000.0],
            distribution: Distribution::Uniform,
            bs_mode: BsMode::Center,
            algorithms: vec![Algorithm::Cdc, Algorithm::CdcDsc],
            trials: 2,
            base_seed: 5,
            node_count: Some(40),
            region_side: None,
        }
    }

    #[test]
    fn sweep_produces_one_row_per_cell_and_no_failures() {
        let report = run_sweep(
            &small_spec(),
            &UavParams::default(),
            &SolverConfig::default(),
            false,
        )
        .unwrap();
        assert!(report.failures.is_empty());
        assert_eq!(report.rows.len(), 2 * 2 * 2);
        // Canonical sort: params ascending, then algorithm name.
        let params: Vec<f64> = report.rows.iter().map(|r| r.param).collect();
        let mut sorted = params.clone();
        sorted.sort_by(f64::total_cmp);
        assert_eq!(params, sorted);
    }

    #[test]
    fn refined_solution_never_uses_more_pads_than_the_initial_one() {
        let report = run_sweep(
            &small_spec(),
            &UavParams::default(),
            &SolverConfig::default(),
            false,
        )
        .unwrap();
        let mut by_cell: std::collections::BTreeMap<u64, Vec<&SweepRow>> = Default::default();
        for row in &report.rows {
            by_cell.entry(row.seed).or_default().push(row);
        }
        for cell in by_cell.values() {
            let cdc = cell.iter().find(|r| r.algorithm == Algorithm::Cdc);
            let dsc = cell.iter().find(|r| r.algorithm == Algorithm::CdcDsc);
            let (Some(c), Some(d)) = (cdc, dsc) else {
                panic!("both algorithms run in every cell");
            };
            assert!(d.pads <= c.pads);
        }
    }

    #[test]
    fn csv_round_trips_and_empty_report_is_header_only() {
        let spec = small_spec();
        let report = run_sweep(
            &spec,
            &UavParams::default(),
            &SolverConfig::default(),
            false,
        )
        .unwrap();
        let csv = csv_string(&report);
        let parsed = parse_csv(&csv).unwrap();
        assert_eq!(parsed, report.rows);
        assert_eq!(aggregate_rows(&parsed), report.aggregate());

        let empty = SweepReport {
            spec,
            rows: Vec::new(),
            failures: Vec::new(),
        };
        assert_eq!(csv_string(&empty), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn rerun_is_byte_identical() {
        let spec = small_spec();
        let a = run_sweep(
            &spec,
            &UavParams::default(),
            &SolverConfig::default(),
            false,
        )
        .unwrap();
        let b = run_sweep(
            &spec,
            &UavParams::default(),
            &SolverConfig::default(),
            false,
        )
        .unwrap();
        assert_eq!(csv_string(&a).into_bytes(), csv_string(&b).into_bytes());
    }

    #[test]
    fn paired_modes_align_and_same_mode_pairs_are_zero() {
        let mut spec = small_spec();
        spec.values = vec![8000.0];
        spec.algorithms = vec![Algorithm::Dc];
        let paired =
            compare_bs_modes(&spec, &UavParams::default(), &SolverConfig::default()).unwrap();
        assert_eq!(paired.rows.len(), 2);

        // Running the same mode twice and pairing by construction gives
        // zero differences.
        let a = run_sweep(
            &spec,
            &UavParams::default(),
            &SolverConfig::default(),
            false,
        )
        .unwrap();
        let b = run_sweep(
            &spec,
            &UavParams::default(),
            &SolverConfig::default(),
            false,
        )
        .unwrap();
        for (x, y) in a.rows.iter().zip(&b.rows) {
            assert_eq!(x.pads, y.pads);
        }
    }

    #[test]
    fn unknown_algorithms_are_rejected() {
        let json = r#"{
            "swept_parameter": "region_side",
            "values": [1000.0],
            "distribution": "uniform",
            "bs_mode": "center",
            "algorithms": ["tnc"]
        }"#;
        assert!(serde_json::from_str::<SweepSpec>(json).is_err());
        assert!(Algorithm::parse("tnc").is_err());
    }

    #[test]
    fn node_count_sweep_sizes_the_scenarios() {
        let spec = SweepSpec {
            swept_parameter: SweptParameter::NodeCount,
            values: vec![30.0, 60.0],
            distribution: Distribution::Uniform,
            bs_mode: BsMode::Center,
            algorithms: vec![Algorithm::Dc],
            trials: 2,
            base_seed: 3,
            node_count: None,
            region_side: Some(8_000.0),
        };
        let report = run_sweep(
            &spec,
            &UavParams::default(),
            &SolverConfig::default(),
            false,
        )
        .unwrap();
        assert!(report.failures.is_empty());
        assert_eq!(report.rows.len(), 4);

        let bad = SweepSpec {
            values: vec![0.4],
            ..spec.clone()
        };
        assert!(matches!(
            run_sweep(&bad, &UavParams::default(), &SolverConfig::default(), false),
            Err(HarnessError::Config(_))
        ));

        // A battery too small to fund one hover plus one node charge is a
        // config error, not a panic.
        let infeasible = SweepSpec {
            swept_parameter: SweptParameter::EMax,
            values: vec![5_000.0],
            ..spec
        };
        assert!(matches!(
            run_sweep(
                &infeasible,
                &UavParams::default(),
                &SolverConfig::default(),
                false
            ),
            Err(HarnessError::Config(_))
        ));
    }

    #[test]
    fn svg_smoke() {
        let spec = small_spec();
        let report = run_sweep(
            &spec,
            &UavParams::default(),
            &SolverConfig::default(),
            false,
        )
        .unwrap();
        let svg = svg_string(&report.rows, spec.swept_parameter.label());
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("polyline"));
        assert!(svg.contains("cdc-dsc (center)"));
        assert!(svg.contains("region side (m)"));
    }
}
