//! Phase 1: build an initial feasible deployment.
//!
//! Nodes the BS cannot cover are clustered (K chosen from the count of
//! isolated nodes, with the most isolated nodes as initial centroids) and
//! a PAD goes to each centroid. Remaining uncovered nodes get PADs at
//! their own locations, then relay PADs stitch everything into one
//! component reachable from the BS.

use crate::energy::{EnergyError, UavParams};
use crate::geometry::{dist, dist_sq, Point};
use crate::scenario::Scenario;
use crate::verify::{within_radius_sq, Deployment};

/// Knobs for the clustering phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdcConfig {
    /// Scale factor from isolated-node count to cluster count.
    pub alpha: f64,
    pub kmeans_max_iters: usize,
    /// Centroid movement below which Lloyd iterations stop, meters.
    pub kmeans_tol: f64,
}

impl Default for CdcConfig {
    fn default() -> Self {
        Self {
            alpha: 0.3,
            kmeans_max_iters: 100,
            kmeans_tol: 1e-6,
        }
    }
}

/// Nearest-neighbor statistics over a node set.
#[derive(Debug, Clone, PartialEq)]
pub struct IsolationStats {
    /// Distance from each node to its nearest neighbor in the set.
    pub nn_dist: Vec<f64>,
    /// Mean of `nn_dist`.
    pub mean_nn: f64,
    /// Ids whose nearest-neighbor distance strictly exceeds the mean.
    pub isolated: Vec<usize>,
}

/// Exact nearest-neighbor distances by pairwise scan. A lone node has no
/// neighbor and counts as isolated.
pub fn isolation_stats(nodes: &[Point]) -> IsolationStats {
    assert!(!nodes.is_empty());
    if nodes.len() == 1 {
        return IsolationStats {
            nn_dist: vec![f64::INFINITY],
            mean_nn: 0.0,
            isolated: vec![0],
        };
    }
    let n = nodes.len();
    let mut nn_sq = vec![f64::INFINITY; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = dist_sq(nodes[i], nodes[j]);
            if d < nn_sq[i] {
                nn_sq[i] = d;
            }
            if d < nn_sq[j] {
                nn_sq[j] = d;
            }
        }
    }
    let nn_dist: Vec<f64> = nn_sq.into_iter().map(f64::sqrt).collect();
    let mean_nn = nn_dist.iter().sum::<f64>() / n as f64;
    let isolated = (0..n).filter(|&i| nn_dist[i] > mean_nn).collect();
    IsolationStats {
        nn_dist,
        mean_nn,
        isolated,
    }
}

/// Cluster count: `floor(alpha * |isolated|)`, clamped to at least one so
/// clustering can proceed on uniform fields with no isolated nodes.
pub fn choose_k(stats: &IsolationStats, alpha: f64) -> usize {
    assert!(alpha > 0.0);
    ((alpha * stats.isolated.len() as f64).floor() as usize).max(1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterModel {
    pub k: usize,
    pub centroids: Vec<Point>,
    /// Node id -> index of its nearest centroid.
    pub assignment: Vec<usize>,
}

/// Lloyd iterations from the given initial centroids. Runs until the
/// largest centroid movement drops below `tol` or `max_iters` passes.
/// A cluster left empty is re-seeded at the node currently worst served
/// by its own centroid.
pub fn kmeans(
    nodes: &[Point],
    k: usize,
    init: &[Point],
    max_iters: usize,
    tol: f64,
) -> ClusterModel {
    assert!(k >= 1 && k <= nodes.len());
    assert_eq!(init.len(), k);
    let mut centroids: Vec<Point> = init.to_vec();
    let mut assignment = vec![0usize; nodes.len()];

    for _ in 0..max_iters {
        assign_nearest(nodes, &centroids, &mut assignment);
        reseed_empty_clusters(nodes, &centroids, &mut assignment, k);

        let mut sums = vec![(0.0f64, 0.0f64, 0usize); k];
        for (node, &c) in nodes.iter().zip(&assignment) {
            sums[c].0 += node.x;
            sums[c].1 += node.y;
            sums[c].2 += 1;
        }
        let mut movement = 0.0f64;
        for (c, &(sx, sy, count)) in sums.iter().enumerate() {
            if count > 0 {
                let next = Point::new(sx / count as f64, sy / count as f64);
                movement = movement.max(dist(centroids[c], next));
                centroids[c] = next;
            }
        }
        if movement < tol {
            break;
        }
    }
    assign_nearest(nodes, &centroids, &mut assignment);
    ClusterModel {
        k,
        centroids,
        assignment,
    }
}

fn assign_nearest(nodes: &[Point], centroids: &[Point], assignment: &mut [usize]) {
    for (i, &node) in nodes.iter().enumerate() {
        let mut best = 0usize;
        let mut best_d = dist_sq(node, centroids[0]);
        for (c, &centroid) in centroids.iter().enumerate().skip(1) {
            let d = dist_sq(node, centroid);
            if d < best_d {
                best_d = d;
                best = c;
            }
        }
        assignment[i] = best;
    }
}

fn reseed_empty_clusters(nodes: &[Point], centroids: &[Point], assignment: &mut [usize], k: usize) {
    let mut counts = vec![0usize; k];
    for &c in assignment.iter() {
        counts[c] += 1;
    }
    let mut claimed: Vec<usize> = Vec::new();
    for empty in 0..k {
        if counts[empty] > 0 {
            continue;
        }
        // Node farthest from its current centroid, skipping nodes already
        // claimed by an earlier empty cluster and singleton donors.
        let mut worst: Option<(f64, usize)> = None;
        for (i, &node) in nodes.iter().enumerate() {
            if claimed.contains(&i) || counts[assignment[i]] <= 1 {
                continue;
            }
            let d = dist_sq(node, centroids[assignment[i]]);
            if worst.is_none_or(|(wd, _)| d > wd) {
                worst = Some((d, i));
            }
        }
        if let Some((_, i)) = worst {
            counts[assignment[i]] -= 1;
            assignment[i] = empty;
            counts[empty] = 1;
            claimed.push(i);
        }
    }
}

/// Initial centroids: the `k` most isolated nodes (largest nearest-neighbor
/// distance first, lowest id on ties). When no node qualifies as isolated,
/// fall back to the same ordering over the whole set.
fn initial_centroids(nodes: &[Point], stats: &IsolationStats, k: usize) -> Vec<Point> {
    let mut ids: Vec<usize> = if stats.isolated.len() >= k {
        stats.isolated.clone()
    } else {
        (0..nodes.len()).collect()
    };
    ids.sort_by(|&a, &b| {
        stats.nn_dist[b]
            .total_cmp(&stats.nn_dist[a])
            .then(a.cmp(&b))
    });
    ids.truncate(k);
    ids.into_iter().map(|i| nodes[i]).collect()
}

/// Add PADs at node locations until every node is covered. Each round
/// picks, among the still-uncovered nodes, the one farthest from its
/// nearest uncovered neighbor (lowest id on ties). Every new PAD covers
/// at least its host node, so the loop terminates.
pub(crate) fn repair_coverage(stations: &mut Vec<Point>, nodes: &[Point], d_cover: f64) {
    loop {
        let uncovered: Vec<usize> = (0..nodes.len())
            .filter(|&i| {
                !stations
                    .iter()
                    .any(|&s| within_radius_sq(dist_sq(s, nodes[i]), d_cover))
            })
            .collect();
        if uncovered.is_empty() {
            return;
        }
        let pick = if uncovered.len() == 1 {
            uncovered[0]
        } else {
            let mut best: Option<(f64, usize)> = None;
            for &i in &uncovered {
                let nn = uncovered
                    .iter()
                    .filter(|&&j| j != i)
                    .map(|&j| dist_sq(nodes[i], nodes[j]))
                    .fold(f64::INFINITY, f64::min);
                if best.is_none_or(|(bd, _)| nn > bd) {
                    best = Some((nn, i));
                }
            }
            best.expect("uncovered set is non-empty").1
        };
        stations.push(nodes[pick]);
    }
}

/// Grow a connected station graph from the BS. Repeatedly take the pending
/// PAD closest to any connected vertex; if it is within `d_max` it joins,
/// otherwise a relay PAD is placed on the connecting segment at `d_max`
/// from the connected vertex and becomes a new vertex. Returns the full
/// station list (BS first) in join order.
pub(crate) fn connect_stations(bs: Point, pads: Vec<Point>, d_max: f64) -> Vec<Point> {
    let mut connected = vec![bs];
    let mut pending = pads;
    while !pending.is_empty() {
        let mut best: Option<(f64, usize, usize)> = None;
        for (i, &p) in pending.iter().enumerate() {
            for (j, &q) in connected.iter().enumerate() {
                let d = dist_sq(p, q);
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
        let (d_sq, i, j) = best.expect("pending set is non-empty");
        if within_radius_sq(d_sq, d_max) {
            connected.push(pending.remove(i));
        } else {
            let anchor = connected[j];
            let target = pending[i];
            let t = d_max / d_sq.sqrt();
            connected.push(Point::new(
                anchor.x + t * (target.x - anchor.x),
                anchor.y + t * (target.y - anchor.y),
            ));
        }
    }
    connected
}

/// Per-stage snapshots for inspection; the early stages generally violate
/// one constraint or the other by construction.
#[derive(Debug, Clone)]
pub struct CdcStages {
    pub post_clustering: Deployment,
    pub post_coverage: Deployment,
    pub post_connectivity: Deployment,
}

pub fn cdc_solve(
    scenario: &Scenario,
    params: &UavParams,
    cfg: &CdcConfig,
) -> Result<Deployment, EnergyError> {
    cdc_solve_stages(scenario, params, cfg).map(|(dep, _)| dep)
}

/// Like [`cdc_solve`] but also returns the intermediate deployments.
pub fn cdc_solve_stages(
    scenario: &Scenario,
    params: &UavParams,
    cfg: &CdcConfig,
) -> Result<(Deployment, CdcStages), EnergyError> {
    let d_cover = params.d_cover()?;
    let d_max = params.d_max();
    let bs = scenario.bs;

    // Only cluster what the BS cannot already serve.
    let residual: Vec<Point> = scenario
        .nodes
        .iter()
        .copied()
        .filter(|&p| !within_radius_sq(dist_sq(bs, p), d_cover))
        .collect();
    if residual.is_empty() {
        let dep = Deployment::new(bs, Vec::new(), d_cover, d_max);
        let stages = CdcStages {
            post_clustering: dep.clone(),
            post_coverage: dep.clone(),
            post_connectivity: dep.clone(),
        };
        return Ok((dep, stages));
    }

    let stats = isolation_stats(&residual);
    let k = choose_k(&stats, cfg.alpha).min(residual.len());
    let init = initial_centroids(&residual, &stats, k);
    let model = kmeans(&residual, k, &init, cfg.kmeans_max_iters, cfg.kmeans_tol);

    let mut stations = vec![bs];
    stations.extend(model.centroids.iter().copied());
    let post_clustering = Deployment {
        d_cover,
        d_max,
        stations: stations.clone(),
    };

    repair_coverage(&mut stations, &scenario.nodes, d_cover);
    let post_coverage = Deployment {
        d_cover,
        d_max,
        stations: stations.clone(),
    };

    let connected = connect_stations(bs, stations[1..].to_vec(), d_max);
    let dep = Deployment {
        d_cover,
        d_max,
        stations: connected,
    };
    debug_assert!(crate::verify::verify_deployment(&dep, scenario).is_ok());

    Ok((
        dep.clone(),
        CdcStages {
            post_clustering,
            post_coverage,
            post_connectivity: dep,
        },
    ))
}
