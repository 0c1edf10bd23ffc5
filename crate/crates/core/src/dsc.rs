//! Phase 2: shrink a feasible deployment.
//!
//! Three passes over the phase-1 output, each preserving feasibility:
//! delete redundant PADs, shift PADs toward their nearest neighbor in
//! fixed steps to create merge opportunities, then merge adjacent PAD
//! pairs whose exclusive nodes fit under a single disk.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::geometry::{circumcenter, dist_sq, midpoint, min_enclosing_circle, Point};
use crate::scenario::Scenario;
use crate::verify::{stations_connected, within_radius_sq, Deployment};

/// Step length and cap for the shifting pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftConfig {
    /// Step length, meters.
    pub d_delta: f64,
    /// Upper bound on steps per PAD.
    pub max_steps: usize,
}

impl ShiftConfig {
    /// Default cap: enough steps to cross `d_max`; shifting farther than
    /// the flight range is never useful.
    pub fn for_params(d_delta: f64, d_max: f64) -> Self {
        assert!(d_delta > 0.0);
        Self {
            d_delta,
            max_steps: (d_max / d_delta).ceil() as usize,
        }
    }
}

/// How the second merge candidate is built when the midpoint of the
/// farthest exclusive pair fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MergeStrategy {
    /// Center of the exact minimum enclosing circle of the exclusive
    /// nodes; finds a feasible center whenever one exists.
    #[default]
    Mec,
    /// Circumcenter of the farthest pair plus the node nearest the failed
    /// midpoint. Weaker, kept for comparison experiments.
    Triangle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DscConfig {
    pub d_delta: f64,
    pub merge_strategy: MergeStrategy,
    /// Re-run the combine pass until the PAD count stops shrinking
    /// (default is a single pass).
    pub combine_until_fixed_point: bool,
}

impl Default for DscConfig {
    fn default() -> Self {
        Self {
            d_delta: 30.0,
            merge_strategy: MergeStrategy::Mec,
            combine_until_fixed_point: false,
        }
    }
}

/// Remove every non-BS station whose removal keeps both constraints.
///
/// Scans ids in ascending order and repeats until a full pass removes
/// nothing: deleting one relay can make another deletable, so a single
/// pass is not a fixed point.
pub fn prune_redundant(dep: &Deployment, scenario: &Scenario) -> Deployment {
    let nodes = &scenario.nodes;
    let mut stations = dep.stations.clone();
    loop {
        let mut counts = vec![0u32; nodes.len()];
        let mut covers: Vec<Vec<usize>> = stations
            .iter()
            .map(|&s| {
                (0..nodes.len())
                    .filter(|&n| within_radius_sq(dist_sq(s, nodes[n]), dep.d_cover))
                    .collect::<Vec<_>>()
            })
            .collect();
        for list in &covers {
            for &n in list {
                counts[n] += 1;
            }
        }

        let mut removed_any = false;
        let mut sid = 1;
        while sid < stations.len() {
            let covers_alone = covers[sid].iter().any(|&n| counts[n] == 1);
            if !covers_alone && stations_connected(&stations, Some(sid), dep.d_max) {
                for &n in &covers[sid] {
                    counts[n] -= 1;
                }
                stations.remove(sid);
                covers.remove(sid);
                removed_any = true;
            } else {
                sid += 1;
            }
        }
        if !removed_any {
            break;
        }
    }

    let out = Deployment {
        d_cover: dep.d_cover,
        d_max: dep.d_max,
        stations,
    };
    debug_assert!((1..out.stations.len())
        .all(|sid| !crate::verify::is_redundant(&out, scenario, sid).unwrap()));
    out
}

/// Nudge each PAD toward its nearest neighbor station in `d_delta` steps.
///
/// PADs are processed in ascending exclusive-coverage order (re-evaluated
/// after each PAD settles, lowest id on ties). The direction is fixed when
/// a PAD starts moving; steps commit while both constraints hold and the
/// first violating step is reverted. The walk also stops at the neighbor
/// rather than overshooting it. Ends with a redundancy prune.
pub fn shift_pads(dep: &Deployment, scenario: &Scenario, cfg: &ShiftConfig) -> Deployment {
    assert!(cfg.d_delta > 0.0);
    let nodes = &scenario.nodes;
    let mut stations = dep.stations.clone();

    let mut counts: Vec<u32> = nodes
        .iter()
        .map(|&p| {
            stations
                .iter()
                .filter(|&&s| within_radius_sq(dist_sq(s, p), dep.d_cover))
                .count() as u32
        })
        .collect();

    let mut remaining: Vec<usize> = (1..stations.len()).collect();
    while !remaining.is_empty() {
        // Station with the fewest exclusively-covered nodes goes first.
        let mut pick = 0usize;
        let mut pick_key = (usize::MAX, usize::MAX);
        for (pos, &sid) in remaining.iter().enumerate() {
            let effect = (0..nodes.len())
                .filter(|&n| {
                    counts[n] == 1
                        && within_radius_sq(dist_sq(stations[sid], nodes[n]), dep.d_cover)
                })
                .count();
            if (effect, sid) < pick_key {
                pick_key = (effect, sid);
                pick = pos;
            }
        }
        let sid = remaining.remove(pick);

        // Fixed target: nearest other station at the moment this PAD starts.
        let start = stations[sid];
        let mut target: Option<(f64, usize)> = None;
        for (t, &s) in stations.iter().enumerate() {
            if t == sid {
                continue;
            }
            let d = dist_sq(start, s);
            if target.is_none_or(|(bd, _)| d < bd) {
                target = Some((d, t));
            }
        }
        let (target_d_sq, target_id) = target.expect("deployment has at least the BS");
        if target_d_sq == 0.0 {
            continue; // coincident with its neighbor; no direction to move
        }
        let target_pos = stations[target_id];
        let gap = target_d_sq.sqrt();
        let ux = (target_pos.x - start.x) / gap;
        let uy = (target_pos.y - start.y) / gap;
        let steps = cfg.max_steps.min((gap / cfg.d_delta).floor() as usize);

        for k in 1..=steps {
            let offset = k as f64 * cfg.d_delta;
            let cand = Point::new(start.x + offset * ux, start.y + offset * uy);

            // A node kept alive solely by this PAD must not fall out.
            let coverage_ok = (0..nodes.len()).all(|n| {
                counts[n] > 1
                    || !within_radius_sq(dist_sq(stations[sid], nodes[n]), dep.d_cover)
                    || within_radius_sq(dist_sq(cand, nodes[n]), dep.d_cover)
            });
            if !coverage_ok {
                break;
            }
            let prev = stations[sid];
            stations[sid] = cand;
            if !stations_connected(&stations, None, dep.d_max) {
                stations[sid] = prev;
                break;
            }
            for (n, &p) in nodes.iter().enumerate() {
                let was = within_radius_sq(dist_sq(prev, p), dep.d_cover);
                let now = within_radius_sq(dist_sq(cand, p), dep.d_cover);
                if was && !now {
                    counts[n] -= 1;
                } else if !was && now {
                    counts[n] += 1;
                }
            }
            debug_assert!(crate::verify::verify_deployment(
                &Deployment {
                    d_cover: dep.d_cover,
                    d_max: dep.d_max,
                    stations: stations.clone()
                },
                scenario
            )
            .is_ok());
        }
    }

    prune_redundant(
        &Deployment {
            d_cover: dep.d_cover,
            d_max: dep.d_max,
            stations,
        },
        scenario,
    )
}

/// Merge adjacent PAD pairs.
///
/// PADs are visited in ascending exclusive-coverage order; for each, the
/// neighbors within `d_max` are tried nearest-first. A merge replaces the
/// pair with a single PAD placed either at the midpoint of the two most
/// distant nodes that only this pair covers, or (if that fails) at the
/// center given by the merge strategy. Merged PADs re-enter the queue, so
/// chains of merges happen within one pass.
pub fn combine_pads(dep: &Deployment, scenario: &Scenario, strategy: MergeStrategy) -> Deployment {
    let nodes = &scenario.nodes;
    let mut slots: Vec<Option<Point>> = dep.stations.iter().copied().map(Some).collect();

    // Queue ordered by exclusive-coverage size on the input deployment.
    let mut counts = vec![0u32; nodes.len()];
    for &s in &dep.stations {
        for (n, &p) in nodes.iter().enumerate() {
            if within_radius_sq(dist_sq(s, p), dep.d_cover) {
                counts[n] += 1;
            }
        }
    }
    let mut order: Vec<(usize, usize)> = (1..dep.stations.len())
        .map(|sid| {
            let effect = (0..nodes.len())
                .filter(|&n| {
                    counts[n] == 1
                        && within_radius_sq(dist_sq(dep.stations[sid], nodes[n]), dep.d_cover)
                })
                .count();
            (effect, sid)
        })
        .collect();
    order.sort();
    let mut queue: VecDeque<usize> = order.into_iter().map(|(_, sid)| sid).collect();

    while let Some(i) = queue.pop_front() {
        let Some(pi) = slots[i] else { continue };

        let mut neighbors: Vec<(f64, usize)> = slots
            .iter()
            .enumerate()
            .skip(1)
            .filter_map(|(j, s)| s.map(|pj| (j, pj)))
            .filter(|&(j, pj)| j != i && within_radius_sq(dist_sq(pi, pj), dep.d_max))
            .map(|(j, pj)| (dist_sq(pi, pj), j))
            .collect();
        neighbors.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

        for (_, j) in neighbors {
            let Some(pj) = slots[j] else { continue };

            // Nodes no other live station covers.
            let exclusive: Vec<usize> = (0..nodes.len())
                .filter(|&n| {
                    !slots.iter().enumerate().any(|(k, s)| {
                        k != i
                            && k != j
                            && s.is_some_and(|p| {
                                within_radius_sq(dist_sq(p, nodes[n]), dep.d_cover)
                            })
                    })
                })
                .collect();

            let candidate1 = match exclusive.len() {
                0 => midpoint(pi, pj),
                1 => nodes[exclusive[0]],
                _ => {
                    let (a, b) = farthest_pair(&exclusive, nodes);
                    midpoint(nodes[a], nodes[b])
                }
            };
            if try_merge(&mut slots, i, j, candidate1, scenario, dep) {
                queue.push_back(slots.len() - 1);
                break;
            }

            let candidate2 = match strategy {
                MergeStrategy::Mec => {
                    if exclusive.is_empty() {
                        None
                    } else {
                        let pts: Vec<Point> = exclusive.iter().map(|&n| nodes[n]).collect();
                        let mec = min_enclosing_circle(&pts).expect("non-empty");
                        within_radius_sq(mec.radius * mec.radius, dep.d_cover).then_some(mec.center)
                    }
                }
                MergeStrategy::Triangle => {
                    if exclusive.len() < 3 {
                        None
                    } else {
                        let (a, b) = farthest_pair(&exclusive, nodes);
                        let third = exclusive
                            .iter()
                            .copied()
                            .filter(|&n| n != a && n != b)
                            .min_by(|&m, &n| {
                                dist_sq(nodes[m], candidate1)
                                    .total_cmp(&dist_sq(nodes[n], candidate1))
                                    .then(m.cmp(&n))
                            })
                            .expect("at least three exclusive nodes");
                        circumcenter(nodes[a], nodes[b], nodes[third])
                            .ok()
                            .map(|c| c.center)
                    }
                }
            };
            if let Some(cand) = candidate2 {
                if cand != candidate1 && try_merge(&mut slots, i, j, cand, scenario, dep) {
                    queue.push_back(slots.len() - 1);
                    break;
                }
            }
        }
    }

    let stations: Vec<Point> = slots.into_iter().flatten().collect();
    let out = Deployment {
        d_cover: dep.d_cover,
        d_max: dep.d_max,
        stations,
    };
    debug_assert!(out.pad_count() <= dep.pad_count());
    debug_assert!(crate::verify::verify_deployment(&out, scenario).is_ok());
    out
}

/// Pair of ids at maximum distance; first-encountered (lowest indices)
/// wins ties.
fn farthest_pair(ids: &[usize], nodes: &[Point]) -> (usize, usize) {
    debug_assert!(ids.len() >= 2);
    let mut best = (0.0f64, ids[0], ids[1]);
    for (x, &a) in ids.iter().enumerate() {
        for &b in &ids[x + 1..] {
            let d = dist_sq(nodes[a], nodes[b]);
            if d > best.0 {
                best = (d, a, b);
            }
        }
    }
    (best.1, best.2)
}

/// Commit `candidate` in place of stations `i` and `j` if the result keeps
/// both constraints.
fn try_merge(
    slots: &mut Vec<Option<Point>>,
    i: usize,
    j: usize,
    candidate: Point,
    scenario: &Scenario,
    dep: &Deployment,
) -> bool {
    let trial: Vec<Point> = slots
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i && k != j)
        .filter_map(|(_, s)| *s)
        .chain(std::iter::once(candidate))
        .collect();

    let coverage_ok = scenario.nodes.iter().all(|&p| {
        trial
            .iter()
            .any(|&s| within_radius_sq(dist_sq(s, p), dep.d_cover))
    });
    if !coverage_ok || !stations_connected(&trial, None, dep.d_max) {
        return false;
    }
    slots[i] = None;
    slots[j] = None;
    slots.push(Some(candidate));
    true
}

/// Per-stage snapshots for inspection.
#[derive(Debug, Clone)]
pub struct DscStages {
    pub post_prune: Deployment,
    pub post_shift: Deployment,
    pub post_combine: Deployment,
}

/// Full refinement: prune, shift (which re-prunes), combine, prune.
pub fn dsc_optimize(dep: &Deployment, scenario: &Scenario, cfg: &DscConfig) -> Deployment {
    dsc_optimize_stages(dep, scenario, cfg).0
}

pub fn dsc_optimize_stages(
    dep: &Deployment,
    scenario: &Scenario,
    cfg: &DscConfig,
) -> (Deployment, DscStages) {
    let pruned = prune_redundant(dep, scenario);
    let shifted = shift_pads(
        &pruned,
        scenario,
        &ShiftConfig::for_params(cfg.d_delta, dep.d_max),
    );
    let mut combined = combine_pads(&shifted, scenario, cfg.merge_strategy);
    if cfg.combine_until_fixed_point {
        loop {
            let again = combine_pads(&combined, scenario, cfg.merge_strategy);
            if again.pad_count() == combined.pad_count() {
                break;
            }
            combined = again;
        }
    }
    let final_dep = prune_redundant(&combined, scenario);
    debug_assert!(final_dep.pad_count() <= dep.pad_count());
    debug_assert_eq!(final_dep.bs(), dep.bs());
    (
        final_dep.clone(),
        DscStages {
            post_prune: pruned,
            post_shift: shifted,
            post_combine: final_dep,
        },
    )
}
