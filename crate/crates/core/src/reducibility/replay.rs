//! Replayable identification arguments.
//!
//! Three of the built-in configurations are reduced not by a vertex ordering
//! but by surgery: straighten a small tree of edges, delete the configuration
//! core, identify two distant vertices, color the quotient, pull the coloring
//! back, and finish the deleted vertices in a fixed order using the
//! duplicated-constraint trick that the straightened edges make available.
//!
//! Each replay runs the full pipeline inside a minimal synthetic host: the
//! configuration wrapped in a buffered ring that stands in for the rest of a
//! host graph. Ring spacing is chosen so that the surgery cannot create
//! cycles of the lengths the argument forbids, which the replay re-checks
//! with the cycle enumerator on every run. Pipelines execute on the identity
//! matching assignment and on a fixed batch of seeded pseudorandom perfect
//! matching assignments, so reports are deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::ReduceError;
use crate::dp_cover::{
    build_cover, instance_to_json, residual_lists, straighten, ListAssignment,
    MatchingAssignment, PartialColoring,
};
use crate::plane_graph::builder::PlaneBuilder;
use crate::plane_graph::PlaneGraph;
use crate::solver::{solve, uniform::Perms};
use crate::{Color, Edge, Vertex};

/// Matching assignments replayed per argument: the identity plus seeded
/// random ones.
const REPLAY_RUNS: usize = 25;
const REPLAY_SEED: u64 = 0x9c1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Bound {
    AtLeast(usize),
    Exactly(usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualCheck {
    pub label: String,
    pub bound: Bound,
    pub observed_min: usize,
    pub observed_max: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReplayReport {
    pub name: String,
    pub runs: u64,
    pub steps: Vec<String>,
    pub residual_checks: Vec<ResidualCheck>,
    /// No cycle in the checked length range appears in the quotient that was
    /// not already present before the identification.
    pub short_cycle_range: [usize; 2],
    pub no_new_short_cycles: bool,
    pub quotient_triangle_distance_ok: bool,
    pub success: bool,
    pub failing_step: Option<String>,
    /// The straightened instance of the last run, for inspection.
    pub last_instance_json: String,
}

enum Step {
    /// Color the vertex with the smallest color its residual list allows.
    Proper(&'static str),
    /// Copy the color already given to `from` onto `to`.
    Copy {
        to: &'static str,
        from: &'static str,
    },
}

struct ReplaySpec {
    name: &'static str,
    host: PlaneGraph,
    labels: BTreeMap<&'static str, Vertex>,
    straighten_edges: Vec<Edge>,
    delete: Vec<&'static str>,
    identify: (&'static str, &'static str),
    cycle_range: RangeInclusive<usize>,
    min_triangle_distance: usize,
    completion: Vec<Step>,
    residual_bounds: Vec<(&'static str, Bound)>,
}

/// Ring with `buffers` plain vertices between consecutive spoke feet, built
/// as a bare cycle starting at `first_id`. Returns the cycle and the foot
/// ids, one per requested spoke, in ring order.
fn ring_ids(first_id: Vertex, feet: usize, buffers: usize) -> (Vec<Vertex>, Vec<Vertex>) {
    let len = feet * (buffers + 1);
    let cycle: Vec<Vertex> = (0..len as u32).map(|i| first_id + i).collect();
    let feet: Vec<Vertex> = (0..feet)
        .map(|s| first_id + (s * (buffers + 1)) as u32)
        .collect();
    (cycle, feet)
}

/// Six-face with a pendant triangle: the all-3-vertex triangle [1,2,7] on the
/// six-face [1..6], third triangle corner joined to 8. Feet order around the
/// configuration: v3, v4, v5, v6, then both spokes of 8.
fn host_bad6() -> (PlaneGraph, BTreeMap<&'static str, Vertex>) {
    let (ring, feet) = ring_ids(9, 6, 4);
    let mut b = PlaneBuilder::from_cycle(&ring);
    b.add_path_in(0, feet[0], &[3, 4], feet[1]).unwrap();
    b.add_path(&[4, feet[2]], 4, &[5], feet[2]).unwrap();
    b.add_path(&[5, feet[3]], 5, &[6], feet[3]).unwrap();
    b.add_path(&[6, feet[4]], 6, &[1, 7, 8], feet[4]).unwrap();
    b.add_edge(&[8, feet[5]], 8, feet[5]).unwrap();
    b.add_path(&[1, 3, 7], 1, &[2], 3).unwrap();
    b.add_edge(&[2, 7], 2, 7).unwrap();
    b.set_outer(ring);
    let labels = BTreeMap::from([
        ("v1", 1),
        ("v2", 2),
        ("v3", 3),
        ("v4", 4),
        ("v5", 5),
        ("v6", 6),
        ("v12", 7),
        ("v", 8),
    ]);
    (b.build().expect("bad6 replay host"), labels)
}

/// Seven-vertex path over a pendant triangle: path x,u1,u2,y,v1,v2,z joined
/// to the triangle [x',y',z'] by three vertical edges; y'' is the fourth
/// neighbor of y.
fn host_twin_bad6() -> (PlaneGraph, BTreeMap<&'static str, Vertex>) {
    let (ring, feet) = ring_ids(12, 8, 4);
    let mut b = PlaneBuilder::from_cycle(&ring);
    b.add_path_in(0, feet[0], &[1, 2], feet[1]).unwrap();
    b.add_path(&[2, feet[2]], 2, &[3], feet[2]).unwrap();
    b.add_path(&[3, feet[3]], 3, &[4, 11], feet[3]).unwrap();
    b.add_edge(&[11, feet[4]], 11, feet[4]).unwrap();
    b.add_path(&[4, feet[5]], 4, &[5], feet[5]).unwrap();
    b.add_path(&[5, feet[6]], 5, &[6], feet[6]).unwrap();
    b.add_path(&[6, feet[7]], 6, &[7], feet[7]).unwrap();
    b.add_path(&[1, 7], 1, &[8, 10], 7).unwrap();
    b.add_path(&[8, 10, 4], 8, &[9], 10).unwrap();
    b.add_edge(&[9, 4], 9, 4).unwrap();
    b.set_outer(ring);
    let labels = BTreeMap::from([
        ("x", 1),
        ("u1", 2),
        ("u2", 3),
        ("y", 4),
        ("v1", 5),
        ("v2", 6),
        ("z", 7),
        ("x'", 8),
        ("y'", 9),
        ("z'", 10),
        ("y''", 11),
    ]);
    (b.build().expect("twin bad6 replay host"), labels)
}

/// Seven-face adjacent to two all-3-vertex triangles, as in the
/// third seven-face case: triangle [1,2,8] on edge 1-2, triangle [4,5,9] on
/// edge 4-5, vertex 10 the third neighbor of 9.
fn host_double_triangle_7face() -> (PlaneGraph, BTreeMap<&'static str, Vertex>) {
    let (ring, feet) = ring_ids(11, 6, 5);
    let mut b = PlaneBuilder::from_cycle(&ring);
    b.add_path_in(0, feet[5], &[8, 1, 2, 3], feet[0]).unwrap();
    let buffer_after_v12_foot = feet[5] + 1;
    b.add_edge(&[8, 2, buffer_after_v12_foot], 8, 2).unwrap();
    b.add_path(&[3, feet[1]], 3, &[4, 9, 10], feet[1]).unwrap();
    b.add_edge(&[10, feet[2]], 10, feet[2]).unwrap();
    b.add_path(&[9, feet[3]], 9, &[5, 6], feet[3]).unwrap();
    b.add_edge(&[4, 5], 4, 5).unwrap();
    b.add_path(&[6, feet[4]], 6, &[7], feet[4]).unwrap();
    b.add_edge(&[7, 1], 7, 1).unwrap();
    b.set_outer(ring);
    let labels = BTreeMap::from([
        ("v1", 1),
        ("v2", 2),
        ("v3", 3),
        ("v4", 4),
        ("v5", 5),
        ("v6", 6),
        ("v7", 7),
        ("v12", 8),
        ("v45", 9),
        ("v", 10),
    ]);
    (b.build().expect("double-triangle replay host"), labels)
}

fn spec_for(name: &str) -> Result<ReplaySpec, ReduceError> {
    match name {
        "lemma-2.4" => {
            let (host, labels) = host_bad6();
            Ok(ReplaySpec {
                name: "lemma-2.4",
                host,
                straighten_edges: vec![
                    crate::edge(labels["v1"], labels["v2"]),
                    crate::edge(labels["v"], labels["v12"]),
                    crate::edge(labels["v12"], labels["v2"]),
                    crate::edge(labels["v2"], labels["v3"]),
                    crate::edge(labels["v3"], labels["v4"]),
                ],
                labels,
                delete: vec!["v12", "v1", "v2", "v3", "v6"],
                identify: ("v4", "v"),
                cycle_range: 3..=5,
                min_triangle_distance: 3,
                completion: vec![
                    Step::Proper("v3"),
                    Step::Copy {
                        to: "v12",
                        from: "v3",
                    },
                    Step::Proper("v6"),
                    Step::Proper("v1"),
                    Step::Proper("v2"),
                ],
                residual_bounds: vec![
                    ("v3", Bound::AtLeast(1)),
                    ("v12", Bound::AtLeast(2)),
                    ("v6", Bound::AtLeast(1)),
                    ("v1", Bound::Exactly(3)),
                    ("v2", Bound::Exactly(3)),
                ],
            })
        }
        "lemma-2.5" => {
            let (host, labels) = host_twin_bad6();
            Ok(ReplaySpec {
                name: "lemma-2.5",
                host,
                straighten_edges: vec![
                    crate::edge(labels["y''"], labels["y"]),
                    crate::edge(labels["y"], labels["y'"]),
                    crate::edge(labels["y'"], labels["z'"]),
                    crate::edge(labels["z'"], labels["z"]),
                ],
                labels,
                delete: vec!["x", "u1", "u2", "y", "y'", "x'", "z'"],
                identify: ("z", "y''"),
                cycle_range: 3..=5,
                min_triangle_distance: 3,
                completion: vec![
                    Step::Proper("y"),
                    Step::Copy {
                        to: "z'",
                        from: "y",
                    },
                    Step::Proper("u2"),
                    Step::Proper("u1"),
                    Step::Proper("x"),
                    Step::Proper("x'"),
                    Step::Proper("y'"),
                ],
                residual_bounds: vec![
                    ("z'", Bound::AtLeast(2)),
                    ("x", Bound::AtLeast(2)),
                    ("u2", Bound::AtLeast(2)),
                    ("u1", Bound::AtLeast(2)),
                    ("y'", Bound::Exactly(3)),
                    ("x'", Bound::Exactly(3)),
                    ("y", Bound::AtLeast(1)),
                ],
            })
        }
        "lemma-3.3c" => {
            let (host, labels) = host_double_triangle_7face();
            Ok(ReplaySpec {
                name: "lemma-3.3c",
                host,
                straighten_edges: vec![
                    crate::edge(labels["v7"], labels["v6"]),
                    crate::edge(labels["v6"], labels["v5"]),
                    crate::edge(labels["v5"], labels["v4"]),
                    crate::edge(labels["v5"], labels["v45"]),
                    crate::edge(labels["v45"], labels["v"]),
                ],
                labels,
                delete: vec!["v6", "v5", "v4", "v45"],
                identify: ("v7", "v"),
                cycle_range: 3..=6,
                min_triangle_distance: 2,
                completion: vec![
                    Step::Proper("v6"),
                    Step::Copy {
                        to: "v45",
                        from: "v6",
                    },
                    Step::Proper("v4"),
                    Step::Proper("v5"),
                ],
                residual_bounds: vec![
                    ("v4", Bound::AtLeast(2)),
                    ("v45", Bound::AtLeast(2)),
                    ("v5", Bound::Exactly(3)),
                    ("v6", Bound::AtLeast(1)),
                ],
            })
        }
        other => Err(ReduceError::UnknownName(other.to_string())),
    }
}

fn canonical_cycle(mut seq: Vec<Vertex>) -> Vec<Vertex> {
    let n = seq.len();
    let mut best: Option<Vec<Vertex>> = None;
    for _ in 0..2 {
        for s in 0..n {
            let cand: Vec<Vertex> = (0..n).map(|i| seq[(s + i) % n]).collect();
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
        seq.reverse();
    }
    best.unwrap()
}

fn random_perfect_matchings(
    host: &PlaneGraph,
    perms: &Perms,
    rng: &mut impl Rng,
) -> MatchingAssignment {
    let mut m = MatchingAssignment::new();
    for (u, v) in host.edges() {
        let p = &perms.perms[rng.gen_range(0..perms.count())];
        let pairs: Vec<(Color, Color)> = (0..perms.k)
            .map(|c| (c as Color + 1, p[c] as Color + 1))
            .collect();
        m.set(u, v, pairs);
    }
    m
}

/// Executes one identification argument end to end, over the fixed battery
/// of matching assignments, and reports residual-list sizes against the
/// argument's stated bounds.
pub fn replay_identification_proof(name: &str) -> Result<ReplayReport, ReduceError> {
    let spec = spec_for(name)?;
    let k: Color = 3;
    let host_simple = spec.host.simple();
    let l = ListAssignment::uniform(host_simple.vertices().iter().copied(), k);
    let perms = Perms::new(k as usize);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(REPLAY_SEED);

    let delete: BTreeSet<Vertex> = spec.delete.iter().map(|n| spec.labels[n]).collect();
    let (keep, merge) = (spec.labels[spec.identify.0], spec.labels[spec.identify.1]);
    let sel: BTreeSet<Edge> = spec.straighten_edges.iter().copied().collect();

    let mut observed: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    let mut no_new_cycles = true;
    let mut triangle_ok = true;
    let mut failing_step: Option<String> = None;
    let mut last_instance_json = String::new();
    let steps = vec![
        "straighten".to_string(),
        "delete".to_string(),
        "identify".to_string(),
        "cycle-check".to_string(),
        "solve-quotient".to_string(),
        "pull-back".to_string(),
        "residual-lists".to_string(),
        "complete".to_string(),
        "verify".to_string(),
    ];

    'runs: for run in 0..REPLAY_RUNS {
        let m = if run == 0 {
            crate::dp_cover::from_lists(&l, &host_simple)
        } else {
            random_perfect_matchings(&spec.host, &perms, &mut rng)
        };

        // straighten the quoted edges
        let (l1, m1, relabel) = straighten(&host_simple, &l, &m, &sel)?;
        debug_assert!(sel.iter().all(|&(u, v)| {
            m1.pairs_oriented(u, v).iter().all(|&(a, b)| a == b)
        }));
        last_instance_json = instance_to_json(&l1, &m1);

        // delete the core, identify the quoted pair in the plane quotient
        let before = spec.host.remove_vertices(&delete);
        let quotient = before.identify(keep, merge)?;

        // the surgery may not create short cycles
        for len in spec.cycle_range.clone() {
            let old: BTreeSet<Vec<Vertex>> = before
                .cycles_of_length(len)?
                .iter()
                .map(|c| canonical_cycle(c.vertices().to_vec()))
                .collect();
            for c in quotient.cycles_of_length(len)? {
                let as_is = canonical_cycle(c.vertices().to_vec());
                let renamed = canonical_cycle(
                    c.vertices()
                        .iter()
                        .map(|&v| if v == keep { merge } else { v })
                        .collect(),
                );
                if !old.contains(&as_is) && !old.contains(&renamed) {
                    no_new_cycles = false;
                    failing_step = Some(format!("cycle-check: new {len}-cycle {:?}", c.vertices()));
                    break 'runs;
                }
            }
        }
        match quotient.triangle_distance() {
            Some(d) if d < spec.min_triangle_distance => {
                triangle_ok = false;
                failing_step = Some(format!("cycle-check: quotient triangle distance {d}"));
                break 'runs;
            }
            _ => {}
        }

        // color the quotient
        let q_simple = quotient.simple();
        let lq = ListAssignment::uniform(q_simple.vertices().iter().copied(), k);
        let mut mq = MatchingAssignment::new();
        for (u, v) in q_simple.edges() {
            let (ou, ov) = (
                if u == keep && !host_simple.has_edge(u, v) {
                    merge
                } else {
                    u
                },
                if v == keep && !host_simple.has_edge(u, v) {
                    merge
                } else {
                    v
                },
            );
            mq.set(u, v, m1.pairs_oriented(ou, ov));
        }
        let covq = build_cover(&q_simple, &lq, &mq)?;
        let rq = solve(&covq, &PartialColoring::new()).expect("quotient instance is well-formed");
        let Some(wq) = rq.witness else {
            failing_step = Some("solve-quotient: unsatisfiable".to_string());
            break 'runs;
        };

        // pull back: both identified vertices inherit the merged color
        let mut phi = PartialColoring::new();
        for (v, c) in wq.iter() {
            phi.set(v, c);
        }
        phi.set(merge, wq.get(keep).unwrap());

        // residual lists of the deleted vertices
        let cov1 = build_cover(&host_simple, &l1, &m1)?;
        let res = residual_lists(&cov1, &phi);
        for &label in &spec.delete {
            let v = spec.labels[label];
            let size = res.get(v).map(BTreeSet::len).unwrap_or(0);
            let entry = observed.entry(label).or_insert((size, size));
            entry.0 = entry.0.min(size);
            entry.1 = entry.1.max(size);
        }

        // complete in the quoted order
        for step in &spec.completion {
            let (v, color) = match step {
                Step::Proper(label) => {
                    let v = spec.labels[label];
                    let free = free_colors(&cov1, &phi, v);
                    match free.first() {
                        Some(&c) => (v, c),
                        None => {
                            failing_step = Some(format!("complete: no free color at {label}"));
                            break 'runs;
                        }
                    }
                }
                Step::Copy { to, from } => {
                    let v = spec.labels[to];
                    let c = phi.get(spec.labels[from]).expect("source colored earlier");
                    if !free_colors(&cov1, &phi, v).contains(&c) {
                        failing_step =
                            Some(format!("complete: copied color blocked at {to}"));
                        break 'runs;
                    }
                    (v, c)
                }
            };
            phi.set(v, color);
        }

        // verify against the straightened instance, then against the original
        if !cov1.is_dp_coloring(&phi) {
            failing_step = Some("verify: completed coloring invalid".to_string());
            break 'runs;
        }
        let cov0 = build_cover(&host_simple, &l, &m)?;
        let mut back = PartialColoring::new();
        for (v, c) in phi.iter() {
            let inverse = relabel[&v]
                .iter()
                .find(|&(_, &new)| new == c)
                .map(|(&old, _)| old)
                .expect("relabeling is a bijection");
            back.set(v, inverse);
        }
        if !cov0.is_dp_coloring(&back) {
            failing_step = Some("verify: pulled-back coloring invalid".to_string());
            break 'runs;
        }
    }

    let residual_checks: Vec<ResidualCheck> = spec
        .residual_bounds
        .iter()
        .map(|&(label, bound)| {
            let (lo, hi) = observed.get(label).copied().unwrap_or((0, 0));
            let ok = match bound {
                Bound::AtLeast(n) => lo >= n,
                Bound::Exactly(n) => lo == n && hi == n,
            };
            ResidualCheck {
                label: label.to_string(),
                bound,
                observed_min: lo,
                observed_max: hi,
                ok,
            }
        })
        .collect();
    let success =
        failing_step.is_none() && no_new_cycles && triangle_ok && residual_checks.iter().all(|c| c.ok);
    Ok(ReplayReport {
        name: spec.name.to_string(),
        runs: REPLAY_RUNS as u64,
        steps,
        residual_checks,
        short_cycle_range: [*spec.cycle_range.start(), *spec.cycle_range.end()],
        no_new_short_cycles: no_new_cycles,
        quotient_triangle_distance_ok: triangle_ok,
        success,
        failing_step,
        last_instance_json,
    })
}

fn free_colors(
    cov: &crate::dp_cover::CoverGraph,
    phi: &PartialColoring,
    v: Vertex,
) -> Vec<Color> {
    let res = residual_lists(cov, phi);
    res.get(v).map(|s| s.iter().copied().collect()).unwrap_or_default()
}
