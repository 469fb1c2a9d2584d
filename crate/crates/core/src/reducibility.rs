//! Reducible configurations and their verification.
//!
//! A configuration is reducible when every DP-k-coloring of its surroundings
//! extends inward. Two independent routes establish that here:
//!
//! * the *ordering route*: [`check_near_2_degenerate`] verifies the
//!   three-condition vertex ordering and [`greedy_extend`] performs the
//!   constructive extension it licenses — color the first vertex so that its
//!   constraint on the last vertex duplicates one it already has (through the
//!   straightened closing edge), sweep the middle vertices greedily, finish
//!   with the last;
//! * the *oracle route*: [`brute_verify_reducible`] enumerates instances
//!   exhaustively and decides each with the exact solver, never consulting
//!   the ordering.
//!
//! The oracle enumerates up to color relabeling: a spanning tree of the
//! pattern is straightened to the identity (sound because relabeling is a
//! per-vertex bijection), non-tree edges range over all `k!` perfect
//! matchings, and each attachment edge reduces to the single color it
//! forbids inside the pattern. The raw space (all matchings on all edges
//! times all outside colorings) collapses onto exactly these instances, so
//! "true" means reducible outright; "false" additionally assumes the
//! boundary subgraph itself is k-colorable (it always is for the built-in
//! configurations, which have no boundary edges at all).

pub mod replay;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::configuration::{ConfigError, Configuration};
use crate::dp_cover::{
    build_cover, CoverError, ListAssignment, MatchingAssignment, PartialColoring,
};
use crate::graph::SimpleGraph;
use crate::plane_graph::PlaneError;
use crate::solver::uniform;
use crate::{edge, Color, Edge, Vertex};

/// Oracle size guards.
pub const ORACLE_PATTERN_LIMIT: usize = 12;
pub const ORACLE_INSTANCE_LIMIT: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum ReduceError {
    #[error("unknown configuration {0:?}")]
    UnknownName(String),
    #[error("order is not a permutation of the non-boundary vertices")]
    OrderNotPermutation,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("lemma hypothesis violated: {0}")]
    LemmaHypothesisViolated(String),
    #[error("pattern has {0} vertices, oracle limit is {ORACLE_PATTERN_LIMIT}")]
    PatternTooLarge(usize),
    #[error("oracle needs {0} instances, limit is {ORACLE_INSTANCE_LIMIT}")]
    TooManyInstances(u128),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

/// The vertex order `v_1, ..., v_l` of a constructive extension argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrder(pub Vec<Vertex>);

impl DegeneracyOrder {
    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }
}

/// Checks the three near-2-degeneracy conditions of `order` for the subgraph
/// on `h` inside `g`:
///
/// 1. `v_1 v_l` is an edge and `v_1` has no neighbor outside `h`;
/// 2. `d(v_l) <= k` and `v_l` has a neighbor outside `h`;
/// 3. every middle vertex has at most `k-1` neighbors among earlier vertices
///    and the outside.
pub fn check_near_2_degenerate(
    g: &SimpleGraph,
    h: &[Vertex],
    order: &DegeneracyOrder,
    k: usize,
) -> Result<bool, ReduceError> {
    let hset: BTreeSet<Vertex> = h.iter().copied().collect();
    let oset: BTreeSet<Vertex> = order.0.iter().copied().collect();
    if hset != oset || order.0.len() != h.len() || order.0.len() < 2 {
        return Err(ReduceError::OrderNotPermutation);
    }
    let seq = &order.0;
    let (v1, vl) = (seq[0], seq[seq.len() - 1]);

    if !g.has_edge(v1, vl) || g.neighbors(v1).any(|w| !hset.contains(&w)) {
        return Ok(false);
    }
    if g.degree(vl) > k || !g.neighbors(vl).any(|w| !hset.contains(&w)) {
        return Ok(false);
    }
    let pos: BTreeMap<Vertex, usize> = seq.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for (i, &v) in seq.iter().enumerate().take(seq.len() - 1).skip(1) {
        let early_or_outside = g
            .neighbors(v)
            .filter(|w| !hset.contains(w) || pos[w] < i)
            .count();
        if early_or_outside > k - 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Extends a coloring of `g - h` to all of `g`, following the order.
///
/// The first vertex's color is chosen so that the constraint it sends to the
/// last vertex (through their shared edge) duplicates one the last vertex
/// already receives from its colored outside neighbor, or lands on an
/// unmatched color; middle vertices then always see at most `k-1` constraints
/// and the last vertex at most `k-1` distinct ones.
pub fn greedy_extend(
    g: &SimpleGraph,
    l: &ListAssignment,
    m: &MatchingAssignment,
    h: &[Vertex],
    order: &DegeneracyOrder,
    k: usize,
    phi: &PartialColoring,
) -> Result<PartialColoring, ReduceError> {
    if !check_near_2_degenerate(g, h, order, k)? {
        return Err(ReduceError::PreconditionFailed(
            "ordering fails the near-2-degeneracy conditions".into(),
        ));
    }
    let hset: BTreeSet<Vertex> = h.iter().copied().collect();
    for &v in g.vertices() {
        let inside = hset.contains(&v);
        let colored = phi.get(v).is_some();
        if inside == colored {
            return Err(ReduceError::PreconditionFailed(format!(
                "vertex {v} must be colored iff it lies outside the subgraph"
            )));
        }
    }
    let cov = build_cover(g, l, m)?;
    cov.check_partial(phi)?;

    let seq = &order.0;
    let (v1, vl) = (seq[0], seq[seq.len() - 1]);
    let mut coloring = phi.clone();

    let u_star = g
        .neighbors(vl)
        .filter(|w| !hset.contains(w))
        .min()
        .expect("condition (2) gives an outside neighbor");
    let constraint_from_outside = cov.matched_color(u_star, phi.get(u_star).unwrap(), vl);
    let list_v1 = cov.list_of(v1).to_vec();
    let c1 = match constraint_from_outside {
        Some(cu) => list_v1
            .iter()
            .copied()
            .find(|&c| cov.matched_color(v1, c, vl) == Some(cu))
            .or_else(|| {
                list_v1
                    .iter()
                    .copied()
                    .find(|&c| cov.matched_color(v1, c, vl).is_none())
            }),
        None => list_v1
            .iter()
            .copied()
            .find(|&c| cov.matched_color(v1, c, vl).is_none()),
    }
    .or_else(|| list_v1.first().copied())
    .ok_or_else(|| ReduceError::LemmaHypothesisViolated(format!("empty list at {v1}")))?;
    coloring.set(v1, c1);

    for &v in &seq[1..] {
        let forbidden: BTreeSet<Color> = g
            .neighbors(v)
            .filter_map(|w| coloring.get(w).and_then(|cw| cov.matched_color(w, cw, v)))
            .collect();
        let free = cov
            .list_of(v)
            .iter()
            .copied()
            .find(|c| !forbidden.contains(c))
            .ok_or_else(|| {
                ReduceError::LemmaHypothesisViolated(format!("no free color at {v}"))
            })?;
        coloring.set(v, free);
    }
    if !cov.is_dp_coloring(&coloring) {
        return Err(ReduceError::LemmaHypothesisViolated(
            "completed coloring failed validation".into(),
        ));
    }
    Ok(coloring)
}

/// A configuration embedded in its minimal host: the pattern plus one fresh
/// degree-1 phantom per unit of degree slack. Boundary vertices and phantoms
/// together play the colored outside.
#[derive(Debug, Clone)]
pub struct MaterializedConfig {
    pub host: SimpleGraph,
    pub h_vertices: Vec<Vertex>,
    pub outside: Vec<Vertex>,
    /// Attachment edges as (inside endpoint, outside endpoint); includes the
    /// explicit pattern edges into the boundary.
    pub attachments: Vec<(Vertex, Vertex)>,
    pub h_edges: Vec<Edge>,
    pub boundary_edges: Vec<Edge>,
}

pub fn materialize(cfg: &Configuration) -> Result<MaterializedConfig, ReduceError> {
    cfg.validate()?;
    let pattern = cfg.pattern_graph();
    let bset: BTreeSet<Vertex> = cfg.boundary.iter().copied().collect();
    let h_vertices = cfg.non_boundary();

    let mut vertices: Vec<Vertex> = pattern.vertices().to_vec();
    let mut edges: Vec<Edge> = pattern.edges().collect();
    let mut attachments = Vec::new();
    let mut outside: Vec<Vertex> = cfg.boundary.clone();
    let mut h_edges = Vec::new();
    let mut boundary_edges = Vec::new();

    for &(u, v) in &edges.clone() {
        match (bset.contains(&u), bset.contains(&v)) {
            (false, false) => h_edges.push(edge(u, v)),
            (true, true) => boundary_edges.push(edge(u, v)),
            (true, false) => attachments.push((v, u)),
            (false, true) => attachments.push((u, v)),
        }
    }
    let mut next = vertices.iter().copied().max().unwrap_or(0) + 1;
    for &v in &h_vertices {
        let want = cfg.host_degree(v, &pattern);
        for _ in pattern.degree(v)..want {
            vertices.push(next);
            edges.push(edge(v, next));
            attachments.push((v, next));
            outside.push(next);
            next += 1;
        }
    }
    let host = SimpleGraph::new(vertices, edges).expect("materialized host is simple");
    Ok(MaterializedConfig {
        host,
        h_vertices,
        outside,
        attachments,
        h_edges,
        boundary_edges,
    })
}

/// Aggregate outcome of exhausting a configuration's instance space.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigVerification {
    pub name: String,
    /// Whether the shipped ordering passes the degeneracy check, when the
    /// configuration has one.
    pub ordering_valid: Option<bool>,
    pub instances: u64,
    /// Every enumerated instance is extendable (solver route).
    pub oracle_reducible: bool,
    /// Every enumerated instance was extended by the greedy construction
    /// (ordering route); only run when an ordering exists and `run_greedy`.
    pub greedy_all_succeeded: Option<bool>,
    /// Per-instance agreement between the two routes.
    pub routes_agree: Option<bool>,
}

struct InstanceSpace {
    hhost: uniform::Host,
    perms: uniform::Perms,
    /// permutation slot per dense h-edge: `None` = spanning tree (identity)
    free_slot: Vec<Option<usize>>,
    free_count: usize,
    /// dense index of the inside endpoint of each attachment
    attach_inside: Vec<usize>,
    total: u64,
}

fn build_space(mat: &MaterializedConfig, k: Color) -> Result<InstanceSpace, ReduceError> {
    let hgraph = SimpleGraph::new(
        mat.h_vertices.iter().copied(),
        mat.h_edges.iter().copied(),
    )
    .expect("pattern subgraph is simple");
    let hhost = uniform::Host::from_simple(&hgraph);
    let perms = uniform::Perms::new(k as usize);

    // spanning forest by depth-first search
    let mut tree: BTreeSet<Edge> = BTreeSet::new();
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    for &root in &mat.h_vertices {
        if !seen.insert(root) {
            continue;
        }
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for w in hgraph.neighbors(u) {
                if seen.insert(w) {
                    tree.insert(edge(u, w));
                    stack.push(w);
                }
            }
        }
    }
    let mut free_slot = Vec::with_capacity(hhost.edges.len());
    let mut free_count = 0;
    for &(i, j) in &hhost.edges {
        let e = edge(hhost.ids[i], hhost.ids[j]);
        if tree.contains(&e) {
            free_slot.push(None);
        } else {
            free_slot.push(Some(free_count));
            free_count += 1;
        }
    }
    let attach_inside: Vec<usize> = mat
        .attachments
        .iter()
        .map(|&(hv, _)| {
            hgraph
                .index_of(hv)
                .expect("attachment endpoint lies in the pattern")
        })
        .collect();

    let total_u128 =
        (perms.count() as u128).pow(free_count as u32) * (k as u128).pow(attach_inside.len() as u32);
    if total_u128 > ORACLE_INSTANCE_LIMIT as u128 {
        return Err(ReduceError::TooManyInstances(total_u128));
    }
    Ok(InstanceSpace {
        hhost,
        perms,
        free_slot,
        free_count,
        attach_inside,
        total: total_u128 as u64,
    })
}

impl InstanceSpace {
    /// Decodes instance `index` into per-edge permutation indices and the
    /// forbidden color (0-based) per attachment.
    fn decode(&self, mut index: u64, k: u64) -> (Vec<usize>, Vec<u8>) {
        let base = self.perms.count() as u64;
        let mut frees = vec![0usize; self.free_count];
        for f in frees.iter_mut() {
            *f = (index % base) as usize;
            index /= base;
        }
        let mut forb = vec![0u8; self.attach_inside.len()];
        for f in forb.iter_mut() {
            *f = (index % k) as u8;
            index /= k;
        }
        let assignment: Vec<usize> = self
            .free_slot
            .iter()
            .map(|s| s.map_or(0, |slot| frees[slot]))
            .collect();
        (assignment, forb)
    }

    fn initial_domains(&self, k: usize, forbidden: &[u8]) -> Vec<u32> {
        let full = (1u32 << k) - 1;
        let mut dom = vec![full; self.hhost.n()];
        for (slot, &f) in forbidden.iter().enumerate() {
            dom[self.attach_inside[slot]] &= !(1u32 << f);
        }
        dom
    }
}

/// Matching assignment over the materialized host realizing one enumerated
/// instance: identity on tree edges, the chosen permutation on free edges,
/// and a transposition on each attachment so that outside color 1 forbids
/// exactly the enumerated color inside. Boundary-boundary edges carry no
/// constraint.
fn instance_matchings(
    mat: &MaterializedConfig,
    space: &InstanceSpace,
    k: Color,
    assignment: &[usize],
    forbidden: &[u8],
) -> MatchingAssignment {
    let mut m = MatchingAssignment::new();
    for (eidx, &(i, j)) in space.hhost.edges.iter().enumerate() {
        let p = &space.perms.perms[assignment[eidx]];
        let pairs: Vec<(Color, Color)> = (0..k as usize)
            .map(|c| (c as Color + 1, p[c] as Color + 1))
            .collect();
        m.set(space.hhost.ids[i], space.hhost.ids[j], pairs);
    }
    for (slot, &(hv, ov)) in mat.attachments.iter().enumerate() {
        let f = forbidden[slot];
        let swap = |c: u8| -> u8 {
            if c == 0 {
                f
            } else if c == f {
                0
            } else {
                c
            }
        };
        let pairs: Vec<(Color, Color)> = (0..k).map(|c| (c + 1, swap(c) + 1)).collect();
        m.set(ov, hv, pairs);
    }
    for &(u, v) in &mat.boundary_edges {
        m.set(u, v, Vec::new());
    }
    m
}

/// Exhausts a configuration's instance space. When the configuration ships
/// an ordering and `run_greedy` is set, the greedy extension runs on every
/// instance alongside the solver and the verdicts are compared.
pub fn verify_configuration(
    cfg: &Configuration,
    k: Color,
    run_greedy: bool,
) -> Result<ConfigVerification, ReduceError> {
    let n = cfg.vertices().len();
    if n > ORACLE_PATTERN_LIMIT {
        return Err(ReduceError::PatternTooLarge(n));
    }
    let mat = materialize(cfg)?;
    let space = build_space(&mat, k)?;

    let order = cfg.ordering.clone().map(DegeneracyOrder);
    let ordering_valid = match &order {
        Some(o) => Some(check_near_2_degenerate(
            &mat.host,
            &mat.h_vertices,
            o,
            k as usize,
        )?),
        None => None,
    };

    let greedy_active = run_greedy && matches!(ordering_valid, Some(true));
    let l_full = ListAssignment::uniform(mat.host.vertices().iter().copied(), k);
    let phi_outside =
        PartialColoring::from_pairs(mat.outside.iter().map(|&v| (v, 1 as Color)));

    let (sat_all, greedy_all, agree_all) = (0..space.total)
        .into_par_iter()
        .map(|i| {
            let (assignment, forbidden) = space.decode(i, k as u64);
            let dom = space.initial_domains(k as usize, &forbidden);
            let sat = uniform::solve_uniform(&space.hhost, &space.perms, &assignment, Some(&dom), &[])
                .is_some();
            let greedy_ok = if greedy_active {
                let m = instance_matchings(&mat, &space, k, &assignment, &forbidden);
                Some(
                    greedy_extend(
                        &mat.host,
                        &l_full,
                        &m,
                        &mat.h_vertices,
                        order.as_ref().unwrap(),
                        k as usize,
                        &phi_outside,
                    )
                    .is_ok(),
                )
            } else {
                None
            };
            let agree = greedy_ok.map(|ok| ok == sat);
            (sat, greedy_ok, agree)
        })
        .reduce(
            || (true, Some(true), Some(true)),
            |(s1, g1, a1), (s2, g2, a2)| {
                let and_opt = |x: Option<bool>, y: Option<bool>| match (x, y) {
                    (Some(a), Some(b)) => Some(a && b),
                    (Some(a), None) | (None, Some(a)) => Some(a),
                    (None, None) => None,
                };
                (s1 && s2, and_opt(g1, g2), and_opt(a1, a2))
            },
        );

    Ok(ConfigVerification {
        name: cfg.name.clone(),
        ordering_valid,
        instances: space.total,
        oracle_reducible: sat_all,
        greedy_all_succeeded: if greedy_active { greedy_all } else { None },
        routes_agree: if greedy_active { agree_all } else { None },
    })
}

/// True iff for every enumerated matching assignment and outside coloring a
/// completion of the pattern exists (decided by the exact solver).
pub fn brute_verify_reducible(cfg: &Configuration, k: Color) -> Result<bool, ReduceError> {
    Ok(verify_configuration(cfg, k, false)?.oracle_reducible)
}

const BUILTIN_SOURCES: &[&str] = &[
    include_str!("../configs/v1/lemma-2.3b.json"),
    include_str!("../configs/v1/lemma-2.3c.json"),
    include_str!("../configs/v1/lemma-2.4.json"),
    include_str!("../configs/v1/lemma-2.5.json"),
    include_str!("../configs/v1/lemma-3.3a-case1.json"),
    include_str!("../configs/v1/lemma-3.3a-case2.json"),
    include_str!("../configs/v1/lemma-3.3c.json"),
    include_str!("../configs/v1/bad9-apex.json"),
    include_str!("../configs/v1/bad9-core-triangle.json"),
];

/// The named configurations shipped with the crate, orderings included where
/// a constructive argument exists (the identification-based ones carry none).
pub fn builtin_configurations() -> Vec<Configuration> {
    BUILTIN_SOURCES
        .iter()
        .map(|text| Configuration::from_json_str(text).expect("builtin configurations are valid"))
        .collect()
}

pub fn builtin(name: &str) -> Result<Configuration, ReduceError> {
    builtin_configurations()
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| ReduceError::UnknownName(name.to_string()))
}

/// The two 9-cycle templates, for pinned classification.
pub fn builtin_bad9_templates() -> Vec<Configuration> {
    builtin_configurations()
        .into_iter()
        .filter(|c| c.boundary.len() == 9)
        .collect()
}

pub use replay::{replay_identification_proof, ReplayReport};
