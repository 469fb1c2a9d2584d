//! Subgraph-with-boundary patterns.
//!
//! A [`Configuration`] is a pattern graph `H` with a distinguished boundary
//! vertex list, per-vertex degree constraints (the degree each vertex must
//! have in the host graph) and internality flags. Configurations serve two
//! purposes:
//!
//! * reducibility checking — the non-boundary vertices carry exact host
//!   degrees, and the difference between host degree and pattern degree is the
//!   number of attachment edges into the colored remainder of the host;
//! * pinned template matching — for 9-cycle classification the boundary is an
//!   ordered cycle, and a candidate cycle is matched by induced subgraph
//!   isomorphism with the boundary pinned onto it.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::SimpleGraph;
use crate::{edge, Edge, Vertex};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("configuration parse error: {0}")]
    Parse(String),
    #[error("boundary vertex {0} is not in the pattern")]
    BoundaryNotInPattern(Vertex),
    #[error("vertex {0}: host degree {1} below pattern degree {2}")]
    DegreeBelowPattern(Vertex, usize, usize),
    #[error("pattern is not connected")]
    Disconnected,
    #[error("ordering is not a permutation of the non-boundary vertices")]
    BadOrdering,
}

/// Degree requirement of a pattern vertex in the host graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeBound {
    Exact(usize),
    AtLeast(usize),
}

impl DegreeBound {
    /// The smallest host degree satisfying the bound.
    pub fn minimum(self) -> usize {
        match self {
            DegreeBound::Exact(d) | DegreeBound::AtLeast(d) => d,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexConstraint {
    pub degree: DegreeBound,
    pub internal: bool,
}

/// A pattern graph with boundary and per-vertex constraints.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Configuration {
    pub name: String,
    /// Pattern edges; vertices are the union of endpoint ids and constraint
    /// keys.
    pub edges: Vec<Edge>,
    /// Boundary vertices. For cycle templates this is the distinguished
    /// cycle, in order; for reducible configurations it may be empty.
    pub boundary: Vec<Vertex>,
    pub constraints: BTreeMap<Vertex, VertexConstraint>,
    /// Vertex order used by the constructive extension argument, when one
    /// exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
}

impl Configuration {
    pub fn from_json_str(text: &str) -> Result<Self, ConfigError> {
        let cfg: Configuration =
            serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("configuration serialization cannot fail")
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        let mut out: BTreeSet<Vertex> = self.constraints.keys().copied().collect();
        for &(u, v) in &self.edges {
            out.insert(u);
            out.insert(v);
        }
        for &b in &self.boundary {
            out.insert(b);
        }
        out
    }

    pub fn non_boundary(&self) -> Vec<Vertex> {
        let boundary: BTreeSet<Vertex> = self.boundary.iter().copied().collect();
        self.vertices()
            .into_iter()
            .filter(|v| !boundary.contains(v))
            .collect()
    }

    pub fn pattern_graph(&self) -> SimpleGraph {
        SimpleGraph::new(self.vertices(), self.edges.iter().copied().map(|(u, v)| edge(u, v)))
            .expect("validated configuration pattern")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let vertices = self.vertices();
        for &b in &self.boundary {
            if !vertices.contains(&b) {
                return Err(ConfigError::BoundaryNotInPattern(b));
            }
        }
        let pattern = self.pattern_graph();
        if !pattern.is_connected() {
            return Err(ConfigError::Disconnected);
        }
        for (&v, c) in &self.constraints {
            let pat_deg = pattern.degree(v);
            if c.degree.minimum() < pat_deg {
                return Err(ConfigError::DegreeBelowPattern(
                    v,
                    c.degree.minimum(),
                    pat_deg,
                ));
            }
        }
        if let Some(order) = &self.ordering {
            let expect: BTreeSet<Vertex> = self.non_boundary().into_iter().collect();
            let got: BTreeSet<Vertex> = order.iter().copied().collect();
            if got != expect || got.len() != order.len() {
                return Err(ConfigError::BadOrdering);
            }
        }
        Ok(())
    }

    /// Host degree required for `v`: the constraint if present, else the
    /// pattern degree.
    pub fn host_degree(&self, v: Vertex, pattern: &SimpleGraph) -> usize {
        self.constraints
            .get(&v)
            .map(|c| c.degree.minimum())
            .unwrap_or_else(|| pattern.degree(v))
    }
}

/// Pinned induced subgraph isomorphism: does `g` contain an induced copy of
/// `tpl` in which the template boundary cycle maps onto `cycle` (in some
/// rotation/reflection) and the remaining template vertices map off the cycle?
pub fn matches_pinned_cycle(g: &SimpleGraph, cycle: &[Vertex], tpl: &Configuration) -> bool {
    let b = tpl.boundary.len();
    if b != cycle.len() || b == 0 {
        return false;
    }
    let pattern = tpl.pattern_graph();
    let interior = tpl.non_boundary();
    // all rotations of both directions
    for reflect in [false, true] {
        for shift in 0..b {
            let mut assign: BTreeMap<Vertex, Vertex> = BTreeMap::new();
            for (i, &p) in tpl.boundary.iter().enumerate() {
                let j = if reflect {
                    (b + shift + b - i) % b
                } else {
                    (shift + i) % b
                };
                assign.insert(p, cycle[j]);
            }
            if !boundary_edges_match(g, &pattern, tpl, &assign) {
                continue;
            }
            if extend_interior(g, &pattern, cycle, &interior, 0, &mut assign) {
                return true;
            }
        }
    }
    false
}

fn boundary_edges_match(
    g: &SimpleGraph,
    pattern: &SimpleGraph,
    tpl: &Configuration,
    assign: &BTreeMap<Vertex, Vertex>,
) -> bool {
    let bd = &tpl.boundary;
    for i in 0..bd.len() {
        for j in i + 1..bd.len() {
            let want = pattern.has_edge(bd[i], bd[j]);
            let have = g.has_edge(assign[&bd[i]], assign[&bd[j]]);
            if want != have {
                return false;
            }
        }
    }
    true
}

fn extend_interior(
    g: &SimpleGraph,
    pattern: &SimpleGraph,
    cycle: &[Vertex],
    interior: &[Vertex],
    next: usize,
    assign: &mut BTreeMap<Vertex, Vertex>,
) -> bool {
    if next == interior.len() {
        return true;
    }
    let p = interior[next];
    let used: BTreeSet<Vertex> = assign.values().copied().collect();
    let on_cycle: BTreeSet<Vertex> = cycle.iter().copied().collect();
    'candidates: for &w in g.vertices() {
        if used.contains(&w) || on_cycle.contains(&w) {
            continue;
        }
        // induced: agree on edges and non-edges against everything assigned
        for (&q, &wq) in assign.iter() {
            if pattern.has_edge(p, q) != g.has_edge(w, wq) {
                continue 'candidates;
            }
        }
        assign.insert(p, w);
        if extend_interior(g, pattern, cycle, interior, next + 1, assign) {
            return true;
        }
        assign.remove(&p);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_template() -> Configuration {
        // a square with one inner vertex joined to two opposite corners
        Configuration {
            name: "toy".into(),
            edges: vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (2, 4)],
            boundary: vec![0, 1, 2, 3],
            constraints: BTreeMap::new(),
            ordering: None,
            notes: String::new(),
        }
    }

    #[test]
    fn pinned_match_respects_inducedness() {
        let tpl = toy_template();
        let g = SimpleGraph::new(
            0..5,
            [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (2, 4)],
        )
        .unwrap();
        assert!(matches_pinned_cycle(&g, &[0, 1, 2, 3], &tpl));
        // an extra edge from the inner vertex breaks inducedness
        let h = SimpleGraph::new(
            0..5,
            [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (2, 4), (1, 4)],
        )
        .unwrap();
        assert!(!matches_pinned_cycle(&h, &[0, 1, 2, 3], &tpl));
        // rotated cycles still match
        assert!(matches_pinned_cycle(&g, &[1, 2, 3, 0], &tpl));
        assert!(matches_pinned_cycle(&g, &[3, 2, 1, 0], &tpl));
    }

    #[test]
    fn validation_catches_bad_orderings() {
        let mut tpl = toy_template();
        tpl.ordering = Some(vec![4]);
        assert!(tpl.validate().is_ok());
        tpl.ordering = Some(vec![0, 4]);
        assert!(matches!(tpl.validate(), Err(ConfigError::BadOrdering)));
    }

    #[test]
    fn json_round_trip() {
        let tpl = toy_template();
        let text = tpl.to_json_string();
        let back = Configuration::from_json_str(&text).unwrap();
        assert_eq!(back.name, "toy");
        assert_eq!(back.boundary, vec![0, 1, 2, 3]);
        assert_eq!(back.edges.len(), 6);
    }
}
