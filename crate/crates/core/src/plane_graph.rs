//! Plane graphs as rotation systems.
//!
//! A [`PlaneGraph`] stores, for every vertex, the counterclockwise cyclic
//! order of its neighbors. Faces are not stored; [`PlaneGraph::trace_faces`]
//! derives them with the next-edge-in-rotation rule, so Euler's formula is a
//! checkable property of every instance rather than an assumption. The outer
//! face is designated explicitly in the input (as a cycle of vertex ids), not
//! inferred geometrically.
//!
//! On top of the embedding the module provides the structural predicates the
//! auditing pipeline needs: fixed-length cycle enumeration, triangle distance,
//! separating-cycle and chord detection, vertex identification through a
//! shared face, and classification of 9-cycles against pinned templates.

pub mod builder;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::configuration::Configuration;
use crate::graph::SimpleGraph;
use crate::{edge, Edge, Vertex};

#[derive(Debug, Error)]
pub enum PlaneError {
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("vertex {0} appears twice in the rotation of {1}")]
    ParallelEdge(Vertex, Vertex),
    #[error("rotation of {0} lists {1}, but not vice versa")]
    AsymmetricRotation(Vertex, Vertex),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("requires connected graph")]
    Disconnected,
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("cycle has length {0}, expected {1}")]
    WrongCycleLength(usize, usize),
    #[error("cycle length {0} out of supported range 3..=12")]
    LengthOutOfRange(usize),
    #[error("outer cycle does not bound a face")]
    OuterNotAFace,
    #[error("no outer face designated")]
    NoOuterFace,
    #[error("cannot identify adjacent vertices {0} and {1}")]
    IdentifyAdjacent(Vertex, Vertex),
    #[error("vertices {0} and {1} have common neighbor {2}")]
    CommonNeighbor(Vertex, Vertex, Vertex),
    #[error("vertices {0} and {1} share no face")]
    NoCommonFace(Vertex, Vertex),
    #[error("graph parse error: {0}")]
    Parse(String),
}

/// A plane graph: simple graph plus a counterclockwise rotation per vertex and
/// an optional designated outer cycle.
#[derive(Debug, Clone)]
pub struct PlaneGraph {
    rotation: BTreeMap<Vertex, Vec<Vertex>>,
    outer: Option<Vec<Vertex>>,
}

/// One face of the embedding: the closed walk of directed edges traced by the
/// next-edge-in-rotation rule. On bridges the walk uses both directions of the
/// same edge, so vertices may repeat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// Directed edges in walk order; `boundary[i].1 == boundary[i+1].0`.
    pub boundary: Vec<(Vertex, Vertex)>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.boundary.len()
    }

    /// Vertices in walk order (with repeats on cut vertices).
    pub fn walk_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.boundary.iter().map(|&(u, _)| u)
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.walk_vertices().collect()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.boundary.iter().any(|&(u, _)| u == v)
    }

    pub fn undirected_edges(&self) -> BTreeSet<Edge> {
        self.boundary.iter().map(|&(u, v)| edge(u, v)).collect()
    }

    /// True when the walk visits every vertex exactly once, i.e. the boundary
    /// is a simple cycle.
    pub fn is_simple_cycle(&self) -> bool {
        let set = self.vertex_set();
        set.len() == self.boundary.len()
    }

    /// Sorted multiset of vertex degrees along the walk, e.g. `[3,3,4]` for a
    /// (3,3,4)-face.
    pub fn degree_profile(&self, g: &PlaneGraph) -> Vec<usize> {
        let mut profile: Vec<usize> = self.walk_vertices().map(|v| g.degree(v)).collect();
        profile.sort_unstable();
        profile
    }
}

/// A simple cycle, stored as its vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CycleRef(Vec<Vertex>);

impl CycleRef {
    /// Builds a cycle reference, checking that the vertices are distinct and
    /// consecutively adjacent in `g` (cyclically).
    pub fn new(g: &PlaneGraph, vertices: Vec<Vertex>) -> Result<Self, PlaneError> {
        if vertices.len() < 3 {
            return Err(PlaneError::NotACycle("fewer than 3 vertices".into()));
        }
        let set: BTreeSet<Vertex> = vertices.iter().copied().collect();
        if set.len() != vertices.len() {
            return Err(PlaneError::NotACycle("repeated vertex".into()));
        }
        for i in 0..vertices.len() {
            let u = vertices[i];
            let v = vertices[(i + 1) % vertices.len()];
            if !g.has_edge(u, v) {
                return Err(PlaneError::NotACycle(format!("missing edge {u}-{v}")));
            }
        }
        Ok(Self(vertices))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.0.iter().copied().collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.0.len()).map(move |i| edge(self.0[i], self.0[(i + 1) % self.0.len()]))
    }

    /// Canonical representative under rotation and reflection: the
    /// lexicographically smallest of all 2n rotations of both directions.
    pub fn canonical(&self) -> Vec<Vertex> {
        let n = self.0.len();
        let mut best: Option<Vec<Vertex>> = None;
        let mut reversed = self.0.clone();
        reversed.reverse();
        for seq in [&self.0, &reversed] {
            for start in 0..n {
                let cand: Vec<Vertex> = (0..n).map(|i| seq[(start + i) % n]).collect();
                if best.as_ref().map_or(true, |b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        best.unwrap()
    }
}

/// Verdict of [`PlaneGraph::classify_9cycle`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NineCycleClass {
    Good,
    Bad { template: String },
}

impl NineCycleClass {
    pub fn is_bad(&self) -> bool {
        matches!(self, NineCycleClass::Bad { .. })
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    vertices: Vec<Vertex>,
    rotation: BTreeMap<String, Vec<Vertex>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    outer: Option<Vec<Vertex>>,
}

impl PlaneGraph {
    /// Builds a plane graph from per-vertex counterclockwise neighbor lists.
    ///
    /// Every edge must appear exactly once in each endpoint's rotation; loops
    /// and parallel edges are rejected. When `outer` is given the graph must
    /// be connected and the cycle must bound a traced face.
    pub fn from_rotations(
        rotation: BTreeMap<Vertex, Vec<Vertex>>,
        outer: Option<Vec<Vertex>>,
    ) -> Result<Self, PlaneError> {
        for (&v, nbrs) in &rotation {
            let mut seen = BTreeSet::new();
            for &w in nbrs {
                if w == v {
                    return Err(PlaneError::Loop(v));
                }
                if !seen.insert(w) {
                    return Err(PlaneError::ParallelEdge(w, v));
                }
                match rotation.get(&w) {
                    None => return Err(PlaneError::AsymmetricRotation(v, w)),
                    Some(back) => {
                        if back.iter().filter(|&&x| x == v).count() != 1 {
                            return Err(PlaneError::AsymmetricRotation(v, w));
                        }
                    }
                }
            }
        }
        let g = Self { rotation, outer };
        if let Some(cycle) = g.outer.clone() {
            let c = CycleRef::new(&g, cycle)?;
            g.face_bounded_by(&c)?;
        }
        Ok(g)
    }

    pub fn from_json_str(text: &str) -> Result<Self, PlaneError> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| PlaneError::Parse(e.to_string()))?;
        let declared: BTreeSet<Vertex> = file.vertices.iter().copied().collect();
        let mut rotation = BTreeMap::new();
        for (key, nbrs) in file.rotation {
            let v: Vertex = key
                .parse()
                .map_err(|_| PlaneError::Parse(format!("bad vertex key {key:?}")))?;
            if !declared.contains(&v) {
                return Err(PlaneError::UnknownVertex(v));
            }
            rotation.insert(v, nbrs);
        }
        for &v in &declared {
            rotation.entry(v).or_default();
        }
        Self::from_rotations(rotation, file.outer)
    }

    pub fn to_json_string(&self) -> String {
        let file = GraphFile {
            vertices: self.vertices().to_vec(),
            rotation: self
                .rotation
                .iter()
                .map(|(v, nbrs)| (v.to_string(), nbrs.clone()))
                .collect(),
            outer: self.outer.clone(),
        };
        serde_json::to_string_pretty(&file).expect("graph serialization cannot fail")
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.rotation.keys().copied().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.values().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> BTreeSet<Edge> {
        let mut out = BTreeSet::new();
        for (&v, nbrs) in &self.rotation {
            for &w in nbrs {
                out.insert(edge(v, w));
            }
        }
        out
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.rotation.contains_key(&v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotation.get(&v).map_or(0, Vec::len)
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        self.rotation
            .get(&v)
            .map_or(&[], Vec::as_slice)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.rotation.get(&u).is_some_and(|nbrs| nbrs.contains(&v))
    }

    pub fn outer_cycle(&self) -> Option<&[Vertex]> {
        self.outer.as_deref()
    }

    /// Embedding-free view of the same graph.
    pub fn simple(&self) -> SimpleGraph {
        SimpleGraph::new(self.vertices(), self.edges())
            .expect("a valid plane graph is a valid simple graph")
    }

    pub fn is_connected(&self) -> bool {
        self.simple().is_connected()
    }

    fn successor_in_rotation(&self, at: Vertex, after: Vertex) -> Vertex {
        let nbrs = &self.rotation[&at];
        let pos = nbrs
            .iter()
            .position(|&x| x == after)
            .expect("successor_in_rotation: edge not in rotation");
        nbrs[(pos + 1) % nbrs.len()]
    }

    /// Traces all faces of the embedding.
    ///
    /// The walk rule is `next(u -> v) = (v, w)` with `w` the successor of `u`
    /// in the rotation of `v`; every directed edge lies on exactly one face,
    /// so the face degrees sum to `2|E|`. Errors on disconnected graphs, where
    /// the rotation system does not determine a single embedding.
    pub fn trace_faces(&self) -> Result<Vec<Face>, PlaneError> {
        if !self.is_connected() {
            return Err(PlaneError::Disconnected);
        }
        let mut remaining: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
        for (&v, nbrs) in &self.rotation {
            for &w in nbrs {
                remaining.insert((v, w));
            }
        }
        let mut faces = Vec::new();
        while let Some(&start) = remaining.iter().next() {
            let mut boundary = Vec::new();
            let mut cur = start;
            loop {
                boundary.push(cur);
                remaining.remove(&cur);
                let (u, v) = cur;
                cur = (v, self.successor_in_rotation(v, u));
                if cur == start {
                    break;
                }
            }
            faces.push(Face {
                id: faces.len(),
                boundary,
            });
        }
        debug_assert_eq!(
            faces.iter().map(Face::degree).sum::<usize>(),
            2 * self.edge_count()
        );
        Ok(faces)
    }

    /// Finds the face whose boundary walk is exactly the given cycle, up to
    /// rotation and reflection. A cycle bounding both its sides (as in a bare
    /// cycle graph) resolves to the lowest face id.
    pub fn face_bounded_by(&self, c: &CycleRef) -> Result<usize, PlaneError> {
        let faces = self.trace_faces()?;
        let target = c.canonical();
        for face in &faces {
            if face.degree() == c.len() && face.is_simple_cycle() {
                let walk: Vec<Vertex> = face.walk_vertices().collect();
                let cand = CycleRef(walk).canonical();
                if cand == target {
                    return Ok(face.id);
                }
            }
        }
        Err(PlaneError::OuterNotAFace)
    }

    /// Id of the designated outer face within [`Self::trace_faces`] order.
    pub fn outer_face_id(&self) -> Result<usize, PlaneError> {
        let cycle = self.outer.clone().ok_or(PlaneError::NoOuterFace)?;
        let c = CycleRef::new(self, cycle)?;
        self.face_bounded_by(&c)
    }

    /// Every simple cycle of exactly `k` vertices, each reported once up to
    /// rotation and reflection (anchored at its smallest vertex, second vertex
    /// smaller than the last).
    pub fn cycles_of_length(&self, k: usize) -> Result<Vec<CycleRef>, PlaneError> {
        if !(3..=12).contains(&k) {
            return Err(PlaneError::LengthOutOfRange(k));
        }
        let g = self.simple();
        let ids = g.vertices().to_vec();
        let mut out = Vec::new();
        for &anchor in &ids {
            let dist = g.bfs_distances(anchor);
            let a = g.index_of(anchor).unwrap();
            let mut path = vec![a];
            let mut on_path = vec![false; ids.len()];
            on_path[a] = true;
            self.cycle_dfs(&g, &dist, k, a, &mut path, &mut on_path, &mut out);
        }
        Ok(out)
    }

    fn cycle_dfs(
        &self,
        g: &SimpleGraph,
        dist_anchor: &[usize],
        k: usize,
        anchor: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        out: &mut Vec<CycleRef>,
    ) {
        let cur = *path.last().unwrap();
        let cur_id = g.id_of(cur);
        if path.len() == k {
            // close the cycle; path[1] < path[k-1] kills the reflected copy
            if path[1] < path[k - 1] && g.has_edge(cur_id, g.id_of(anchor)) {
                out.push(CycleRef(path.iter().map(|&i| g.id_of(i)).collect()));
            }
            return;
        }
        let remaining = k - path.len();
        for w in g.neighbors(cur_id) {
            let wi = g.index_of(w).unwrap();
            if wi <= anchor || on_path[wi] || dist_anchor[wi] > remaining {
                continue;
            }
            path.push(wi);
            on_path[wi] = true;
            self.cycle_dfs(g, dist_anchor, k, anchor, path, on_path, out);
            on_path[wi] = false;
            path.pop();
        }
    }

    fn triangles(&self) -> Vec<[Vertex; 3]> {
        let g = self.simple();
        let mut out = Vec::new();
        for (u, v) in g.edges() {
            for w in g.neighbors(v) {
                if w > v && u < v && g.has_edge(u, w) {
                    out.push([u, v, w]);
                }
            }
        }
        out
    }

    /// Smallest distance between two distinct triangles: the minimum, over
    /// unordered pairs of triangles and over vertex pairs (one from each), of
    /// the graph distance. `None` when fewer than two triangles exist;
    /// intersecting triangles have distance 0.
    pub fn triangle_distance(&self) -> Option<usize> {
        let triangles = self.triangles();
        if triangles.len() < 2 {
            return None;
        }
        let g = self.simple();
        let mut best = usize::MAX;
        for (i, t) in triangles.iter().enumerate() {
            // multi-source BFS from t's vertices
            let mut dist = vec![usize::MAX; g.vertex_count()];
            let mut queue = std::collections::VecDeque::new();
            for &v in t {
                let vi = g.index_of(v).unwrap();
                dist[vi] = 0;
                queue.push_back(vi);
            }
            while let Some(x) = queue.pop_front() {
                for y in g.neighbors(g.id_of(x)) {
                    let yi = g.index_of(y).unwrap();
                    if dist[yi] == usize::MAX {
                        dist[yi] = dist[x] + 1;
                        queue.push_back(yi);
                    }
                }
            }
            for other in triangles.iter().skip(i + 1) {
                for &v in other {
                    best = best.min(dist[g.index_of(v).unwrap()]);
                }
            }
        }
        Some(best)
    }

    /// True iff both the interior and the exterior of `c` are nonempty, with
    /// sides determined by the designated outer face.
    pub fn is_separating(&self, c: &CycleRef) -> Result<bool, PlaneError> {
        let (int, ext) = self.cycle_sides(c)?;
        Ok(!int.is_empty() && !ext.is_empty())
    }

    /// Splits the vertices off `c` into (interior, exterior): the exterior is
    /// the side whose faces connect to the designated outer face without
    /// crossing `c`.
    pub fn cycle_sides(
        &self,
        c: &CycleRef,
    ) -> Result<(BTreeSet<Vertex>, BTreeSet<Vertex>), PlaneError> {
        // re-validate against this graph
        let c = CycleRef::new(self, c.vertices().to_vec())?;
        let outer_id = self.outer_face_id()?;
        let faces = self.trace_faces()?;
        let cycle_edges: BTreeSet<Edge> = c.edges().collect();

        let mut face_of_directed: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
        for face in &faces {
            for &de in &face.boundary {
                face_of_directed.insert(de, face.id);
            }
        }

        // union faces across every edge not on the cycle
        let mut parent: Vec<usize> = (0..faces.len()).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in self.edges() {
            if cycle_edges.contains(&e) {
                continue;
            }
            let a = face_of_directed[&(e.0, e.1)];
            let b = face_of_directed[&(e.1, e.0)];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let outer_rep = find(&mut parent, outer_id);

        let on_cycle = c.vertex_set();
        let mut interior = BTreeSet::new();
        let mut exterior = BTreeSet::new();
        for v in self.vertices() {
            if on_cycle.contains(&v) {
                continue;
            }
            let w = self.rotation[&v][0];
            let f = face_of_directed[&(v, w)];
            if find(&mut parent, f) == outer_rep {
                exterior.insert(v);
            } else {
                interior.insert(v);
            }
        }
        Ok((interior, exterior))
    }

    /// True iff some edge of the graph joins two non-consecutive vertices of
    /// `c`.
    pub fn has_chord(&self, c: &CycleRef) -> Result<bool, PlaneError> {
        let c = CycleRef::new(self, c.vertices().to_vec())?;
        let vs = c.vertices();
        let n = vs.len();
        for i in 0..n {
            for j in i + 1..n {
                let consecutive = j == i + 1 || (i == 0 && j == n - 1);
                if !consecutive && self.has_edge(vs[i], vs[j]) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Merges nonadjacent vertices `u` and `v` lying on a common face into
    /// one vertex (keeping `u`'s id), splicing the two rotations at that face.
    ///
    /// Fails when the vertices are adjacent, share a neighbor (the merge would
    /// create a parallel edge), or lie on no common face. On success the edge
    /// count is unchanged and the vertex count drops by one.
    pub fn identify(&self, u: Vertex, v: Vertex) -> Result<PlaneGraph, PlaneError> {
        if !self.contains(u) {
            return Err(PlaneError::UnknownVertex(u));
        }
        if !self.contains(v) {
            return Err(PlaneError::UnknownVertex(v));
        }
        if u == v || self.has_edge(u, v) {
            return Err(PlaneError::IdentifyAdjacent(u, v));
        }
        let nu: BTreeSet<Vertex> = self.rotation[&u].iter().copied().collect();
        for w in &self.rotation[&v] {
            if nu.contains(w) {
                return Err(PlaneError::CommonNeighbor(u, v, *w));
            }
        }
        let faces = self.trace_faces()?;
        let face = faces
            .iter()
            .find(|f| f.contains_vertex(u) && f.contains_vertex(v))
            .ok_or(PlaneError::NoCommonFace(u, v))?;

        // corner of `x` on the face: (arrived-from, departs-to)
        let corner = |x: Vertex| -> (Vertex, Vertex) {
            let n = face.boundary.len();
            let j = face
                .boundary
                .iter()
                .position(|&(s, _)| s == x)
                .expect("corner: vertex on face");
            let arrive = face.boundary[(j + n - 1) % n].0;
            let depart = face.boundary[j].1;
            (arrive, depart)
        };
        // rotation read cyclically from `from` around to `to`, inclusive
        let arc = |x: Vertex, from: Vertex, to: Vertex| -> Vec<Vertex> {
            let nbrs = &self.rotation[&x];
            let start = nbrs.iter().position(|&n| n == from).unwrap();
            let mut out = Vec::with_capacity(nbrs.len());
            let mut i = start;
            loop {
                out.push(nbrs[i]);
                if nbrs[i] == to {
                    break;
                }
                i = (i + 1) % nbrs.len();
            }
            out
        };

        let (in_u, out_u) = corner(u);
        let (in_v, out_v) = corner(v);
        let mut merged = arc(u, out_u, in_u);
        merged.extend(arc(v, out_v, in_v));

        let mut rotation = self.rotation.clone();
        rotation.remove(&v);
        rotation.insert(u, merged);
        for nbrs in rotation.values_mut() {
            for x in nbrs.iter_mut() {
                if *x == v {
                    *x = u;
                }
            }
        }
        let outer = self.outer.as_ref().map(|cycle| {
            cycle
                .iter()
                .map(|&x| if x == v { u } else { x })
                .collect()
        });
        PlaneGraph::from_rotations(rotation, outer)
    }

    /// Deletes a set of vertices (and incident edges), keeping the inherited
    /// embedding. The outer designation is dropped if it loses a vertex.
    pub fn remove_vertices(&self, drop: &BTreeSet<Vertex>) -> PlaneGraph {
        let rotation: BTreeMap<Vertex, Vec<Vertex>> = self
            .rotation
            .iter()
            .filter(|(v, _)| !drop.contains(v))
            .map(|(&v, nbrs)| {
                (
                    v,
                    nbrs.iter().copied().filter(|w| !drop.contains(w)).collect(),
                )
            })
            .collect();
        let outer = match &self.outer {
            Some(cycle) if cycle.iter().all(|v| !drop.contains(v)) => Some(cycle.clone()),
            _ => None,
        };
        PlaneGraph { rotation, outer }
    }

    /// Classifies a 9-cycle against the supplied templates: `Bad` iff `c` is
    /// the distinguished outer 9-cycle of an induced subgraph matching one of
    /// them (pinned induced subgraph isomorphism), `Good` otherwise.
    pub fn classify_9cycle(
        &self,
        c: &CycleRef,
        templates: &[Configuration],
    ) -> Result<NineCycleClass, PlaneError> {
        if c.len() != 9 {
            return Err(PlaneError::WrongCycleLength(c.len(), 9));
        }
        let c = CycleRef::new(self, c.vertices().to_vec())?;
        let g = self.simple();
        for tpl in templates {
            if crate::configuration::matches_pinned_cycle(&g, c.vertices(), tpl) {
                return Ok(NineCycleClass::Bad {
                    template: tpl.name.clone(),
                });
            }
        }
        Ok(NineCycleClass::Good)
    }
}

#[cfg(test)]
mod tests {
    use super::builder::PlaneBuilder;
    use super::*;
    use crate::reducibility::builtin_bad9_templates;
    use crate::samples;

    fn euler_ok(g: &PlaneGraph) -> bool {
        let faces = g.trace_faces().unwrap();
        let f = faces.len();
        g.vertex_count() + f == g.edge_count() + 2
    }

    #[test]
    fn cycle_has_two_faces() {
        let g = samples::cycle(6);
        let faces = g.trace_faces().unwrap();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.degree() == 6));
        assert!(euler_ok(&g));
    }

    #[test]
    fn k4_has_four_triangles_as_faces() {
        let g = samples::k4();
        let faces = g.trace_faces().unwrap();
        assert_eq!(faces.len(), 4);
        assert!(faces.iter().all(|f| f.degree() == 3));
        assert_eq!(g.cycles_of_length(3).unwrap().len(), 4);
        assert!(euler_ok(&g));
    }

    #[test]
    fn cube_has_six_quadrilateral_faces() {
        let g = samples::cube();
        let faces = g.trace_faces().unwrap();
        assert_eq!(faces.len(), 6);
        assert!(faces.iter().all(|f| f.degree() == 4));
    }

    #[test]
    fn disconnected_graph_refuses_face_tracing() {
        let mut rot = BTreeMap::new();
        rot.insert(0, vec![1]);
        rot.insert(1, vec![0]);
        rot.insert(2, vec![3]);
        rot.insert(3, vec![2]);
        let g = PlaneGraph::from_rotations(rot, None).unwrap();
        assert!(matches!(g.trace_faces(), Err(PlaneError::Disconnected)));
    }

    #[test]
    fn asymmetric_rotation_is_rejected() {
        let mut rot = BTreeMap::new();
        rot.insert(0, vec![1]);
        rot.insert(1, vec![]);
        assert!(matches!(
            PlaneGraph::from_rotations(rot, None),
            Err(PlaneError::AsymmetricRotation(0, 1))
        ));
    }

    #[test]
    fn cycle_enumeration_counts() {
        let c7 = samples::cycle(7);
        assert_eq!(c7.cycles_of_length(7).unwrap().len(), 1);
        assert_eq!(c7.cycles_of_length(4).unwrap().len(), 0);
        assert!(matches!(
            c7.cycles_of_length(2),
            Err(PlaneError::LengthOutOfRange(2))
        ));
        let k4 = samples::k4();
        assert_eq!(k4.cycles_of_length(3).unwrap().len(), 4);
        assert_eq!(k4.cycles_of_length(4).unwrap().len(), 3);
    }

    #[test]
    fn cycle_enumeration_has_no_duplicates() {
        for g in [samples::k4(), samples::cube(), samples::grid(3, 4)] {
            for k in 3..=8 {
                let cycles = g.cycles_of_length(k).unwrap();
                let canon: BTreeSet<Vec<Vertex>> =
                    cycles.iter().map(CycleRef::canonical).collect();
                assert_eq!(canon.len(), cycles.len(), "k={k}");
            }
        }
    }

    #[test]
    fn triangle_distance_cases() {
        assert_eq!(samples::cycle(6).triangle_distance(), None);
        assert_eq!(samples::bowtie().triangle_distance(), Some(0));
        let g = samples::two_triangles_joined_by_path(3);
        assert_eq!(g.triangle_distance(), Some(3));
    }

    /// Brute-force oracle: all-pairs BFS distances, minimized over every pair
    /// of distinct triangles.
    fn triangle_distance_oracle(g: &PlaneGraph) -> Option<usize> {
        let s = g.simple();
        let mut tris = Vec::new();
        let vs = s.vertices().to_vec();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                for l in j + 1..vs.len() {
                    if s.has_edge(vs[i], vs[j]) && s.has_edge(vs[j], vs[l]) && s.has_edge(vs[i], vs[l]) {
                        tris.push([vs[i], vs[j], vs[l]]);
                    }
                }
            }
        }
        if tris.len() < 2 {
            return None;
        }
        let dist: BTreeMap<Vertex, Vec<usize>> =
            vs.iter().map(|&v| (v, s.bfs_distances(v))).collect();
        let mut best = usize::MAX;
        for i in 0..tris.len() {
            for j in i + 1..tris.len() {
                for &a in &tris[i] {
                    for &b in &tris[j] {
                        best = best.min(dist[&a][s.index_of(b).unwrap()]);
                    }
                }
            }
        }
        Some(best)
    }

    #[test]
    fn triangle_distance_matches_oracle_on_corpus() {
        for (name, g) in samples::discharging_corpus() {
            assert_eq!(
                g.triangle_distance(),
                triangle_distance_oracle(&g),
                "{name}"
            );
        }
    }

    #[test]
    fn euler_and_degree_sum_on_corpus() {
        for (name, g) in samples::discharging_corpus() {
            let faces = g.trace_faces().unwrap();
            assert_eq!(
                g.vertex_count() + faces.len(),
                g.edge_count() + 2,
                "euler fails on {name}"
            );
            assert_eq!(
                faces.iter().map(Face::degree).sum::<usize>(),
                2 * g.edge_count(),
                "degree sum fails on {name}"
            );
        }
    }

    #[test]
    fn bare_cycle_is_not_separating() {
        let g = samples::cycle(6);
        let c = CycleRef::new(&g, (0..6).collect()).unwrap();
        assert!(!g.is_separating(&c).unwrap());
    }

    #[test]
    fn bipyramid_equator_separates_the_apexes() {
        // two apexes joined to a triangle: the equator has one apex inside
        // and one outside
        let g = samples::triangular_bipyramid();
        let c = CycleRef::new(&g, vec![0, 1, 2]).unwrap();
        assert!(g.is_separating(&c).unwrap());
        let (int, ext) = g.cycle_sides(&c).unwrap();
        assert_eq!(int.len() + ext.len(), 2);
        assert_eq!(int.len(), 1);
        assert_eq!(ext.len(), 1);
        // a face of the bipyramid is not separating
        let f = CycleRef::new(&g, vec![0, 1, 3]).unwrap();
        assert!(!g.is_separating(&f).unwrap());
    }

    #[test]
    fn chord_detection() {
        let k4 = samples::k4();
        let c = CycleRef::new(&k4, vec![0, 1, 2, 3]).unwrap();
        assert!(k4.has_chord(&c).unwrap());
        let c7 = samples::cycle(7);
        let c = CycleRef::new(&c7, (0..7).collect()).unwrap();
        assert!(!c7.has_chord(&c).unwrap());
        // C6 plus one long chord
        let mut b = PlaneBuilder::from_cycle(&[0, 1, 2, 3, 4, 5]);
        b.add_edge_in(0, 0, 3).unwrap();
        let g = b.build().unwrap();
        let c = CycleRef::new(&g, vec![0, 1, 2, 3, 4, 5]).unwrap();
        assert!(g.has_chord(&c).unwrap());
    }

    #[test]
    fn identify_rejects_common_neighbor_and_adjacency() {
        // path u-w-v: merging u and v would create a parallel edge through w
        let g = samples::path(3);
        assert!(matches!(
            g.identify(0, 2),
            Err(PlaneError::CommonNeighbor(0, 2, 1))
        ));
        assert!(matches!(
            g.identify(0, 1),
            Err(PlaneError::IdentifyAdjacent(0, 1))
        ));
    }

    #[test]
    fn identify_merges_pendants_on_a_face() {
        // two pendants hanging into the same face of C6
        let mut b = PlaneBuilder::from_cycle(&[0, 1, 2, 3, 4, 5]);
        b.add_bridge_in(0, 0, &[10]).unwrap();
        b.add_bridge(&[0, 3, 10], 3, &[11]).unwrap();
        let g = b.build().unwrap();
        let merged = g.identify(10, 11).unwrap();
        assert_eq!(merged.vertex_count(), g.vertex_count() - 1);
        assert_eq!(merged.edge_count(), g.edge_count());
        assert_eq!(merged.degree(10), 2);
        assert!(euler_ok(&merged));
    }

    #[test]
    fn classify_9cycle_cases() {
        let templates = builtin_bad9_templates();
        // chordless 9-cycle with empty interior
        let g = samples::cycle(9);
        let c = CycleRef::new(&g, (0..9).collect()).unwrap();
        assert_eq!(
            g.classify_9cycle(&c, &templates).unwrap(),
            NineCycleClass::Good
        );
        // the two shipped templates themselves
        for (tpl_graph, name) in [
            (samples::bad9_apex(), "bad9-apex"),
            (samples::bad9_core_triangle(), "bad9-core-triangle"),
        ] {
            let c = CycleRef::new(&tpl_graph, tpl_graph.outer_cycle().unwrap().to_vec()).unwrap();
            let class = tpl_graph.classify_9cycle(&c, &templates).unwrap();
            assert_eq!(
                class,
                NineCycleClass::Bad {
                    template: name.to_string()
                }
            );
        }
        // one interior 3-vertex attached differently stays good
        let mut b = PlaneBuilder::from_cycle(&(0..9).collect::<Vec<_>>());
        b.add_bridge_in(0, 0, &[20]).unwrap();
        let g = b.build().unwrap();
        let c = CycleRef::new(&g, (0..9).collect()).unwrap();
        assert_eq!(
            g.classify_9cycle(&c, &templates).unwrap(),
            NineCycleClass::Good
        );
        // wrong length errors
        let c6 = samples::cycle(6);
        let c = CycleRef::new(&c6, (0..6).collect()).unwrap();
        assert!(matches!(
            c6.classify_9cycle(&c, &templates),
            Err(PlaneError::WrongCycleLength(6, 9))
        ));
    }

    #[test]
    fn json_round_trip_and_errors() {
        let g = samples::bad9_apex();
        let text = g.to_json_string();
        let back = PlaneGraph::from_json_str(&text).unwrap();
        assert_eq!(g.edges(), back.edges());
        assert_eq!(g.outer_cycle(), back.outer_cycle());
        assert!(PlaneGraph::from_json_str("{").is_err());
        let bad = r#"{"vertices":[0,1],"rotation":{"0":[1],"1":[]}}"#;
        assert!(matches!(
            PlaneGraph::from_json_str(bad),
            Err(PlaneError::AsymmetricRotation(0, 1))
        ));
    }
}
