//! Lists, matching assignments and cover graphs.
//!
//! A DP-coloring instance over a host graph `G` consists of a list `L(v)` of
//! colors per vertex and, for every edge `uv`, a matching `M_uv` between the
//! color sets `{u} x L(u)` and `{v} x L(v)`. The cover graph has one node per
//! (vertex, color) pair, a clique on each vertex's nodes, and exactly the
//! matching pairs as cross edges. A DP-coloring of `G` is an independent set
//! of size `|V(G)|` in the cover graph, i.e. one node per vertex avoiding all
//! cross edges.
//!
//! List coloring is the special case where every matching pairs equal colors
//! ([`from_lists`]); an edge with that property is *straight*. A forest of
//! edges whose matchings are perfect can always be made straight by renaming
//! colors per vertex ([`straighten`]), which changes nothing about
//! colorability but turns local arguments into ordinary proper-coloring ones.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::SimpleGraph;
use crate::{edge, Color, Edge, Vertex};

/// Lists larger than this exceed the solver's bitmask domains.
pub const MAX_LIST_SIZE: usize = 30;

#[derive(Debug, Error)]
pub enum CoverError {
    #[error("vertex {0} has no list")]
    MissingList(Vertex),
    #[error("list of vertex {0} exceeds {MAX_LIST_SIZE} colors")]
    ListTooLarge(Vertex),
    #[error("edge {0}-{1} has no matching entry")]
    MissingMatching(Vertex, Vertex),
    #[error("matching given for {0}-{1}, which is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("matching on edge {0}-{1} repeats a color of one endpoint")]
    NotAMatching(Vertex, Vertex),
    #[error("matching on edge {0}-{1} uses color {2} missing from a list")]
    UnlistedColor(Vertex, Vertex, Color),
    #[error("selected edges contain a cycle; cannot straighten a cycle")]
    SelectionCycle,
    #[error("edge {0}-{1}: straightening needs a perfect matching between equal-size lists")]
    NotPerfect(Vertex, Vertex),
    #[error("coloring assigns {1} to vertex {0}, which is not in its list")]
    ColorNotInList(Vertex, Color),
    #[error("instance parse error: {0}")]
    Parse(String),
}

/// Finite color lists per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ListAssignment(BTreeMap<Vertex, BTreeSet<Color>>);

impl ListAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every listed vertex gets `{1..=k}`.
    pub fn uniform(vertices: impl IntoIterator<Item = Vertex>, k: Color) -> Self {
        let colors: BTreeSet<Color> = (1..=k).collect();
        Self(vertices.into_iter().map(|v| (v, colors.clone())).collect())
    }

    pub fn insert(&mut self, v: Vertex, colors: impl IntoIterator<Item = Color>) {
        self.0.insert(v, colors.into_iter().collect());
    }

    pub fn get(&self, v: Vertex) -> Option<&BTreeSet<Color>> {
        self.0.get(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, &BTreeSet<Color>)> {
        self.0.iter().map(|(&v, s)| (v, s))
    }

    /// True iff every list has at least `k` colors.
    pub fn is_k_assignment(&self, k: usize) -> bool {
        self.0.values().all(|s| s.len() >= k)
    }
}

/// Per-edge partial matchings between endpoint lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatchingAssignment(BTreeMap<Edge, Vec<(Color, Color)>>);

impl MatchingAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets the matching of edge `uv`; pairs are `(color at min(u,v), color
    /// at max(u,v))` and get sorted.
    pub fn set(&mut self, u: Vertex, v: Vertex, mut pairs: Vec<(Color, Color)>) {
        let e = edge(u, v);
        if (u, v) != e {
            for p in pairs.iter_mut() {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        self.0.insert(e, pairs);
    }

    /// Pairs of edge `uv`, oriented so the first color belongs to `u`.
    pub fn pairs_oriented(&self, u: Vertex, v: Vertex) -> Vec<(Color, Color)> {
        let e = edge(u, v);
        let pairs = self.0.get(&e).cloned().unwrap_or_default();
        if (u, v) == e {
            pairs
        } else {
            pairs.into_iter().map(|(a, b)| (b, a)).collect()
        }
    }

    /// The color of `v` matched to `(u, c)`, if any.
    pub fn partner(&self, u: Vertex, c: Color, v: Vertex) -> Option<Color> {
        self.pairs_oriented(u, v)
            .into_iter()
            .find(|&(cu, _)| cu == c)
            .map(|(_, cv)| cv)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.keys().copied()
    }

    pub fn get(&self, e: Edge) -> Option<&Vec<(Color, Color)>> {
        self.0.get(&e)
    }

    /// Checks matching shape (no repeated endpoint color) and that all pair
    /// colors are listed.
    pub fn validate(&self, lists: &ListAssignment) -> Result<(), CoverError> {
        for (&(u, v), pairs) in &self.0 {
            let lu = lists.get(u).ok_or(CoverError::MissingList(u))?;
            let lv = lists.get(v).ok_or(CoverError::MissingList(v))?;
            let mut seen_u = BTreeSet::new();
            let mut seen_v = BTreeSet::new();
            for &(cu, cv) in pairs {
                if !seen_u.insert(cu) || !seen_v.insert(cv) {
                    return Err(CoverError::NotAMatching(u, v));
                }
                if !lu.contains(&cu) {
                    return Err(CoverError::UnlistedColor(u, v, cu));
                }
                if !lv.contains(&cv) {
                    return Err(CoverError::UnlistedColor(u, v, cv));
                }
            }
        }
        Ok(())
    }

    /// True iff every pair on every edge has equal colors.
    pub fn is_straight(&self) -> bool {
        self.0
            .values()
            .all(|pairs| pairs.iter().all(|&(a, b)| a == b))
    }
}

/// A (possibly partial) assignment of colors to vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialColoring(BTreeMap<Vertex, Color>);

impl PartialColoring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Vertex, Color)>) -> Self {
        Self(pairs.into_iter().collect())
    }

    pub fn set(&mut self, v: Vertex, c: Color) {
        self.0.insert(v, c);
    }

    pub fn unset(&mut self, v: Vertex) {
        self.0.remove(&v);
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.0.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Color)> + '_ {
        self.0.iter().map(|(&v, &c)| (v, c))
    }

    pub fn domain(&self) -> BTreeSet<Vertex> {
        self.0.keys().copied().collect()
    }
}

/// Why a coloring fails to be a DP-coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringCheck {
    Valid,
    Incomplete { missing: Vertex },
    NotInList { vertex: Vertex, color: Color },
    CrossEdgeHit { u: Vertex, v: Vertex },
}

/// The cover graph of an instance: per-vertex color cliques plus the matching
/// cross edges.
#[derive(Debug, Clone)]
pub struct CoverGraph {
    vertices: Vec<Vertex>,
    index: BTreeMap<Vertex, usize>,
    colors: Vec<Vec<Color>>,
    edges: Vec<(usize, usize)>,
    /// per edge: color index of the second endpoint matched to each color
    /// index of the first, and the reverse direction
    fwd: Vec<Vec<Option<u8>>>,
    rev: Vec<Vec<Option<u8>>>,
    adj: Vec<Vec<(usize, usize)>>,
}

/// Builds the cover graph of `(g, l, m)`.
///
/// `m` must be defined on exactly the edges of `g` and satisfy the matching
/// invariants; violations are reported naming the offending edge.
pub fn build_cover(
    g: &SimpleGraph,
    l: &ListAssignment,
    m: &MatchingAssignment,
) -> Result<CoverGraph, CoverError> {
    m.validate(l)?;
    let g_edges: BTreeSet<Edge> = g.edges().collect();
    for e in m.edges() {
        if !g_edges.contains(&e) {
            return Err(CoverError::NotAnEdge(e.0, e.1));
        }
    }
    for &(u, v) in &g_edges {
        if m.get((u, v)).is_none() {
            return Err(CoverError::MissingMatching(u, v));
        }
    }

    let vertices: Vec<Vertex> = g.vertices().to_vec();
    let index: BTreeMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut colors = Vec::with_capacity(vertices.len());
    for &v in &vertices {
        let list = l.get(v).ok_or(CoverError::MissingList(v))?;
        if list.len() > MAX_LIST_SIZE {
            return Err(CoverError::ListTooLarge(v));
        }
        colors.push(list.iter().copied().collect::<Vec<Color>>());
    }

    let mut edges = Vec::new();
    let mut fwd = Vec::new();
    let mut rev = Vec::new();
    let mut adj = vec![Vec::new(); vertices.len()];
    for &(u, v) in &g_edges {
        let (iu, iv) = (index[&u], index[&v]);
        let mut f = vec![None; colors[iu].len()];
        let mut r = vec![None; colors[iv].len()];
        for (cu, cv) in m.pairs_oriented(u, v) {
            let pu = colors[iu].binary_search(&cu).expect("validated color") as u8;
            let pv = colors[iv].binary_search(&cv).expect("validated color") as u8;
            f[pu as usize] = Some(pv);
            r[pv as usize] = Some(pu);
        }
        let eidx = edges.len();
        edges.push((iu, iv));
        fwd.push(f);
        rev.push(r);
        adj[iu].push((iv, eidx));
        adj[iv].push((iu, eidx));
    }
    Ok(CoverGraph {
        vertices,
        index,
        colors,
        edges,
        fwd,
        rev,
        adj,
    })
}

impl CoverGraph {
    pub fn host_vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn host_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges
            .iter()
            .map(move |&(i, j)| (self.vertices[i], self.vertices[j]))
    }

    pub fn list_of(&self, v: Vertex) -> &[Color] {
        &self.colors[self.index[&v]]
    }

    pub fn node_count(&self) -> usize {
        self.colors.iter().map(Vec::len).sum()
    }

    pub fn clique_edge_count(&self) -> usize {
        self.colors.iter().map(|c| c.len() * (c.len() - 1) / 2).sum()
    }

    pub fn cross_edge_count(&self) -> usize {
        self.fwd
            .iter()
            .map(|f| f.iter().filter(|x| x.is_some()).count())
            .sum()
    }

    pub fn edge_total(&self) -> usize {
        self.clique_edge_count() + self.cross_edge_count()
    }

    /// The color of `v` matched to `(u, c)` under the edge `uv`, if any.
    pub fn matched_color(&self, u: Vertex, c: Color, v: Vertex) -> Option<Color> {
        let (iu, iv) = (self.index[&u], self.index[&v]);
        let (&(a, _), eidx) = self.adj[iu]
            .iter()
            .map(|&(_, e)| (&self.edges[e], e))
            .find(|&(&(a, b), _)| (a, b) == (iu, iv) || (a, b) == (iv, iu))?;
        let pu = self.colors[iu].binary_search(&c).ok()? as usize;
        let table = if a == iu { &self.fwd[eidx] } else { &self.rev[eidx] };
        table[pu].map(|pv| self.colors[iv][pv as usize])
    }

    /// Full validity diagnosis for `a`.
    pub fn verify_coloring(&self, a: &PartialColoring) -> ColoringCheck {
        for &v in &self.vertices {
            match a.get(v) {
                None => return ColoringCheck::Incomplete { missing: v },
                Some(c) => {
                    if !self.list_of(v).contains(&c) {
                        return ColoringCheck::NotInList { vertex: v, color: c };
                    }
                }
            }
        }
        for (eidx, &(i, j)) in self.edges.iter().enumerate() {
            let (u, v) = (self.vertices[i], self.vertices[j]);
            let cu = a.get(u).unwrap();
            let cv = a.get(v).unwrap();
            let pu = self.colors[i].binary_search(&cu).unwrap();
            if self.fwd[eidx][pu] == Some(self.colors[j].binary_search(&cv).unwrap() as u8) {
                return ColoringCheck::CrossEdgeHit { u, v };
            }
        }
        ColoringCheck::Valid
    }

    /// True iff `a` assigns every host vertex and the chosen nodes form an
    /// independent set of the cover graph.
    pub fn is_dp_coloring(&self, a: &PartialColoring) -> bool {
        self.verify_coloring(a) == ColoringCheck::Valid
    }

    /// Checks that a partial coloring stays inside lists and violates no
    /// cross edge among its assigned vertices.
    pub fn check_partial(&self, a: &PartialColoring) -> Result<(), CoverError> {
        for (v, c) in a.iter() {
            if !self.index.contains_key(&v) || !self.list_of(v).contains(&c) {
                return Err(CoverError::ColorNotInList(v, c));
            }
        }
        for (eidx, &(i, j)) in self.edges.iter().enumerate() {
            let (u, v) = (self.vertices[i], self.vertices[j]);
            if let (Some(cu), Some(cv)) = (a.get(u), a.get(v)) {
                let pu = self.colors[i].binary_search(&cu).unwrap();
                if self.fwd[eidx][pu] == Some(self.colors[j].binary_search(&cv).unwrap() as u8) {
                    return Err(CoverError::NotAMatching(u, v));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn dense(&self) -> (&[Vec<(usize, usize)>], &[(usize, usize)]) {
        (&self.adj, &self.edges)
    }

    pub(crate) fn dense_tables(&self) -> (&[Vec<Option<u8>>], &[Vec<Option<u8>>]) {
        (&self.fwd, &self.rev)
    }

    pub(crate) fn color_count(&self, i: usize) -> usize {
        self.colors[i].len()
    }

    pub(crate) fn color_at(&self, i: usize, p: usize) -> Color {
        self.colors[i][p]
    }

    pub(crate) fn index_of(&self, v: Vertex) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub(crate) fn id_of(&self, i: usize) -> Vertex {
        self.vertices[i]
    }
}

/// Encodes a list assignment as a matching assignment: `M_uv` pairs equal
/// colors of the two lists, so an `M_L`-coloring of the result is exactly an
/// `L`-coloring of the host.
pub fn from_lists(l: &ListAssignment, g: &SimpleGraph) -> MatchingAssignment {
    let mut m = MatchingAssignment::new();
    for (u, v) in g.edges() {
        let lu = l.get(u).cloned().unwrap_or_default();
        let lv = l.get(v).cloned().unwrap_or_default();
        let pairs: Vec<(Color, Color)> =
            lu.intersection(&lv).map(|&c| (c, c)).collect();
        m.set(u, v, pairs);
    }
    m
}

/// Renames colors per vertex so that every selected edge becomes straight.
///
/// The selected edges must form a forest and each must carry a perfect
/// matching between equal-size lists. Returns the equivalent instance and the
/// per-vertex bijections `old color -> new color`; colorings of the two
/// instances correspond one-to-one through them.
pub fn straighten(
    g: &SimpleGraph,
    l: &ListAssignment,
    m: &MatchingAssignment,
    edges_to_straighten: &BTreeSet<Edge>,
) -> Result<
    (
        ListAssignment,
        MatchingAssignment,
        BTreeMap<Vertex, BTreeMap<Color, Color>>,
    ),
    CoverError,
> {
    m.validate(l)?;
    for &(u, v) in edges_to_straighten {
        if !g.has_edge(u, v) {
            return Err(CoverError::NotAnEdge(u, v));
        }
        let pairs = m.get(edge(u, v)).ok_or(CoverError::MissingMatching(u, v))?;
        let (lu, lv) = (l.get(u).unwrap(), l.get(v).unwrap());
        if lu.len() != lv.len() || pairs.len() != lu.len() {
            return Err(CoverError::NotPerfect(u, v));
        }
    }

    // forest check + tree structure over the selection
    let mut sel_adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &(u, v) in edges_to_straighten {
        sel_adj.entry(u).or_default().push(v);
        sel_adj.entry(v).or_default().push(u);
    }
    let mut relabel: BTreeMap<Vertex, BTreeMap<Color, Color>> = BTreeMap::new();
    let identity = |list: &BTreeSet<Color>| -> BTreeMap<Color, Color> {
        list.iter().map(|&c| (c, c)).collect()
    };
    let mut visited: BTreeSet<Vertex> = BTreeSet::new();
    let roots: Vec<Vertex> = sel_adj.keys().copied().collect();
    for root in roots {
        if visited.contains(&root) {
            continue;
        }
        visited.insert(root);
        relabel.insert(root, identity(l.get(root).unwrap()));
        let mut stack = vec![root];
        let mut tree_vertices = 1usize;
        let mut tree_edges = 0usize;
        while let Some(u) = stack.pop() {
            for &v in sel_adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
                tree_edges += 1;
                if visited.contains(&v) {
                    continue;
                }
                visited.insert(v);
                tree_vertices += 1;
                let pi_u = relabel[&u].clone();
                let mut pi_v = BTreeMap::new();
                for (cu, cv) in m.pairs_oriented(u, v) {
                    pi_v.insert(cv, pi_u[&cu]);
                }
                relabel.insert(v, pi_v);
                stack.push(v);
            }
        }
        // each tree edge was counted from both endpoints
        if tree_edges != 2 * (tree_vertices - 1) {
            return Err(CoverError::SelectionCycle);
        }
    }
    for v in l.vertices() {
        relabel
            .entry(v)
            .or_insert_with(|| identity(l.get(v).unwrap()));
    }

    let mut new_lists = ListAssignment::new();
    for (v, list) in l.iter() {
        new_lists.insert(v, list.iter().map(|c| relabel[&v][c]));
    }
    let mut new_m = MatchingAssignment::new();
    for (u, v) in m.edges() {
        let pairs = m
            .pairs_oriented(u, v)
            .into_iter()
            .map(|(cu, cv)| (relabel[&u][&cu], relabel[&v][&cv]))
            .collect();
        new_m.set(u, v, pairs);
    }
    Ok((new_lists, new_m, relabel))
}

/// Residual lists after a partial coloring: each uncolored vertex keeps its
/// list minus every color matched to a colored neighbor's chosen color.
pub fn residual_lists(cov: &CoverGraph, phi: &PartialColoring) -> ListAssignment {
    let mut out = ListAssignment::new();
    for &u in cov.host_vertices() {
        if phi.get(u).is_some() {
            continue;
        }
        let mut remaining: BTreeSet<Color> = cov.list_of(u).iter().copied().collect();
        let iu = cov.index_of(u).unwrap();
        let (adj, _) = cov.dense();
        for &(iv, _) in &adj[iu] {
            let v = cov.id_of(iv);
            if let Some(cv) = phi.get(v) {
                if let Some(cu) = cov.matched_color(v, cv, u) {
                    remaining.remove(&cu);
                }
            }
        }
        out.insert(u, remaining);
    }
    out
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    lists: BTreeMap<String, Vec<Color>>,
    matchings: BTreeMap<String, Vec<(Color, Color)>>,
}

/// Parses the instance file format: `{"lists":{vertex:[colors]},
/// "matchings":{"u-v":[[cu,cv],...]}}` with `u < v` in each edge key.
pub fn parse_instance_json(text: &str) -> Result<(ListAssignment, MatchingAssignment), CoverError> {
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|e| CoverError::Parse(e.to_string()))?;
    let mut lists = ListAssignment::new();
    for (key, colors) in file.lists {
        let v: Vertex = key
            .parse()
            .map_err(|_| CoverError::Parse(format!("bad vertex key {key:?}")))?;
        lists.insert(v, colors);
    }
    let mut m = MatchingAssignment::new();
    for (key, pairs) in file.matchings {
        let (a, b) = key
            .split_once('-')
            .ok_or_else(|| CoverError::Parse(format!("bad edge key {key:?}")))?;
        let u: Vertex = a
            .parse()
            .map_err(|_| CoverError::Parse(format!("bad edge key {key:?}")))?;
        let v: Vertex = b
            .parse()
            .map_err(|_| CoverError::Parse(format!("bad edge key {key:?}")))?;
        if u >= v {
            return Err(CoverError::Parse(format!(
                "edge key {key:?} must be min-max"
            )));
        }
        m.set(u, v, pairs);
    }
    m.validate(&lists)?;
    Ok((lists, m))
}

pub fn instance_to_json(l: &ListAssignment, m: &MatchingAssignment) -> String {
    let file = InstanceFile {
        lists: l
            .iter()
            .map(|(v, s)| (v.to_string(), s.iter().copied().collect()))
            .collect(),
        matchings: m
            .edges()
            .map(|(u, v)| (format!("{u}-{v}"), m.get((u, v)).unwrap().clone()))
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("instance serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_graph(n: u32) -> SimpleGraph {
        SimpleGraph::new(0..n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn identity_instance(g: &SimpleGraph, k: Color) -> (ListAssignment, MatchingAssignment) {
        let l = ListAssignment::uniform(g.vertices().iter().copied(), k);
        let m = from_lists(&l, g);
        (l, m)
    }

    #[test]
    fn cover_counts() {
        // single vertex with a 2-list
        let g = SimpleGraph::new([0], []).unwrap();
        let mut l = ListAssignment::new();
        l.insert(0, [1, 2]);
        let cov = build_cover(&g, &l, &MatchingAssignment::new()).unwrap();
        assert_eq!(
            (cov.node_count(), cov.clique_edge_count(), cov.cross_edge_count()),
            (2, 1, 0)
        );

        // K2 with 3-lists and the identity perfect matching
        let g = SimpleGraph::new([0, 1], [(0, 1)]).unwrap();
        let (l, m) = identity_instance(&g, 3);
        let cov = build_cover(&g, &l, &m).unwrap();
        assert_eq!(
            (cov.node_count(), cov.clique_edge_count(), cov.cross_edge_count()),
            (6, 6, 3)
        );

        // C3, all lists {1,2,3}, identity matchings: 9 nodes, 18 edges
        let g = cycle_graph(3);
        let (l, m) = identity_instance(&g, 3);
        let cov = build_cover(&g, &l, &m).unwrap();
        assert_eq!(cov.node_count(), 9);
        assert_eq!(cov.edge_total(), 18);
    }

    #[test]
    fn cover_build_errors_name_the_edge() {
        let g = SimpleGraph::new([0, 1], [(0, 1)]).unwrap();
        let mut l = ListAssignment::new();
        l.insert(0, [1, 2]);
        l.insert(1, [1, 2]);
        let mut m = MatchingAssignment::new();
        m.set(0, 1, vec![(1, 1), (1, 2)]);
        assert!(matches!(
            build_cover(&g, &l, &m),
            Err(CoverError::NotAMatching(0, 1))
        ));
        let mut m = MatchingAssignment::new();
        m.set(0, 1, vec![(1, 3)]);
        assert!(matches!(
            build_cover(&g, &l, &m),
            Err(CoverError::UnlistedColor(0, 1, 3))
        ));
        let m = MatchingAssignment::new();
        assert!(matches!(
            build_cover(&g, &l, &m),
            Err(CoverError::MissingMatching(0, 1))
        ));
    }

    #[test]
    fn dp_coloring_check_on_c3() {
        let g = cycle_graph(3);
        let (l, m) = identity_instance(&g, 3);
        let cov = build_cover(&g, &l, &m).unwrap();
        assert!(cov.is_dp_coloring(&PartialColoring::from_pairs([(0, 1), (1, 2), (2, 3)])));
        assert!(!cov.is_dp_coloring(&PartialColoring::from_pairs([(0, 1), (1, 1), (2, 2)])));
        let partial = PartialColoring::from_pairs([(0, 1), (1, 2)]);
        assert_eq!(
            cov.verify_coloring(&partial),
            ColoringCheck::Incomplete { missing: 2 }
        );
    }

    #[test]
    fn from_lists_cases() {
        let g = SimpleGraph::new([0, 1], [(0, 1)]).unwrap();
        let mut l = ListAssignment::new();
        l.insert(0, [1, 2]);
        l.insert(1, [2, 3]);
        let m = from_lists(&l, &g);
        assert_eq!(m.get((0, 1)).unwrap(), &vec![(2, 2)]);

        let mut l = ListAssignment::new();
        l.insert(0, [1, 2]);
        l.insert(1, [3, 4]);
        let m = from_lists(&l, &g);
        assert!(m.get((0, 1)).unwrap().is_empty());

        let l = ListAssignment::uniform([0, 1], 3);
        let m = from_lists(&l, &g);
        assert_eq!(m.get((0, 1)).unwrap(), &vec![(1, 1), (2, 2), (3, 3)]);
        assert!(m.is_straight());
    }

    #[test]
    fn straighten_one_swap_edge() {
        let g = SimpleGraph::new([0, 1], [(0, 1)]).unwrap();
        let l = ListAssignment::uniform([0, 1], 3);
        let mut m = MatchingAssignment::new();
        m.set(0, 1, vec![(1, 2), (2, 1), (3, 3)]);
        let sel: BTreeSet<Edge> = [(0, 1)].into();
        let (l2, m2, relabel) = straighten(&g, &l, &m, &sel).unwrap();
        assert!(m2.is_straight());
        assert_eq!(l2.get(1).unwrap().len(), 3);
        // vertex 0 is the root and keeps its names
        assert_eq!(relabel[&0][&1], 1);
        assert_eq!(relabel[&1][&2], 1);
    }

    #[test]
    fn straighten_path_composes_permutations() {
        let g = SimpleGraph::new([0, 1, 2], [(0, 1), (1, 2)]).unwrap();
        let l = ListAssignment::uniform([0, 1, 2], 3);
        let mut m = MatchingAssignment::new();
        m.set(0, 1, vec![(1, 2), (2, 3), (3, 1)]);
        m.set(1, 2, vec![(1, 3), (2, 1), (3, 2)]);
        let sel: BTreeSet<Edge> = [(0, 1), (1, 2)].into();
        let (_, m2, _) = straighten(&g, &l, &m, &sel).unwrap();
        assert!(m2.is_straight());
    }

    #[test]
    fn straighten_rejects_cycles_and_partial_matchings() {
        let g = cycle_graph(3);
        let (l, m) = identity_instance(&g, 3);
        let sel: BTreeSet<Edge> = [(0, 1), (1, 2), (0, 2)].into();
        assert!(matches!(
            straighten(&g, &l, &m, &sel),
            Err(CoverError::SelectionCycle)
        ));
        let g = SimpleGraph::new([0, 1], [(0, 1)]).unwrap();
        let l = ListAssignment::uniform([0, 1], 3);
        let mut m = MatchingAssignment::new();
        m.set(0, 1, vec![(1, 1)]);
        let sel: BTreeSet<Edge> = [(0, 1)].into();
        assert!(matches!(
            straighten(&g, &l, &m, &sel),
            Err(CoverError::NotPerfect(0, 1))
        ));
    }

    #[test]
    fn residual_list_cases() {
        let g = SimpleGraph::new([0, 1, 2], [(0, 1), (1, 2)]).unwrap();
        let (l, m) = identity_instance(&g, 3);
        let cov = build_cover(&g, &l, &m).unwrap();
        // no colored neighbor: unchanged
        let phi = PartialColoring::new();
        assert_eq!(residual_lists(&cov, &phi).get(1).unwrap().len(), 3);
        // both neighbors colored with distinct matched colors
        let phi = PartialColoring::from_pairs([(0, 1), (2, 2)]);
        let res = residual_lists(&cov, &phi);
        assert_eq!(
            res.get(1).unwrap().iter().copied().collect::<Vec<_>>(),
            vec![3]
        );
        assert!(res.get(0).is_none());
    }

    #[test]
    fn residual_removes_at_most_one_color_per_colored_neighbor() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(3..7u32);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = SimpleGraph::new(0..n, edges).unwrap();
            let l = ListAssignment::uniform(0..n, 3);
            let mut m = MatchingAssignment::new();
            for (u, v) in g.edges() {
                let mut pairs = Vec::new();
                for c in 1..=3u8 {
                    if rng.gen_bool(0.7) {
                        pairs.push((c, rng.gen_range(1..=3u8)));
                    }
                }
                pairs.dedup_by_key(|p| p.1);
                let mut seen = BTreeSet::new();
                pairs.retain(|p| seen.insert(p.1));
                m.set(u, v, pairs);
            }
            let cov = build_cover(&g, &l, &m).unwrap();
            let mut phi = PartialColoring::new();
            for v in 0..n {
                if rng.gen_bool(0.5) {
                    phi.set(v, rng.gen_range(1..=3u8));
                }
            }
            let res = residual_lists(&cov, &phi);
            for (v, list) in res.iter() {
                let colored_nbrs = g
                    .neighbors(v)
                    .filter(|&w| phi.get(w).is_some())
                    .count();
                assert!(3 - list.len() <= colored_nbrs);
            }
        }
    }

    #[test]
    fn instance_json_round_trip() {
        let g = cycle_graph(3);
        let (l, m) = identity_instance(&g, 3);
        let text = instance_to_json(&l, &m);
        let (l2, m2) = parse_instance_json(&text).unwrap();
        assert_eq!(l, l2);
        assert_eq!(m, m2);
        assert!(parse_instance_json("{\"lists\":{},\"matchings\":{\"2-1\":[]}}").is_err());
    }
}
