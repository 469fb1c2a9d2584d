//! Exact charge accounting on plane graphs.
//!
//! Initial charges are `2d(v) - 6` per vertex, `d(f) - 6` per bounded face
//! and `d(C0) + 6` for the designated outer face, so the total is exactly 0
//! on every connected instance. Charges live in doubled-integer units (every
//! rule amount is a multiple of 1/2), transfers are logged one by one, and
//! the total is asserted unchanged after every rule.
//!
//! Two rule systems are built in, selected by [`RuleSet`]:
//!
//! * `section-2` — three rules for graphs without 4- and 5-cycles whose
//!   triangles are far apart: internal big vertices feed incident and
//!   adjacent 3-faces (plus a half to a base or a (3,3,3,3,3,4)-face), big
//!   and boundary 6-faces feed internal 3-faces and push their surplus to
//!   the outer face, and the outer face settles with its vertices, the
//!   3-faces it meets, and its special 6-faces.
//! * `section-3` — four rules for graphs without 4-, 5- and 6-cycles:
//!   internal 3-faces collect from incident big vertices and split their
//!   remaining need evenly over their three neighbors, internal 7-faces
//!   collect a half from rich 4-vertices and from 5+-vertices, every 7+-face
//!   forwards its surplus to the outer face, and the outer face settles as
//!   above with special 7-faces.
//!
//! "Surplus to the outer face" forwards only positive remainders: a special
//! face's deficit is covered by the outer face's own payment instead, which
//! is exactly how the outer-face audit identity accounts for it.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::plane_graph::{CycleRef, Face, PlaneError, PlaneGraph};
use crate::{edge, Edge, Vertex};

#[derive(Debug, Error)]
pub enum DischargeError {
    #[error("the given cycle is not the designated outer face")]
    OuterMismatch,
    #[error("audit identity mismatch: ledger has {ledger2}, identity gives {identity2} (doubled units)")]
    AuditIdentity { ledger2: i64, identity2: i64 },
    #[error("ledger already has transfers; rules need a fresh ledger")]
    NotFresh,
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

/// Which of the two built-in rule systems to execute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleSet {
    SectionTwo,
    SectionThree,
}

impl RuleSet {
    pub fn name(self) -> &'static str {
        match self {
            RuleSet::SectionTwo => "section-2",
            RuleSet::SectionThree => "section-3",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "section-2" => Some(RuleSet::SectionTwo),
            "section-3" => Some(RuleSet::SectionThree),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Element {
    Vertex(Vertex),
    Face(usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct Transfer {
    pub from: Element,
    pub to: Element,
    /// Amount in doubled units; `3` means a charge of 3/2.
    pub amount2: i64,
    pub rule: &'static str,
}

/// Exact half-integer charges for every vertex and face, plus the transfer
/// log.
#[derive(Debug, Clone)]
pub struct ChargeLedger {
    vertex2: BTreeMap<Vertex, i64>,
    face2: BTreeMap<usize, i64>,
    log: Vec<Transfer>,
}

impl ChargeLedger {
    pub fn charge2(&self, el: Element) -> i64 {
        match el {
            Element::Vertex(v) => self.vertex2[&v],
            Element::Face(f) => self.face2[&f],
        }
    }

    pub fn total2(&self) -> i64 {
        self.vertex2.values().sum::<i64>() + self.face2.values().sum::<i64>()
    }

    pub fn transfers(&self) -> &[Transfer] {
        &self.log
    }

    pub fn vertices(&self) -> impl Iterator<Item = (Vertex, i64)> + '_ {
        self.vertex2.iter().map(|(&v, &c)| (v, c))
    }

    pub fn faces(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.face2.iter().map(|(&f, &c)| (f, c))
    }

    fn transfer(&mut self, from: Element, to: Element, amount2: i64, rule: &'static str) {
        if amount2 == 0 {
            return;
        }
        match from {
            Element::Vertex(v) => *self.vertex2.get_mut(&v).unwrap() -= amount2,
            Element::Face(f) => *self.face2.get_mut(&f).unwrap() -= amount2,
        }
        match to {
            Element::Vertex(v) => *self.vertex2.get_mut(&v).unwrap() += amount2,
            Element::Face(f) => *self.face2.get_mut(&f).unwrap() += amount2,
        }
        self.log.push(Transfer {
            from,
            to,
            amount2,
            rule,
        });
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexTags {
    pub degree: usize,
    pub internal: bool,
    /// Incident to a 3-face.
    pub light: bool,
    /// (3,3,3,3,3,3)-faces this vertex is the roof of.
    pub roof_of: Vec<usize>,
    /// 7+-faces this 4-vertex is rich to (on the face, on no 3-face adjacent
    /// to it).
    pub rich_to: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceTags {
    pub degree: usize,
    /// Sorted vertex-degree multiset of the boundary walk.
    pub profile: Vec<usize>,
    pub internal: bool,
    /// Shares at least one vertex with the outer cycle (and is not the outer
    /// face itself).
    pub meets_outer: bool,
    /// 6-face adjacent to a 3-face.
    pub bad6: bool,
    /// Bad 6-face meeting the outer cycle, adjacent to exactly one internal
    /// 3-face.
    pub special6: bool,
    /// 7-face meeting the outer cycle, adjacent to exactly two internal
    /// 3-faces.
    pub special7: bool,
    /// Roofs of this face, when it is a (3,3,3,3,3,3)-face by a 3-face.
    pub base_of: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralTags {
    pub vertex: BTreeMap<Vertex, VertexTags>,
    pub face: BTreeMap<usize, FaceTags>,
    /// Structural situations the rules pay only once for; flagged for
    /// inspection.
    pub anomalies: Vec<String>,
}

/// Precomputed incidence geometry shared by the rule executors.
struct Geometry {
    faces: Vec<Face>,
    outer: usize,
    degree: BTreeMap<Vertex, usize>,
    faces_of_vertex: BTreeMap<Vertex, BTreeSet<usize>>,
    /// Edge-sharing neighbors per face (self excluded; bridges collapse).
    adjacent: Vec<BTreeSet<usize>>,
    edge_faces: BTreeMap<Edge, (usize, usize)>,
    on_outer: BTreeSet<Vertex>,
}

impl Geometry {
    fn build(g: &PlaneGraph, c0: &CycleRef) -> Result<Self, DischargeError> {
        let outer_cycle = g
            .outer_cycle()
            .ok_or(DischargeError::OuterMismatch)?
            .to_vec();
        let declared = CycleRef::new(g, outer_cycle).map_err(DischargeError::Plane)?;
        if declared.canonical() != c0.canonical() {
            return Err(DischargeError::OuterMismatch);
        }
        let faces = g.trace_faces()?;
        let outer = g.outer_face_id()?;
        let degree: BTreeMap<Vertex, usize> =
            g.vertices().iter().map(|&v| (v, g.degree(v))).collect();
        let mut faces_of_vertex: BTreeMap<Vertex, BTreeSet<usize>> = BTreeMap::new();
        let mut edge_faces: BTreeMap<Edge, (usize, usize)> = BTreeMap::new();
        for face in &faces {
            for &(u, v) in &face.boundary {
                faces_of_vertex.entry(u).or_default().insert(face.id);
                let e = edge(u, v);
                if u < v {
                    edge_faces.entry(e).or_insert((usize::MAX, usize::MAX)).0 = face.id;
                } else {
                    edge_faces.entry(e).or_insert((usize::MAX, usize::MAX)).1 = face.id;
                }
            }
        }
        let mut adjacent = vec![BTreeSet::new(); faces.len()];
        for (&_, &(a, b)) in &edge_faces {
            if a != b {
                adjacent[a].insert(b);
                adjacent[b].insert(a);
            }
        }
        let on_outer: BTreeSet<Vertex> = c0.vertex_set();
        Ok(Self {
            faces,
            outer,
            degree,
            faces_of_vertex,
            adjacent,
            edge_faces,
            on_outer,
        })
    }

    fn face_degree(&self, f: usize) -> usize {
        self.faces[f].degree()
    }

    fn profile(&self, f: usize) -> Vec<usize> {
        let mut p: Vec<usize> = self.faces[f]
            .walk_vertices()
            .map(|v| self.degree[&v])
            .collect();
        p.sort_unstable();
        p
    }

    fn vertex_on_face(&self, v: Vertex, f: usize) -> bool {
        self.faces[f].contains_vertex(v)
    }

    /// On no face of the given id set, but adjacent to one of its vertices.
    fn vertex_adjacent_to_face(&self, g: &PlaneGraph, v: Vertex, f: usize) -> bool {
        !self.vertex_on_face(v, f)
            && g.neighbors(v)
                .iter()
                .any(|&w| self.vertex_on_face(w, f))
    }

    fn internal_face(&self, f: usize) -> bool {
        f != self.outer
            && self.faces[f]
                .walk_vertices()
                .all(|v| !self.on_outer.contains(&v))
    }

    fn meets_outer(&self, f: usize) -> bool {
        f != self.outer
            && self.faces[f]
                .walk_vertices()
                .any(|v| self.on_outer.contains(&v))
    }

    fn adjacent_internal_3faces(&self, f: usize) -> Vec<usize> {
        self.adjacent[f]
            .iter()
            .copied()
            .filter(|&t| self.face_degree(t) == 3 && self.internal_face(t))
            .collect()
    }
}

/// Initial charges: `2d(v)-6`, `d(f)-6`, and `d(C0)+6` for the outer face.
/// The total is exactly zero (asserted).
pub fn initial_charges(g: &PlaneGraph, c0: &CycleRef) -> Result<ChargeLedger, DischargeError> {
    let geo = Geometry::build(g, c0)?;
    let vertex2 = geo
        .degree
        .iter()
        .map(|(&v, &d)| (v, 4 * d as i64 - 12))
        .collect();
    let face2 = geo
        .faces
        .iter()
        .map(|f| {
            let d = f.degree() as i64;
            (f.id, if f.id == geo.outer { 2 * d + 12 } else { 2 * d - 12 })
        })
        .collect();
    let ledger = ChargeLedger {
        vertex2,
        face2,
        log: Vec::new(),
    };
    assert_eq!(ledger.total2(), 0, "initial charges must cancel exactly");
    Ok(ledger)
}

/// Computes every structural predicate the rules consult. Deterministic and
/// idempotent: a pure function of the embedding and the outer cycle.
pub fn compute_tags(g: &PlaneGraph, c0: &CycleRef) -> Result<StructuralTags, DischargeError> {
    let geo = Geometry::build(g, c0)?;
    let mut vertex = BTreeMap::new();
    let mut face: BTreeMap<usize, FaceTags> = BTreeMap::new();
    let mut anomalies = Vec::new();

    for f in &geo.faces {
        face.insert(
            f.id,
            FaceTags {
                degree: f.degree(),
                profile: geo.profile(f.id),
                internal: geo.internal_face(f.id),
                meets_outer: geo.meets_outer(f.id),
                // the outer face plays no role but its own
                bad6: f.id != geo.outer
                    && f.degree() == 6
                    && geo.adjacent[f.id]
                        .iter()
                        .any(|&t| geo.face_degree(t) == 3),
                special6: false,
                special7: false,
                base_of: Vec::new(),
            },
        );
    }
    for f in 0..geo.faces.len() {
        if f == geo.outer {
            continue;
        }
        let t = face.get_mut(&f).unwrap();
        let internal_3 = geo.adjacent_internal_3faces(f).len();
        t.special6 = t.bad6 && t.meets_outer && internal_3 == 1;
        t.special7 = t.degree == 7 && t.meets_outer && internal_3 == 2;
    }

    // roofs: apex of a 3-face across from a (3,3,3,3,3,3)-face
    for tri in 0..geo.faces.len() {
        if geo.face_degree(tri) != 3 {
            continue;
        }
        let verts: Vec<Vertex> = geo.faces[tri].walk_vertices().collect();
        for &apex in &verts {
            let opposite: Vec<Vertex> = verts.iter().copied().filter(|&w| w != apex).collect();
            let e = edge(opposite[0], opposite[1]);
            let &(a, b) = geo.edge_faces.get(&e).unwrap();
            let other = if a == tri { b } else { a };
            if other != tri
                && other != geo.outer
                && geo.face_degree(other) == 6
                && geo.profile(other) == vec![3; 6]
                && !geo.vertex_on_face(apex, other)
            {
                face.get_mut(&other).unwrap().base_of.push(apex);
            }
        }
    }

    for &v in g.vertices().iter() {
        let d = geo.degree[&v];
        let light = geo.faces_of_vertex[&v]
            .iter()
            .any(|&f| geo.face_degree(f) == 3);
        let roof_of: Vec<usize> = face
            .iter()
            .filter(|(_, t)| t.base_of.contains(&v))
            .map(|(&f, _)| f)
            .collect();
        let rich_to: BTreeSet<usize> = if d == 4 {
            geo.faces_of_vertex[&v]
                .iter()
                .copied()
                .filter(|&f| {
                    geo.face_degree(f) >= 7
                        && !geo.faces_of_vertex[&v].iter().any(|&t| {
                            geo.face_degree(t) == 3 && geo.adjacent[f].contains(&t)
                        })
                })
                .collect()
        } else {
            BTreeSet::new()
        };
        if roof_of.len() > 1 {
            anomalies.push(format!("vertex {v} is the roof of {} faces", roof_of.len()));
        }
        if !roof_of.is_empty()
            && geo.faces_of_vertex[&v]
                .iter()
                .any(|&f| geo.profile(f) == vec![3, 3, 3, 3, 3, 4])
        {
            anomalies.push(format!(
                "vertex {v} is a roof and on a (3,3,3,3,3,4)-face; paying the base only"
            ));
        }
        vertex.insert(
            v,
            VertexTags {
                degree: d,
                internal: !geo.on_outer.contains(&v),
                light,
                roof_of,
                rich_to,
            },
        );
    }
    Ok(StructuralTags {
        vertex,
        face,
        anomalies,
    })
}

/// Executes the selected rule system on a fresh ledger. Transfers fire in
/// rule order; within a rule, sources and targets are visited in ascending
/// (vertex-id, face-id) order, so logs are reproducible byte for byte.
pub fn apply_rules(
    mut ledger: ChargeLedger,
    g: &PlaneGraph,
    c0: &CycleRef,
    tags: &StructuralTags,
    rules: RuleSet,
) -> Result<ChargeLedger, DischargeError> {
    if !ledger.log.is_empty() {
        return Err(DischargeError::NotFresh);
    }
    let geo = Geometry::build(g, c0)?;
    assert_eq!(ledger.total2(), 0);
    match rules {
        RuleSet::SectionTwo => section_two(&mut ledger, g, &geo, tags),
        RuleSet::SectionThree => section_three(&mut ledger, g, &geo, tags),
    }
    assert_eq!(ledger.total2(), 0, "transfers must conserve charge");
    Ok(ledger)
}

fn is_333(profile: &[usize]) -> bool {
    profile == [3, 3, 3]
}

fn section_two(ledger: &mut ChargeLedger, g: &PlaneGraph, geo: &Geometry, tags: &StructuralTags) {
    let outer = Element::Face(geo.outer);

    // R1: internal 4+-vertices feed 3-faces and selected 6-faces
    for (&v, vt) in &tags.vertex {
        if !vt.internal || vt.degree < 4 {
            continue;
        }
        let el = Element::Vertex(v);
        for &f in &geo.faces_of_vertex[&v] {
            if geo.face_degree(f) == 3 {
                ledger.transfer(el, Element::Face(f), 3, "R1");
            }
        }
        // one half to the base, or else to an incident (3,3,3,3,3,4)-face
        let half_target = vt.roof_of.first().copied().or_else(|| {
            geo.faces_of_vertex[&v]
                .iter()
                .copied()
                .find(|&f| geo.profile(f) == vec![3, 3, 3, 3, 3, 4])
        });
        if let Some(f) = half_target {
            ledger.transfer(el, Element::Face(f), 1, "R1");
        }
        // adjacent (3,3,3)-faces
        let adjacent_333: Vec<usize> = (0..geo.faces.len())
            .filter(|&f| {
                f != geo.outer
                    && geo.face_degree(f) == 3
                    && is_333(&geo.profile(f))
                    && geo.vertex_adjacent_to_face(g, v, f)
            })
            .collect();
        for &f in &adjacent_333 {
            let amount2 = if vt.degree == 4 { 2 } else { 4 };
            ledger.transfer(el, Element::Face(f), amount2, "R1");
        }
        // halves to incident 6-faces not adjacent to the (3,3,3)-face fed
        // above
        for &f in &geo.faces_of_vertex[&v] {
            if geo.face_degree(f) != 6 {
                continue;
            }
            let blocked = adjacent_333
                .iter()
                .any(|&t| geo.adjacent[f].contains(&t));
            if !blocked {
                ledger.transfer(el, Element::Face(f), 1, "R1");
            }
        }
    }

    // R2: big and boundary faces feed internal 3-faces, surplus to the outer
    // face
    for f in 0..geo.faces.len() {
        if f == geo.outer {
            continue;
        }
        let d = geo.face_degree(f);
        let ft = &tags.face[&f];
        if d >= 7 || (d == 6 && !ft.internal) {
            for t in geo.adjacent_internal_3faces(f) {
                ledger.transfer(Element::Face(f), Element::Face(t), 2, "R2");
            }
            let rest = ledger.charge2(Element::Face(f));
            if rest > 0 {
                ledger.transfer(Element::Face(f), outer, rest, "R2");
            }
        } else if d == 6 && ft.internal {
            for t in geo.adjacent_internal_3faces(f) {
                let shared_34_edge = geo.faces[f].undirected_edges().iter().any(|e| {
                    geo.faces[t].undirected_edges().contains(e)
                        && {
                            let (a, b) = (geo.degree[&e.0], geo.degree[&e.1]);
                            (a == 3 && b >= 4) || (a >= 4 && b == 3)
                        }
                });
                let has_free_big_vertex = geo.faces[f].vertex_set().iter().any(|&w| {
                    geo.degree[&w] >= 4
                        && !(0..geo.faces.len()).any(|t2| {
                            t2 != geo.outer
                                && geo.face_degree(t2) == 3
                                && is_333(&geo.profile(t2))
                                && geo.vertex_adjacent_to_face(g, w, t2)
                        })
                });
                let all_threes = geo.profile(f) == vec![3; 6];
                if shared_34_edge || has_free_big_vertex || all_threes {
                    ledger.transfer(Element::Face(f), Element::Face(t), 1, "R2");
                }
            }
        }
    }

    // R3: the outer face settles with its vertices, the 3-faces it meets,
    // and its special 6-faces
    for &v in &geo.on_outer {
        let mu2 = 4 * geo.degree[&v] as i64 - 12;
        ledger.transfer(Element::Vertex(v), outer, mu2, "R3");
    }
    for f in 0..geo.faces.len() {
        if geo.face_degree(f) == 3 && tags.face[&f].meets_outer {
            ledger.transfer(outer, Element::Face(f), 6, "R3");
        }
    }
    for f in 0..geo.faces.len() {
        if tags.face[&f].special6 {
            ledger.transfer(outer, Element::Face(f), 2, "R3");
        }
    }
}

/// Doubled charge an internal 3-face still needs after its incident
/// 4+-vertices have paid (one share per boundary edge).
fn need2_of_3face(geo: &Geometry, f: usize) -> i64 {
    let big = geo.faces[f]
        .vertex_set()
        .iter()
        .filter(|&&v| geo.degree[&v] >= 4)
        .count() as i64;
    (6 - 3 * big).max(0)
}

fn section_three(
    ledger: &mut ChargeLedger,
    _g: &PlaneGraph,
    geo: &Geometry,
    tags: &StructuralTags,
) {
    let outer = Element::Face(geo.outer);

    // R1: internal 3-faces collect from incident 4+-vertices, then their
    // remaining need evenly from the three faces across their edges
    for f in 0..geo.faces.len() {
        if geo.face_degree(f) != 3 || !geo.internal_face(f) {
            continue;
        }
        for v in geo.faces[f].vertex_set() {
            if geo.degree[&v] >= 4 {
                ledger.transfer(Element::Vertex(v), Element::Face(f), 3, "R1");
            }
        }
        let share2 = need2_of_3face(geo, f) / 3;
        if share2 > 0 {
            for &(u, w) in &geo.faces[f].boundary {
                let e = edge(u, w);
                let &(a, b) = geo.edge_faces.get(&e).unwrap();
                let across = if a == f { b } else { a };
                ledger.transfer(Element::Face(across), Element::Face(f), share2, "R1");
            }
        }
    }

    // R2: internal 7-faces collect halves from rich 4-vertices and
    // 5+-vertices
    for f in 0..geo.faces.len() {
        if geo.face_degree(f) != 7 || !geo.internal_face(f) {
            continue;
        }
        for v in geo.faces[f].vertex_set() {
            let vt = &tags.vertex[&v];
            if vt.degree >= 5 || (vt.degree == 4 && vt.rich_to.contains(&f)) {
                ledger.transfer(Element::Vertex(v), Element::Face(f), 1, "R2");
            }
        }
    }

    // R3: every 7+-face forwards its surplus to the outer face
    for f in 0..geo.faces.len() {
        if f == geo.outer || geo.face_degree(f) < 7 {
            continue;
        }
        let rest = ledger.charge2(Element::Face(f));
        if rest > 0 {
            ledger.transfer(Element::Face(f), outer, rest, "R3");
        }
    }

    // R4: the outer face settles with its vertices, the 3-faces it meets,
    // and its special 7-faces
    for &v in &geo.on_outer {
        let mu2 = 4 * geo.degree[&v] as i64 - 12;
        ledger.transfer(Element::Vertex(v), outer, mu2, "R4");
    }
    for f in 0..geo.faces.len() {
        if geo.face_degree(f) == 3 && tags.face[&f].meets_outer {
            ledger.transfer(outer, Element::Face(f), 6, "R4");
        }
    }
    for f in 0..geo.faces.len() {
        if tags.face[&f].special7 {
            ledger.transfer(outer, Element::Face(f), 2, "R4");
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Eq1Check {
    pub face: usize,
    pub degree: usize,
    /// Vertices of the longest boundary path avoiding triangles that still
    /// need charge from this face.
    pub longest_friendly_path: usize,
    /// Doubled lower bound on what the face must have given the outer face.
    pub bound2: i64,
    pub gave2: i64,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OuterFaceAudit {
    pub d_c0: usize,
    /// 3-faces meeting the outer cycle.
    pub f3: usize,
    /// Special 6-faces (section-2) or special 7-faces (section-3).
    pub special: usize,
    /// Edges between the outer cycle and the rest not lying on any 3-face.
    pub e_prime: usize,
    /// Doubled charge received by the outer face as face surplus.
    pub x2: i64,
    pub mu_star_c0_2: i64,
    pub identity_holds: bool,
    /// Per adjacent 7+-face lower bounds on the surplus (section-3 only).
    pub eq1: Vec<Eq1Check>,
}

/// Audits the outer face: recomputes its final charge from the counted
/// quantities and cross-checks the transfer log, plus the friendly-path
/// lower bounds under `section-3` rules. An identity mismatch is an error.
pub fn outer_audit(
    ledger: &ChargeLedger,
    g: &PlaneGraph,
    c0: &CycleRef,
    tags: &StructuralTags,
    rules: RuleSet,
) -> Result<OuterFaceAudit, DischargeError> {
    let geo = Geometry::build(g, c0)?;
    let outer = geo.outer;
    let d_c0 = c0.len();

    let f3 = (0..geo.faces.len())
        .filter(|&f| geo.face_degree(f) == 3 && tags.face[&f].meets_outer)
        .count();
    let special = match rules {
        RuleSet::SectionTwo => tags.face.values().filter(|t| t.special6).count(),
        RuleSet::SectionThree => tags.face.values().filter(|t| t.special7).count(),
    };
    let e_prime = g
        .edges()
        .iter()
        .filter(|&&(u, v)| {
            (geo.on_outer.contains(&u) != geo.on_outer.contains(&v)) && {
                let &(a, b) = geo.edge_faces.get(&(u, v)).unwrap();
                geo.face_degree(a) != 3 && geo.face_degree(b) != 3
            }
        })
        .count();

    let surplus_rule = match rules {
        RuleSet::SectionTwo => "R2",
        RuleSet::SectionThree => "R3",
    };
    let x2: i64 = ledger
        .transfers()
        .iter()
        .filter(|t| {
            t.rule == surplus_rule
                && t.to == Element::Face(outer)
                && matches!(t.from, Element::Face(_))
        })
        .map(|t| t.amount2)
        .sum();

    let mu_star_c0_2 = ledger.charge2(Element::Face(outer));
    let sum_mu_vertices2: i64 = geo
        .on_outer
        .iter()
        .map(|v| 4 * geo.degree[v] as i64 - 12)
        .sum();
    let identity2 =
        (2 * d_c0 as i64 + 12) + sum_mu_vertices2 - 6 * f3 as i64 - 2 * special as i64 + x2;
    if identity2 != mu_star_c0_2 {
        return Err(DischargeError::AuditIdentity {
            ledger2: mu_star_c0_2,
            identity2,
        });
    }

    let mut eq1 = Vec::new();
    if rules == RuleSet::SectionThree {
        for f in 0..geo.faces.len() {
            if f == outer || geo.face_degree(f) < 7 || !geo.adjacent[f].contains(&outer) {
                continue;
            }
            let walk: Vec<Vertex> = geo.faces[f].walk_vertices().collect();
            let needy = |v: Vertex| -> bool {
                geo.faces_of_vertex[&v].iter().any(|&t| {
                    geo.face_degree(t) == 3
                        && geo.internal_face(t)
                        && geo.adjacent[f].contains(&t)
                        && need2_of_3face(&geo, t) > 0
                })
            };
            let good: Vec<bool> = walk.iter().map(|&v| !needy(v)).collect();
            let n = walk.len();
            let longest = if good.iter().all(|&b| b) {
                n
            } else {
                // longest circular run of good vertices
                let mut best = 0usize;
                let mut run = 0usize;
                for i in 0..2 * n {
                    if good[i % n] {
                        run += 1;
                        best = best.max(run.min(n));
                    } else {
                        run = 0;
                    }
                }
                best
            };
            let d = geo.face_degree(f) as i64;
            let bound2 = 2 * (d - 6) - 2 * ((d + 1 - longest as i64).div_euclid(3));
            let gave2: i64 = ledger
                .transfers()
                .iter()
                .filter(|t| {
                    t.rule == "R3"
                        && t.from == Element::Face(f)
                        && t.to == Element::Face(outer)
                })
                .map(|t| t.amount2)
                .sum();
            eq1.push(Eq1Check {
                face: f,
                degree: d as usize,
                longest_friendly_path: longest,
                bound2,
                gave2,
                ok: gave2 >= bound2,
            });
        }
    }

    Ok(OuterFaceAudit {
        d_c0,
        f3,
        special,
        e_prime,
        x2,
        mu_star_c0_2,
        identity_holds: true,
        eq1,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct NegativeEntry {
    pub element: Element,
    pub final2: i64,
    pub context: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct NonnegReport {
    pub negatives: Vec<NegativeEntry>,
    pub outer_final2: i64,
    pub outer_positive: bool,
    /// Always zero: transfers conserve.
    pub total2: i64,
}

/// Lists every element with negative final charge, annotated with its local
/// structure, and reports whether the outer face ended positive.
pub fn audit_nonnegativity(ledger: &ChargeLedger, tags: &StructuralTags) -> NonnegReport {
    let mut negatives = Vec::new();
    for (v, c) in ledger.vertices() {
        if c < 0 {
            let t = &tags.vertex[&v];
            negatives.push(NegativeEntry {
                element: Element::Vertex(v),
                final2: c,
                context: format!(
                    "degree {}, {}{}",
                    t.degree,
                    if t.internal { "internal" } else { "on outer cycle" },
                    if t.light { ", light" } else { "" }
                ),
            });
        }
    }
    let outer = tags
        .face
        .iter()
        .find(|(_, t)| !t.internal && !t.meets_outer)
        .map(|(&f, _)| f)
        .expect("outer face is tagged");
    for (f, c) in ledger.faces() {
        if c < 0 && f != outer {
            let t = &tags.face[&f];
            negatives.push(NegativeEntry {
                element: Element::Face(f),
                final2: c,
                context: format!(
                    "{}-face, profile {:?}, {}",
                    t.degree,
                    t.profile,
                    if t.internal { "internal" } else { "meets outer cycle" }
                ),
            });
        }
    }
    let outer_final2 = ledger.charge2(Element::Face(outer));
    if outer_final2 < 0 {
        negatives.push(NegativeEntry {
            element: Element::Face(outer),
            final2: outer_final2,
            context: "outer face".to_string(),
        });
    }
    NonnegReport {
        negatives,
        outer_final2,
        outer_positive: outer_final2 > 0,
        total2: ledger.total2(),
    }
}

/// One-call pipeline: initial charges, tags, rules, audits.
pub struct DischargeRun {
    pub rules: RuleSet,
    pub initial: ChargeLedger,
    pub ledger: ChargeLedger,
    pub tags: StructuralTags,
    pub audit: OuterFaceAudit,
    pub nonnegativity: NonnegReport,
}

pub fn run_discharging(g: &PlaneGraph, rules: RuleSet) -> Result<DischargeRun, DischargeError> {
    let outer = g
        .outer_cycle()
        .ok_or(DischargeError::OuterMismatch)?
        .to_vec();
    let c0 = CycleRef::new(g, outer).map_err(DischargeError::Plane)?;
    let initial = initial_charges(g, &c0)?;
    let tags = compute_tags(g, &c0)?;
    let ledger = apply_rules(initial.clone(), g, &c0, &tags, rules)?;
    let audit = outer_audit(&ledger, g, &c0, &tags, rules)?;
    let nonnegativity = audit_nonnegativity(&ledger, &tags);
    Ok(DischargeRun {
        rules,
        initial,
        ledger,
        tags,
        audit,
        nonnegativity,
    })
}
