//! Incremental construction of plane graphs.
//!
//! Start from a cycle and grow the embedding one face operation at a time:
//! [`PlaneBuilder::add_path`] splits a face with a chordal path,
//! [`PlaneBuilder::add_bridge`] hangs a pendant path inside a face. Rotations
//! stay consistent by construction, so hand-drawn fixtures never need
//! hand-maintained rotation lists.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{Face, PlaneError, PlaneGraph};
use crate::Vertex;

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("vertex {0} already exists")]
    VertexExists(Vertex),
    #[error("vertex {0} does not exist")]
    NoSuchVertex(Vertex),
    #[error("no face contains all of {0:?}")]
    NoSuchFace(Vec<Vertex>),
    #[error("{0} faces contain all of {1:?}; be more specific")]
    AmbiguousFace(usize, Vec<Vertex>),
    #[error("vertex {0} is not on the selected face")]
    NotOnFace(Vertex),
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

pub struct PlaneBuilder {
    rotation: BTreeMap<Vertex, Vec<Vertex>>,
    outer: Option<Vec<Vertex>>,
}

impl PlaneBuilder {
    /// Starts from a simple cycle through the given vertices (in order).
    pub fn from_cycle(cycle: &[Vertex]) -> Self {
        assert!(cycle.len() >= 3, "a cycle needs at least 3 vertices");
        let n = cycle.len();
        let mut rotation = BTreeMap::new();
        for i in 0..n {
            let prev = cycle[(i + n - 1) % n];
            let next = cycle[(i + 1) % n];
            rotation.insert(cycle[i], vec![prev, next]);
        }
        Self {
            rotation,
            outer: None,
        }
    }

    /// Declares which cycle bounds the outer face of the finished graph.
    pub fn set_outer(&mut self, cycle: Vec<Vertex>) {
        self.outer = Some(cycle);
    }

    fn snapshot(&self) -> Result<PlaneGraph, PlaneError> {
        PlaneGraph::from_rotations(self.rotation.clone(), None)
    }

    /// The unique current face whose boundary contains every vertex in
    /// `face_with`.
    fn select_face(&self, face_with: &[Vertex]) -> Result<Face, BuildError> {
        let g = self.snapshot()?;
        let faces = g.trace_faces()?;
        let hits: Vec<&Face> = faces
            .iter()
            .filter(|f| face_with.iter().all(|&v| f.contains_vertex(v)))
            .collect();
        match hits.len() {
            0 => Err(BuildError::NoSuchFace(face_with.to_vec())),
            1 => Ok(hits[0].clone()),
            n => Err(BuildError::AmbiguousFace(n, face_with.to_vec())),
        }
    }

    fn face_by_id(&self, id: usize) -> Result<Face, BuildError> {
        let g = self.snapshot()?;
        let faces = g.trace_faces()?;
        faces
            .into_iter()
            .find(|f| f.id == id)
            .ok_or(BuildError::NoSuchFace(vec![]))
    }

    /// Current faces, in trace order. Mostly useful to pick an id for the
    /// first insertion, where both sides of a bare cycle look alike.
    pub fn current_faces(&self) -> Result<Vec<Face>, BuildError> {
        Ok(self.snapshot()?.trace_faces()?)
    }

    /// Inserts `new` into the rotation of `at`, in the face corner given by
    /// the first occurrence of `at` on `face`.
    fn insert_at_corner(&mut self, face: &Face, at: Vertex, new: Vertex) -> Result<(), BuildError> {
        let n = face.boundary.len();
        let j = face
            .boundary
            .iter()
            .position(|&(s, _)| s == at)
            .ok_or(BuildError::NotOnFace(at))?;
        let arrive = face.boundary[(j + n - 1) % n].0;
        let nbrs = self.rotation.get_mut(&at).unwrap();
        let pos = nbrs.iter().position(|&x| x == arrive).unwrap();
        nbrs.insert(pos + 1, new);
        Ok(())
    }

    /// Adds the path `from - via[0] - ... - via[last] - to` inside the face
    /// selected by `face_with`, splitting it in two. The `via` vertices must
    /// be fresh; `from` and `to` must lie on the selected face.
    pub fn add_path(
        &mut self,
        face_with: &[Vertex],
        from: Vertex,
        via: &[Vertex],
        to: Vertex,
    ) -> Result<&mut Self, BuildError> {
        self.check_endpoints(&[from, to])?;
        let face = self.select_face(face_with)?;
        self.add_path_on(face, from, via, to)
    }

    /// [`Self::add_path`] with the target face picked by id.
    pub fn add_path_in(
        &mut self,
        face_id: usize,
        from: Vertex,
        via: &[Vertex],
        to: Vertex,
    ) -> Result<&mut Self, BuildError> {
        self.check_endpoints(&[from, to])?;
        let face = self.face_by_id(face_id)?;
        self.add_path_on(face, from, via, to)
    }

    fn check_endpoints(&self, existing: &[Vertex]) -> Result<(), BuildError> {
        for &v in existing {
            if !self.rotation.contains_key(&v) {
                return Err(BuildError::NoSuchVertex(v));
            }
        }
        Ok(())
    }

    fn add_path_on(
        &mut self,
        face: Face,
        from: Vertex,
        via: &[Vertex],
        to: Vertex,
    ) -> Result<&mut Self, BuildError> {
        for &v in via {
            if self.rotation.contains_key(&v) {
                return Err(BuildError::VertexExists(v));
            }
        }
        let first = *via.first().unwrap_or(&to);
        let last = *via.last().unwrap_or(&from);
        self.insert_at_corner(&face, from, first)?;
        self.insert_at_corner(&face, to, last)?;
        let chain: Vec<Vertex> = std::iter::once(from)
            .chain(via.iter().copied())
            .chain(std::iter::once(to))
            .collect();
        for w in 1..chain.len().saturating_sub(1) {
            self.rotation
                .insert(chain[w], vec![chain[w - 1], chain[w + 1]]);
        }
        Ok(self)
    }

    /// Adds the chord `u - v` inside the face selected by `face_with`.
    pub fn add_edge(
        &mut self,
        face_with: &[Vertex],
        u: Vertex,
        v: Vertex,
    ) -> Result<&mut Self, BuildError> {
        self.add_path(face_with, u, &[], v)
    }

    /// [`Self::add_edge`] with the target face picked by id.
    pub fn add_edge_in(
        &mut self,
        face_id: usize,
        u: Vertex,
        v: Vertex,
    ) -> Result<&mut Self, BuildError> {
        self.add_path_in(face_id, u, &[], v)
    }

    /// Hangs the pendant path `anchor - chain[0] - ... - chain[last]` inside
    /// the face selected by `face_with`. The face is not split.
    pub fn add_bridge(
        &mut self,
        face_with: &[Vertex],
        anchor: Vertex,
        chain: &[Vertex],
    ) -> Result<&mut Self, BuildError> {
        self.check_endpoints(&[anchor])?;
        let face = self.select_face(face_with)?;
        self.add_bridge_on(face, anchor, chain)
    }

    /// [`Self::add_bridge`] with the target face picked by id.
    pub fn add_bridge_in(
        &mut self,
        face_id: usize,
        anchor: Vertex,
        chain: &[Vertex],
    ) -> Result<&mut Self, BuildError> {
        self.check_endpoints(&[anchor])?;
        let face = self.face_by_id(face_id)?;
        self.add_bridge_on(face, anchor, chain)
    }

    fn add_bridge_on(
        &mut self,
        face: Face,
        anchor: Vertex,
        chain: &[Vertex],
    ) -> Result<&mut Self, BuildError> {
        assert!(!chain.is_empty());
        for &v in chain {
            if self.rotation.contains_key(&v) {
                return Err(BuildError::VertexExists(v));
            }
        }
        self.insert_at_corner(&face, anchor, chain[0])?;
        let full: Vec<Vertex> = std::iter::once(anchor).chain(chain.iter().copied()).collect();
        for w in 1..full.len() {
            let mut nbrs = vec![full[w - 1]];
            if w + 1 < full.len() {
                nbrs.push(full[w + 1]);
            }
            self.rotation.insert(full[w], nbrs);
        }
        Ok(self)
    }

    pub fn build(&self) -> Result<PlaneGraph, BuildError> {
        Ok(PlaneGraph::from_rotations(
            self.rotation.clone(),
            self.outer.clone(),
        )?)
    }
}
