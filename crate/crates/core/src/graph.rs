//! Abstract simple graphs.
//!
//! [`SimpleGraph`] is the embedding-free view shared by the cover-graph
//! builder, the solver and the reducibility oracle. A
//! [`PlaneGraph`](crate::plane_graph::PlaneGraph) converts into one with
//! [`PlaneGraph::simple`](crate::plane_graph::PlaneGraph::simple).

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::{edge, Edge, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("edge {0}-{1} references an unknown vertex")]
    UnknownVertex(Vertex, Vertex),
}

/// A finite simple graph over `u32` vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    ids: Vec<Vertex>,
    index: BTreeMap<Vertex, usize>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, GraphError> {
        let ids: BTreeSet<Vertex> = vertices.into_iter().collect();
        let ids: Vec<Vertex> = ids.into_iter().collect();
        let index: BTreeMap<Vertex, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); ids.len()];
        let mut dense = Vec::new();
        let mut seen = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::Loop(a));
            }
            let e = edge(a, b);
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            let (&i, &j) = match (index.get(&e.0), index.get(&e.1)) {
                (Some(i), Some(j)) => (i, j),
                _ => return Err(GraphError::UnknownVertex(e.0, e.1)),
            };
            adj[i].push(j);
            adj[j].push(i);
            dense.push((i.min(j), i.max(j)));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        dense.sort_unstable();
        Ok(Self {
            ids,
            index,
            adj,
            edges: dense,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.ids
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.index.contains_key(&v)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges
            .iter()
            .map(move |&(i, j)| (self.ids[i], self.ids[j]))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[self.index[&v]].len()
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[self.index[&v]].iter().map(move |&i| self.ids[i])
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        match (self.index.get(&u), self.index.get(&v)) {
            (Some(&i), Some(&j)) => self.adj[i].binary_search(&j).is_ok(),
            _ => false,
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.ids.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.ids.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut found = 1;
        while let Some(i) = queue.pop_front() {
            for &j in &self.adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    found += 1;
                    queue.push_back(j);
                }
            }
        }
        found == self.ids.len()
    }

    /// Breadth-first distances from `v`; `usize::MAX` marks unreachable
    /// vertices. Indices follow [`Self::vertices`] order.
    pub fn bfs_distances(&self, v: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.ids.len()];
        let start = self.index[&v];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for &j in &self.adj[i] {
                if dist[j] == usize::MAX {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        dist
    }

    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn id_of(&self, index: usize) -> Vertex {
        self.ids[index]
    }
}
