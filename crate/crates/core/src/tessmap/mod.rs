//! Finite patches of vertex-transitive tessellations as half-edge maps.
//!
//! A patch is grown from one seed face by completing the vertex stars on its
//! boundary, one sweep of the boundary cycle per layer. The result is a
//! [`CombinatorialMap`] whose darts carry `twin`, `next`, origin vertex and
//! face; darts on the open frontier belong to an explicit outer face.

mod build;
mod config;
mod dual;
mod io;
mod validate;

use serde::Serialize;
use thiserror::Error;

pub use build::{build, BuildResult, Builder};
pub use config::{classify, Geometry, VertexConfiguration, MAX_FACE_DEGREE, MAX_VERTEX_DEGREE};
pub use dual::dualize;
pub use io::DartRecord;
pub use validate::{validate, ValidationReport, Violation};

pub type DartId = usize;
pub type VertexId = usize;
pub type FaceId = usize;

/// Face id carried by darts on the frontier of an open patch.
pub const OUTER_FACE: FaceId = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("invalid vertex configuration: {0}")]
    InvalidConfiguration(String),
    #[error("vertex {vertex} admits no legal completing face: {reason}")]
    Inconsistent { vertex: VertexId, reason: String },
    #[error("malformed dart table: {0}")]
    Malformed(String),
}

/// Half-edge map of a planar patch.
///
/// `next[d]` is the following dart counterclockwise around `face[d]`, so the
/// face lies to the left of every one of its darts. The outer face of an open
/// patch is walked clockwise around the patch by the same rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CombinatorialMap {
    pub(crate) twin: Vec<DartId>,
    pub(crate) next: Vec<DartId>,
    #[serde(skip)]
    pub(crate) prev: Vec<DartId>,
    pub(crate) origin: Vec<VertexId>,
    pub(crate) face: Vec<FaceId>,
    pub(crate) vertex_count: usize,
    /// Degree of every interior face, indexed by face id.
    pub(crate) face_degrees: Vec<usize>,
    /// One dart of every interior face, indexed by face id.
    #[serde(skip)]
    pub(crate) face_start: Vec<DartId>,
    /// Vertex star every completed vertex must realise, when known.
    pub(crate) config: Option<VertexConfiguration>,
}

impl CombinatorialMap {
    pub fn dart_count(&self) -> usize {
        self.twin.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.twin.len() / 2
    }

    /// Number of interior faces; the outer face is not counted.
    pub fn face_count(&self) -> usize {
        self.face_degrees.len()
    }

    pub fn face_degree(&self, f: FaceId) -> usize {
        self.face_degrees[f]
    }

    pub fn face_degrees(&self) -> &[usize] {
        &self.face_degrees
    }

    pub fn config(&self) -> Option<&VertexConfiguration> {
        self.config.as_ref()
    }

    pub fn twin(&self, d: DartId) -> DartId {
        self.twin[d]
    }

    pub fn next(&self, d: DartId) -> DartId {
        self.next[d]
    }

    pub fn prev(&self, d: DartId) -> DartId {
        self.prev[d]
    }

    pub fn origin(&self, d: DartId) -> VertexId {
        self.origin[d]
    }

    pub fn head(&self, d: DartId) -> VertexId {
        self.origin[self.twin[d]]
    }

    pub fn face(&self, d: DartId) -> FaceId {
        self.face[d]
    }

    /// Next outgoing dart counterclockwise around `origin(d)`.
    pub fn rot_ccw(&self, d: DartId) -> DartId {
        self.twin[self.prev[d]]
    }

    /// True when the map has no frontier.
    pub fn is_closed(&self) -> bool {
        !self.face.contains(&OUTER_FACE)
    }

    /// One outgoing dart per vertex (`None` for isolated vertices).
    pub fn outgoing(&self) -> Vec<Option<DartId>> {
        let mut out = vec![None; self.vertex_count];
        for (d, &v) in self.origin.iter().enumerate() {
            out[v].get_or_insert(d);
        }
        out
    }

    /// Vertices with an outgoing dart on the outer face, sorted.
    pub fn boundary_vertices(&self) -> Vec<VertexId> {
        let mut on = vec![false; self.vertex_count];
        for (d, &f) in self.face.iter().enumerate() {
            if f == OUTER_FACE {
                on[self.origin[d]] = true;
            }
        }
        on.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect()
    }

    /// Neighbour lists derived from the darts; each edge appears once per endpoint.
    pub fn adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for d in 0..self.dart_count() {
            adj[self.origin[d]].push(self.head(d));
        }
        adj
    }

    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &v in &self.origin {
            deg[v] += 1;
        }
        deg
    }

    /// Vertices of interior face `f` in counterclockwise order.
    pub fn face_vertices(&self, f: FaceId) -> Vec<VertexId> {
        self.face_darts(f).into_iter().map(|d| self.origin[d]).collect()
    }

    /// Darts of interior face `f` in counterclockwise order.
    pub fn face_darts(&self, f: FaceId) -> Vec<DartId> {
        let Some(&start) = self.face_start.get(f) else {
            return Vec::new();
        };
        let mut out = vec![start];
        let mut d = self.next[start];
        while d != start && out.len() <= self.dart_count() {
            out.push(d);
            d = self.next[d];
        }
        out
    }

    /// `V - E + F`, counting the outer face only when the map is closed.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub(crate) fn rebuild_prev(&mut self) {
        let mut prev = vec![0; self.next.len()];
        for (d, &n) in self.next.iter().enumerate() {
            prev[n] = d;
        }
        self.prev = prev;
    }
}
