//! Coordinates for built patches and SVG figures coloured by generation.
//!
//! Every face is drawn as a regular polygon with one common side length, so
//! the vertex angles add up to a full turn. Hyperbolic patches live in the
//! Poincaré disk, Euclidean ones in the plane with unit sides.

pub mod geom;
mod svg;

use std::collections::VecDeque;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::census::CensusReport;
use crate::tessmap::{CombinatorialMap, Geometry, VertexId, OUTER_FACE};
use geom::Motion;

pub use svg::{emit_svg, parse_palette, SvgOptions, DEFAULT_PALETTE};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("{0} geometry has no planar model")]
    UnsupportedGeometry(Geometry),
    #[error("map has no vertex configuration to size its faces")]
    MissingConfiguration,
    #[error("requested {requested} geometry for a {actual} configuration")]
    GeometryMismatch { requested: Geometry, actual: Geometry },
    #[error("census covers {census} vertices, map has {map}")]
    CensusMismatch { census: usize, map: usize },
    #[error("vertex {vertex} placed at two points {distance:e} apart")]
    Inconsistent { vertex: VertexId, distance: f64 },
    #[error("bad palette entry {0:?}")]
    Palette(String),
}

/// Largest disagreement tolerated between two placements of one vertex.
pub const AGREEMENT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskPoint {
    pub x: f64,
    pub y: f64,
}

impl DiskPoint {
    fn from_complex(z: Complex64) -> Self {
        DiskPoint { x: z.re, y: z.im }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Layout {
    pub geometry: Geometry,
    /// Position of every placed vertex.
    pub positions: Vec<Option<DiskPoint>>,
    /// Generation of every vertex within the census horizon.
    pub generation: Vec<Option<usize>>,
    /// Vertex pairs joined by an edge, each once, lower id first.
    pub edges: Vec<(VertexId, VertexId)>,
    /// Common side length (hyperbolic units or 1 in the plane).
    pub side: f64,
}

impl Layout {
    /// Distance between two placed vertices in the layout's own metric.
    pub fn distance(&self, a: VertexId, b: VertexId) -> Option<f64> {
        let (p, q) = (self.positions[a]?.to_complex(), self.positions[b]?.to_complex());
        Some(match self.geometry {
            Geometry::Euclidean => (p - q).norm(),
            _ => geom::hyperbolic_distance(p, q),
        })
    }
}

/// Places every face reachable from the seed face across interior edges.
///
/// The seed face is centred at the origin with vertex `k` at angle
/// `2 pi k / p`. Each further face is the canonical regular polygon moved
/// by the isometry that lays one of its edges on the already placed
/// shared edge. A vertex reached twice must land within [`AGREEMENT`].
pub fn layout(map: &CombinatorialMap, census: &CensusReport, geometry: Geometry) -> Result<Layout, RenderError> {
    let config = map.config().ok_or(RenderError::MissingConfiguration)?;
    if geometry == Geometry::Spherical {
        return Err(RenderError::UnsupportedGeometry(geometry));
    }
    let actual = config.geometry();
    if actual != geometry {
        return Err(RenderError::GeometryMismatch { requested: geometry, actual });
    }
    if census.generation.len() != map.vertex_count() {
        return Err(RenderError::CensusMismatch { census: census.generation.len(), map: map.vertex_count() });
    }

    let side = match geometry {
        Geometry::Euclidean => 1.0,
        _ => geom::hyperbolic_side(config),
    };
    let radius = |p: usize| match geometry {
        Geometry::Euclidean => 0.5 / (PI / p as f64).sin(),
        _ => geom::disk_circumradius(p, side),
    };
    let canonical = |p: usize, k: usize| Complex64::from_polar(radius(p), 2.0 * PI * k as f64 / p as f64);

    let mut pos: Vec<Option<Complex64>> = vec![None; map.vertex_count()];
    let put = |pos: &mut Vec<Option<Complex64>>, v: VertexId, z: Complex64| -> Result<(), RenderError> {
        match pos[v] {
            None => {
                pos[v] = Some(z);
                Ok(())
            }
            Some(old) => {
                let distance = (old - z).norm();
                if distance > AGREEMENT {
                    Err(RenderError::Inconsistent { vertex: v, distance })
                } else {
                    Ok(())
                }
            }
        }
    };

    let mut placed = vec![false; map.face_count()];
    let mut queue = VecDeque::new();
    if map.face_count() > 0 {
        let p = map.face_degree(0);
        for (k, v) in map.face_vertices(0).into_iter().enumerate() {
            put(&mut pos, v, canonical(p, k))?;
        }
        placed[0] = true;
        queue.push_back(0);
    }
    while let Some(f) = queue.pop_front() {
        for d in map.face_darts(f) {
            let t = map.twin(d);
            let g = map.face(t);
            if g == OUTER_FACE || placed[g] {
                continue;
            }
            // Canonical edge 0 -> 1 of g goes onto t, i.e. head(d) -> origin(d).
            let darts = rotate_to(map.face_darts(g), t);
            let p = map.face_degree(g);
            let (q0, q1) = (pos[map.origin(t)].unwrap(), pos[map.head(t)].unwrap());
            let motion = Motion::new(geometry, canonical(p, 0), canonical(p, 1), q0, q1);
            for (k, &x) in darts.iter().enumerate() {
                put(&mut pos, map.origin(x), motion.apply(canonical(p, k)))?;
            }
            placed[g] = true;
            queue.push_back(g);
        }
    }

    let mut edges = Vec::with_capacity(map.edge_count());
    for d in 0..map.dart_count() {
        let (a, b) = (map.origin(d), map.head(d));
        if a < b || (a == b && d < map.twin(d)) {
            edges.push((a, b));
        }
    }
    Ok(Layout {
        geometry,
        positions: pos.into_iter().map(|z| z.map(DiskPoint::from_complex)).collect(),
        generation: census.generation.clone(),
        edges,
        side,
    })
}

fn rotate_to(mut darts: Vec<usize>, first: usize) -> Vec<usize> {
    let k = darts.iter().position(|&d| d == first).expect("dart on face");
    darts.rotate_left(k);
    darts
}
