use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::{CombinatorialMap, DartId, MapError, VertexConfiguration, VertexId, OUTER_FACE};

/// A patch together with how it was grown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BuildResult {
    pub map: CombinatorialMap,
    pub layers_built: usize,
    /// True iff the patch closed up into a sphere.
    pub closed: bool,
    pub boundary_vertices: Vec<VertexId>,
}

fn ends(chain: &[VertexId]) -> Vec<VertexId> {
    chain.first().into_iter().chain(chain.last()).copied().collect()
}

/// Grows a patch one boundary sweep at a time.
///
/// Layer 0 is the seed face, of degree `face_degrees[0]`, with vertices
/// `0..d` in counterclockwise order. Each later layer completes the vertex
/// star of every vertex that was on the boundary when the layer started.
#[derive(Debug, Clone)]
pub struct Builder {
    config: VertexConfiguration,
    map: CombinatorialMap,
    /// The outgoing outer-face dart of each boundary vertex.
    out_outer: Vec<Option<DartId>>,
    layers_built: usize,
    closed: bool,
    fallbacks: usize,
}

/// The face to add next at a boundary vertex, before its degree is chosen.
struct Plan {
    /// Consecutive outer darts the new face will absorb.
    darts: VecDeque<DartId>,
    /// Degrees allowed by every vertex the face touches.
    candidates: BTreeSet<usize>,
    /// The path is the whole boundary cycle.
    full_cycle: bool,
}

impl Builder {
    pub fn new(config: VertexConfiguration) -> Self {
        let d = config.face_degrees()[0];
        let mut map = CombinatorialMap {
            twin: Vec::with_capacity(2 * d),
            next: Vec::with_capacity(2 * d),
            prev: Vec::with_capacity(2 * d),
            origin: Vec::with_capacity(2 * d),
            face: Vec::with_capacity(2 * d),
            vertex_count: d,
            face_degrees: vec![d],
            face_start: vec![0],
            config: Some(config.clone()),
        };
        // Interior dart 2k runs k -> k+1, its twin 2k+1 runs back on the outer face.
        for k in 0..d {
            let (a, b) = (k, (k + 1) % d);
            map.twin.extend([2 * k + 1, 2 * k]);
            map.origin.extend([a, b]);
            map.face.extend([0, OUTER_FACE]);
            map.next.extend([2 * ((k + 1) % d), 2 * ((k + d - 1) % d) + 1]);
            map.prev.extend([0, 0]);
        }
        map.rebuild_prev();
        let out_outer = (0..d).map(|k| Some(2 * ((k + d - 1) % d) + 1)).collect();
        Builder { config, map, out_outer, layers_built: 0, closed: false, fallbacks: 0 }
    }

    pub fn config(&self) -> &VertexConfiguration {
        &self.config
    }

    pub fn map(&self) -> &CombinatorialMap {
        &self.map
    }

    pub fn layers_built(&self) -> usize {
        self.layers_built
    }

    /// Faces placed by the smallest-degree fallback because nothing was forced.
    pub fn fallbacks(&self) -> usize {
        self.fallbacks
    }

    pub fn closed(&self) -> bool {
        self.closed
    }

    pub fn result(&self) -> BuildResult {
        BuildResult {
            map: self.map.clone(),
            layers_built: self.layers_built,
            closed: self.closed,
            boundary_vertices: self.map.boundary_vertices(),
        }
    }

    pub fn into_result(self) -> BuildResult {
        let boundary_vertices = self.map.boundary_vertices();
        BuildResult {
            map: self.map,
            layers_built: self.layers_built,
            closed: self.closed,
            boundary_vertices,
        }
    }

    /// Grows until `layers` sweeps are done or the patch closes.
    pub fn grow_to(&mut self, layers: usize) -> Result<(), MapError> {
        while self.layers_built < layers && !self.closed {
            self.grow_layer()?;
        }
        Ok(())
    }

    /// Completes every vertex on the current boundary.
    pub fn grow_layer(&mut self) -> Result<(), MapError> {
        if self.closed {
            return Ok(());
        }
        let sweep = self.boundary_cycle();
        loop {
            let mut progress = false;
            for &v in &sweep {
                while !self.closed && self.out_outer[v].is_some() {
                    let plan = self.plan(v)?;
                    if plan.candidates.len() != 1 {
                        break;
                    }
                    let degree = *plan.candidates.first().unwrap();
                    let chain = self.apply(v, plan, degree)?;
                    self.close_pockets(ends(&chain))?;
                    progress = true;
                }
            }
            if self.closed || sweep.iter().all(|&v| self.out_outer[v].is_none()) {
                break;
            }
            if !progress {
                // Nothing is forced: take the smallest legal degree at the
                // lowest-numbered unfinished vertex of this sweep.
                let v = *sweep
                    .iter()
                    .filter(|&&v| self.out_outer[v].is_some())
                    .min()
                    .unwrap();
                let plan = self.plan(v)?;
                let degree = *plan.candidates.first().unwrap();
                self.fallbacks += 1;
                let chain = self.apply(v, plan, degree)?;
                self.close_pockets(ends(&chain))?;
            }
        }
        self.layers_built += 1;
        Ok(())
    }

    /// Fills every forced face near `touched` that adds no new vertex.
    ///
    /// A face that brings new vertices must not be placed while such a
    /// pocket is open next to it: its chain would run where the pocket's
    /// face belongs and duplicate vertices the tiling identifies.
    fn close_pockets(&mut self, mut touched: Vec<VertexId>) -> Result<(), MapError> {
        let reach = self.config.face_degrees().iter().copied().max().unwrap_or(3);
        let smallest = self.config.face_degrees().iter().copied().min().unwrap_or(3);
        'outer: while let Some(u) = touched.pop() {
            if self.closed {
                return Ok(());
            }
            let Some(o) = self.out_outer[u] else { continue };
            let mut window = Vec::with_capacity(2 * reach + 1);
            let mut d = o;
            for _ in 0..reach {
                d = self.map.prev[d];
            }
            for _ in 0..=2 * reach {
                window.push(self.map.origin[d]);
                d = self.map.next[d];
            }
            for w in window {
                if self.out_outer[w].is_none() || !self.absorbs_at_least(w, smallest - 1) {
                    continue;
                }
                let Ok(plan) = self.plan(w) else { continue };
                if plan.candidates.len() != 1 {
                    continue;
                }
                let degree = *plan.candidates.first().unwrap();
                if plan.full_cycle || plan.darts.len() + 1 == degree {
                    touched.push(u);
                    let chain = self.apply(w, plan, degree)?;
                    touched.extend(chain.first().into_iter().chain(chain.last()));
                    continue 'outer;
                }
            }
        }
        Ok(())
    }

    /// Whether a face placed at `w` could absorb at least `k` outer darts.
    fn absorbs_at_least(&self, w: VertexId, k: usize) -> bool {
        let q = self.config.vertex_degree();
        let completes = |x: VertexId| self.fan(x).len() + 1 == q;
        let o = self.out_outer[w].unwrap();
        let mut n = 1;
        let mut d = o;
        while n < k && completes(self.map.head(d)) {
            d = self.map.next[d];
            n += 1;
        }
        if n < k && completes(w) {
            let mut d = self.map.prev[o];
            while n < k {
                n += 1;
                if !completes(self.map.origin[d]) {
                    break;
                }
                d = self.map.prev[d];
            }
        }
        n >= k
    }

    /// Boundary vertices in outer-face order, starting at the lowest id.
    fn boundary_cycle(&self) -> Vec<VertexId> {
        let Some(start) = self.out_outer.iter().position(Option::is_some) else {
            return Vec::new();
        };
        let first = self.out_outer[start].unwrap();
        let mut out = vec![start];
        let mut d = self.map.next[first];
        while d != first {
            out.push(self.map.origin[d]);
            d = self.map.next[d];
        }
        out
    }

    /// Degrees of the interior faces at boundary vertex `v`, counterclockwise.
    fn fan(&self, v: VertexId) -> Vec<usize> {
        let o = self.out_outer[v].expect("boundary vertex");
        let mut d = self.map.twin[self.map.prev[o]];
        let mut word = Vec::new();
        while self.map.face[d] != OUTER_FACE && word.len() <= self.config.vertex_degree() {
            word.push(self.map.face_degrees[self.map.face[d]]);
            d = self.map.rot_ccw(d);
        }
        word
    }

    fn inconsistent(v: VertexId, reason: impl Into<String>) -> MapError {
        MapError::Inconsistent { vertex: v, reason: reason.into() }
    }

    /// Works out which outer darts the next face at `v` absorbs and which
    /// degrees the touched vertices allow for it.
    ///
    /// The face sits in the gap at `v` next to its outgoing outer dart. It
    /// runs forward along the boundary through every vertex it completes,
    /// and backward as well when it is the last face `v` needs.
    fn plan(&self, v: VertexId) -> Result<Plan, MapError> {
        let q = self.config.vertex_degree();
        let options = |w: VertexId| {
            let fan = self.fan(w);
            let c = self.config.completions(&fan);
            if c.is_empty() {
                return Err(Self::inconsistent(w, format!("fan {fan:?} fits no arrangement")));
            }
            Ok((fan.len(), c))
        };

        let (k, own) = options(v)?;
        let completes_v = k + 1 == q;
        let mut candidates: BTreeSet<usize> = own.iter().map(|u| u[0]).collect();
        let o = self.out_outer[v].unwrap();
        let mut darts = VecDeque::from([o]);
        let limit = self.map.dart_count();

        let mut end = self.map.head(o);
        let mut full_cycle = false;
        loop {
            if end == v {
                full_cycle = true;
                break;
            }
            let (k_end, opts) = options(end)?;
            if k_end + 1 == q {
                candidates = &candidates & &opts.iter().map(|u| u[0]).collect();
                let d = self.out_outer[end].unwrap();
                darts.push_back(d);
                end = self.map.head(d);
            } else {
                candidates = &candidates & &opts.iter().map(|u| *u.last().unwrap()).collect();
                break;
            }
            if darts.len() > limit {
                return Err(Self::inconsistent(v, "boundary walk does not terminate"));
            }
        }
        if full_cycle && !completes_v {
            return Err(Self::inconsistent(v, "face would swallow the whole boundary"));
        }

        if completes_v && !full_cycle {
            loop {
                let inc = self.map.prev[*darts.front().unwrap()];
                darts.push_front(inc);
                let start = self.map.origin[inc];
                if start == end {
                    return Err(Self::inconsistent(v, "face would touch one vertex twice"));
                }
                let (k_start, opts) = options(start)?;
                candidates = &candidates & &opts.iter().map(|u| u[0]).collect();
                if k_start + 1 != q {
                    break;
                }
                if darts.len() > limit {
                    return Err(Self::inconsistent(v, "boundary walk does not terminate"));
                }
            }
        }

        if candidates.is_empty() {
            return Err(Self::inconsistent(v, "neighbouring stars disagree on the next face"));
        }
        Ok(Plan { darts, candidates, full_cycle })
    }

    fn new_edge(&mut self, from: VertexId, to: VertexId, face: usize) -> (DartId, DartId) {
        let d = self.map.twin.len();
        self.map.twin.extend([d + 1, d]);
        self.map.origin.extend([from, to]);
        self.map.face.extend([face, OUTER_FACE]);
        self.map.next.extend([0, 0]);
        self.map.prev.extend([0, 0]);
        (d, d + 1)
    }

    fn link(&mut self, a: DartId, b: DartId) {
        self.map.next[a] = b;
        self.map.prev[b] = a;
    }

    /// Adds the face and returns the boundary vertices at its ends.
    fn apply(&mut self, v: VertexId, plan: Plan, degree: usize) -> Result<Vec<VertexId>, MapError> {
        let path: Vec<DartId> = plan.darts.into_iter().collect();
        let len = path.len();
        let f = self.map.face_degrees.len();

        if plan.full_cycle {
            if degree != len {
                return Err(Self::inconsistent(
                    v,
                    format!("closing face needs degree {len}, configuration gives {degree}"),
                ));
            }
            for &d in &path {
                self.map.face[d] = f;
                self.out_outer[self.map.origin[d]] = None;
            }
            self.map.face_degrees.push(degree);
            self.map.face_start.push(path[0]);
            self.closed = true;
            return Ok(Vec::new());
        }

        if degree <= len {
            return Err(Self::inconsistent(
                v,
                format!("face of degree {degree} cannot span {len} boundary edges"),
            ));
        }
        let first = path[0];
        let last = path[len - 1];
        let a0 = self.map.origin[first];
        let a_end = self.map.head(last);
        let before = self.map.prev[first];
        let after = self.map.next[last];
        let new_edges = degree - len;
        if new_edges == 1 && self.adjacent(a_end, a0) {
            return Err(Self::inconsistent(v, "closing edge would duplicate an existing edge"));
        }

        // Chain a_end -> x_1 -> ... -> x_{e-1} -> a0.
        let mut chain = vec![a_end];
        for _ in 1..new_edges {
            chain.push(self.map.vertex_count);
            self.out_outer.push(None);
            self.map.vertex_count += 1;
        }
        chain.push(a0);

        let mut inner = Vec::with_capacity(new_edges);
        let mut outer = Vec::with_capacity(new_edges);
        for w in chain.windows(2) {
            let (i, o) = self.new_edge(w[0], w[1], f);
            inner.push(i);
            outer.push(o);
        }

        for &d in &path {
            self.map.face[d] = f;
        }
        for &d in &path[1..] {
            self.out_outer[self.map.origin[d]] = None;
        }
        let face_cycle: Vec<DartId> = path.iter().chain(inner.iter()).copied().collect();
        for i in 0..face_cycle.len() {
            self.link(face_cycle[i], face_cycle[(i + 1) % face_cycle.len()]);
        }
        // Outer face: before -> t_e -> ... -> t_1 -> after.
        self.link(before, outer[new_edges - 1]);
        for j in (1..new_edges).rev() {
            self.link(outer[j], outer[j - 1]);
        }
        self.link(outer[0], after);
        for (j, &o) in outer.iter().enumerate() {
            // outer[j] leaves chain[j + 1].
            self.out_outer[chain[j + 1]] = Some(o);
        }

        self.map.face_degrees.push(degree);
        self.map.face_start.push(first);
        Ok(chain)
    }

    fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        let Some(start) = self.out_outer[a] else {
            return false;
        };
        let mut d = start;
        for _ in 0..=self.config.vertex_degree() {
            if self.map.head(d) == b {
                return true;
            }
            d = self.map.rot_ccw(d);
            if d == start {
                break;
            }
        }
        false
    }
}

/// Builds a patch of `layers` boundary sweeps around one seed face.
pub fn build(config: &VertexConfiguration, layers: usize) -> Result<BuildResult, MapError> {
    let mut b = Builder::new(config.clone());
    b.grow_to(layers)?;
    Ok(b.into_result())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tessmap::{validate, Geometry};

    fn cfg(s: &str) -> VertexConfiguration {
        s.parse().unwrap()
    }

    #[test]
    fn seed_face_alone() {
        let r = build(&cfg("6,8,8"), 0).unwrap();
        assert_eq!(r.map.vertex_count(), 6);
        assert_eq!(r.map.edge_count(), 6);
        assert_eq!(r.map.face_count(), 1);
        assert_eq!(r.boundary_vertices, (0..6).collect::<Vec<_>>());
        assert_eq!(r.map.face_vertices(0), (0..6).collect::<Vec<_>>());
        assert!(validate(&r.map).is_ok());
    }

    #[test]
    fn square_grid_one_layer() {
        let r = build(&cfg("4,4,4,4"), 1).unwrap();
        assert_eq!(r.map.face_count(), 9);
        assert_eq!(r.map.vertex_count(), 16);
        assert_eq!(r.boundary_vertices.len(), 12);
        assert!(validate(&r.map).is_ok());
    }

    #[test]
    fn truncated_octahedron_closes() {
        let r = build(&cfg("4,6,6"), 10).unwrap();
        assert!(r.closed);
        assert!(r.layers_built < 10);
        assert_eq!(r.map.vertex_count(), 24);
        assert_eq!(r.map.edge_count(), 36);
        assert_eq!(r.map.face_count(), 14);
        assert_eq!(r.map.euler_characteristic(), 2);
        assert!(r.boundary_vertices.is_empty());
        let report = validate(&r.map);
        assert!(report.is_ok(), "{report:?}");
    }

    #[test]
    fn other_platonic_and_archimedean_solids_close() {
        for (c, v, e, f) in [
            ("3,3,3", 4, 6, 4),
            ("4,4,4", 8, 12, 6),
            ("3,3,3,3", 6, 12, 8),
            ("5,5,5", 20, 30, 12),
            ("3,3,3,3,3", 12, 30, 20),
            ("3,4,3,4", 12, 24, 14),
            ("5,6,6", 60, 90, 32),
            ("3,6,6", 12, 18, 8),
            ("3,8,8", 24, 36, 14),
            ("3,10,10", 60, 90, 32),
            ("4,6,8", 48, 72, 26),
            ("4,6,10", 120, 180, 62),
            ("3,5,3,5", 30, 60, 32),
            ("3,4,5,4", 60, 120, 62),
            ("3,3,3,3,5", 60, 150, 92),
        ] {
            let r = build(&cfg(c), 20).unwrap();
            assert!(r.closed, "{c} did not close");
            assert_eq!(
                (r.map.vertex_count(), r.map.edge_count(), r.map.face_count()),
                (v, e, f),
                "{c}"
            );
            assert!(validate(&r.map).is_ok(), "{c}");
        }
    }

    #[test]
    fn escher_patch_has_one_hexagon_two_octagons_everywhere() {
        let r = build(&cfg("6,8,8"), 2).unwrap();
        assert!(!r.closed);
        let report = validate(&r.map);
        assert!(report.is_ok(), "{report:?}");
        assert_eq!(r.map.euler_characteristic(), 1);
        let boundary: BTreeSet<_> = r.boundary_vertices.iter().copied().collect();
        let m = &r.map;
        let mut interior = 0;
        for v in 0..m.vertex_count() {
            if boundary.contains(&v) {
                continue;
            }
            interior += 1;
            let mut around: Vec<usize> = (0..m.dart_count())
                .filter(|&d| m.origin(d) == v)
                .map(|d| m.face_degree(m.face(d)))
                .collect();
            around.sort();
            assert_eq!(around, vec![6, 8, 8], "vertex {v}");
        }
        assert!(interior > 6);
    }

    #[test]
    fn catalog_patches_are_fully_forced() {
        for c in ["6,8,8", "8,8,8", "3,3,3,3,3,3,3,3"] {
            let mut b = Builder::new(cfg(c));
            b.grow_to(5).unwrap();
            assert_eq!(b.fallbacks(), 0, "{c}");
        }
    }

    #[test]
    fn impossible_configuration_is_reported() {
        let e = build(&cfg("3,3,6,6"), 4).unwrap_err();
        assert!(matches!(e, MapError::Inconsistent { .. }), "{e:?}");
    }

    #[test]
    fn deterministic() {
        let a = build(&cfg("6,8,8"), 4).unwrap();
        let b = build(&cfg("6,8,8"), 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(serde_json::to_string(&a.map).unwrap(), serde_json::to_string(&b.map).unwrap());
    }

    #[test]
    fn hyperbolic_boundary_grows() {
        for c in ["6,8,8", "8,8,8"] {
            let mut b = Builder::new(cfg(c));
            let mut last = b.map().boundary_vertices().len();
            for layer in 1..=8 {
                b.grow_layer().unwrap();
                let now = b.map().boundary_vertices().len();
                assert!(now > last, "{c}: boundary did not grow at layer {layer}");
                last = now;
                if b.map().vertex_count() > 400_000 {
                    break;
                }
            }
        }
    }

    #[test]
    fn regular_tilings_are_regular() {
        for (p, q) in [(4, 5), (5, 4), (3, 7), (7, 3), (6, 3), (3, 6), (4, 4)] {
            let c = VertexConfiguration::regular(p, q).unwrap();
            let layers = if c.geometry() == Geometry::Hyperbolic { 3 } else { 4 };
            let r = build(&c, layers).unwrap();
            let m = &r.map;
            assert!(m.face_degrees().iter().all(|&d| d == p));
            let deg = m.vertex_degrees();
            let boundary: BTreeSet<_> = r.boundary_vertices.iter().copied().collect();
            for v in 0..m.vertex_count() {
                if !boundary.contains(&v) {
                    assert_eq!(deg[v], q, "{{{p},{q}}} vertex {v}");
                }
            }
            assert!(validate(m).is_ok(), "{{{p},{q}}}");
        }
    }
}
