use super::{CombinatorialMap, DartId, OUTER_FACE};

/// Dual map: one vertex per interior face, one edge per edge between two
/// interior faces.
///
/// Dual vertex `f` is primal face `f`. Dual dart `d*` runs from `face(d)` to
/// `face(twin d)` and has `head(d)` on its left, so complete primal vertices
/// become interior dual faces (numbered in primal vertex order). Around a
/// dual vertex the darts keep the primal face order, skipping edges whose
/// other side is the outer face; every remaining orbit is outer.
pub fn dualize(map: &CombinatorialMap) -> CombinatorialMap {
    let n = map.dart_count();
    let mut id: Vec<Option<DartId>> = vec![None; n];
    let mut primal: Vec<DartId> = Vec::new();
    for d in 0..n {
        if map.face[d] != OUTER_FACE && map.face[map.twin[d]] != OUTER_FACE {
            id[d] = Some(primal.len());
            primal.push(d);
        }
    }
    let m = primal.len();
    let twin: Vec<DartId> = primal.iter().map(|&d| id[map.twin[d]].unwrap()).collect();
    let origin: Vec<usize> = primal.iter().map(|&d| map.face[d]).collect();

    // Clockwise successor around the dual vertex, then across the edge.
    let next: Vec<DartId> = primal
        .iter()
        .map(|&d| {
            let t = map.twin[d];
            let mut e = map.prev[t];
            while id[e].is_none() {
                e = map.prev[e];
            }
            id[e].unwrap()
        })
        .collect();

    let mut face = vec![OUTER_FACE; m];
    let mut seen = vec![false; m];
    let mut orbits: Vec<(usize, DartId, usize)> = Vec::new();
    let deg = map.vertex_degrees();
    let boundary = boundary_mask(map);
    for s in 0..m {
        if seen[s] {
            continue;
        }
        let mut orbit = vec![s];
        seen[s] = true;
        let mut x = next[s];
        while x != s {
            seen[x] = true;
            orbit.push(x);
            x = next[x];
        }
        let w = map.head(primal[s]);
        let around_one_vertex = orbit.iter().all(|&x| map.head(primal[x]) == w);
        if around_one_vertex && !boundary[w] && orbit.len() == deg[w] {
            let start = *orbit.iter().min().unwrap();
            orbits.push((w, start, orbit.len()));
            for &x in &orbit {
                face[x] = w;
            }
        }
    }
    orbits.sort();
    let mut renumber = vec![OUTER_FACE; map.vertex_count()];
    let mut face_degrees = Vec::with_capacity(orbits.len());
    let mut face_start = Vec::with_capacity(orbits.len());
    for (k, &(w, start, len)) in orbits.iter().enumerate() {
        renumber[w] = k;
        face_degrees.push(len);
        face_start.push(start);
    }
    for f in face.iter_mut() {
        if *f != OUTER_FACE {
            *f = renumber[*f];
        }
    }

    let mut dual = CombinatorialMap {
        twin,
        next,
        prev: Vec::new(),
        origin,
        face,
        vertex_count: map.face_count(),
        face_degrees,
        face_start,
        config: None,
    };
    dual.rebuild_prev();
    dual
}

fn boundary_mask(map: &CombinatorialMap) -> Vec<bool> {
    let mut on = vec![false; map.vertex_count()];
    for d in 0..map.dart_count() {
        if map.face[d] == OUTER_FACE {
            on[map.origin[d]] = true;
        }
    }
    on
}
