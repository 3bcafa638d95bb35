use std::fmt;

use serde::Serialize;

use super::{CombinatorialMap, DartId, FaceId, VertexId, OUTER_FACE};

/// First broken invariant found by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    TableLength { field: &'static str, expected: usize, found: usize },
    DartOutOfRange { dart: DartId, field: &'static str, value: usize },
    VertexOutOfRange { dart: DartId, vertex: VertexId },
    FaceOutOfRange { dart: DartId, face: FaceId },
    TwinFixedPoint { dart: DartId },
    TwinNotInvolution { dart: DartId },
    NextNotPermutation { dart: DartId },
    OriginMismatch { dart: DartId },
    FaceLabelMismatch { dart: DartId },
    FaceWalkLength { face: FaceId, expected: usize, found: usize },
    RotationMismatch { vertex: VertexId, found: Vec<usize> },
    EulerCharacteristic { expected: i64, found: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TableLength { field, expected, found } => {
                write!(f, "{field} table has {found} entries, expected {expected}")
            }
            Violation::DartOutOfRange { dart, field, value } => {
                write!(f, "dart {dart}: {field} = {value} is not a dart")
            }
            Violation::VertexOutOfRange { dart, vertex } => {
                write!(f, "dart {dart}: vertex {vertex} out of range")
            }
            Violation::FaceOutOfRange { dart, face } => {
                write!(f, "dart {dart}: face {face} out of range")
            }
            Violation::TwinFixedPoint { dart } => write!(f, "twin fixes dart {dart}"),
            Violation::TwinNotInvolution { dart } => {
                write!(f, "twin is not an involution at dart {dart}")
            }
            Violation::NextNotPermutation { dart } => {
                write!(f, "next is not a permutation: dart {dart} has two predecessors")
            }
            Violation::OriginMismatch { dart } => {
                write!(f, "dart {dart} does not end where its successor starts")
            }
            Violation::FaceLabelMismatch { dart } => {
                write!(f, "dart {dart} and its successor carry different faces")
            }
            Violation::FaceWalkLength { face, expected, found } => {
                write!(f, "face {face} walk has length {found}, expected {expected}")
            }
            Violation::RotationMismatch { vertex, found } => {
                write!(f, "vertex {vertex} has rotation {found:?}")
            }
            Violation::EulerCharacteristic { expected, found } => {
                write!(f, "Euler characteristic {found}, expected {expected}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// `V - E + F` over interior faces; `None` when the tables are unusable.
    pub euler_characteristic: Option<i64>,
    pub closed: bool,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the map invariants and returns the first violation found.
///
/// The Euler characteristic is only enforced when the map carries a vertex
/// configuration, i.e. it came out of the builder: such patches are discs
/// (1) or spheres (2).
pub fn validate(map: &CombinatorialMap) -> ValidationReport {
    let closed = !map.face.contains(&OUTER_FACE);
    match check(map) {
        Ok(()) => ValidationReport {
            euler_characteristic: Some(map.euler_characteristic()),
            closed,
            violation: None,
        },
        Err(v) => {
            let euler = match v {
                Violation::TableLength { .. }
                | Violation::DartOutOfRange { .. }
                | Violation::VertexOutOfRange { .. }
                | Violation::FaceOutOfRange { .. } => None,
                _ => Some(map.euler_characteristic()),
            };
            ValidationReport { euler_characteristic: euler, closed, violation: Some(v) }
        }
    }
}

fn check(m: &CombinatorialMap) -> Result<(), Violation> {
    let n = m.twin.len();
    for (field, len) in [
        ("next", m.next.len()),
        ("prev", m.prev.len()),
        ("origin", m.origin.len()),
        ("face", m.face.len()),
    ] {
        if len != n {
            return Err(Violation::TableLength { field, expected: n, found: len });
        }
    }
    if m.face_start.len() != m.face_degrees.len() {
        return Err(Violation::TableLength {
            field: "face_start",
            expected: m.face_degrees.len(),
            found: m.face_start.len(),
        });
    }
    for d in 0..n {
        if m.twin[d] >= n {
            return Err(Violation::DartOutOfRange { dart: d, field: "twin", value: m.twin[d] });
        }
        if m.next[d] >= n {
            return Err(Violation::DartOutOfRange { dart: d, field: "next", value: m.next[d] });
        }
        if m.origin[d] >= m.vertex_count {
            return Err(Violation::VertexOutOfRange { dart: d, vertex: m.origin[d] });
        }
        let f = m.face[d];
        if f != OUTER_FACE && f >= m.face_degrees.len() {
            return Err(Violation::FaceOutOfRange { dart: d, face: f });
        }
    }
    for (f, &s) in m.face_start.iter().enumerate() {
        if s >= n {
            return Err(Violation::DartOutOfRange { dart: s, field: "face_start", value: f });
        }
    }

    if let Some(d) = (0..n).find(|&d| m.twin[d] == d) {
        return Err(Violation::TwinFixedPoint { dart: d });
    }
    for d in 0..n {
        if m.twin[m.twin[d]] != d {
            return Err(Violation::TwinNotInvolution { dart: d });
        }
    }
    let mut seen = vec![false; n];
    for d in 0..n {
        let s = m.next[d];
        if seen[s] {
            return Err(Violation::NextNotPermutation { dart: s });
        }
        seen[s] = true;
    }
    for d in 0..n {
        if m.prev[m.next[d]] != d {
            return Err(Violation::NextNotPermutation { dart: m.next[d] });
        }
        if m.origin[m.next[d]] != m.head(d) {
            return Err(Violation::OriginMismatch { dart: d });
        }
        if m.face[m.next[d]] != m.face[d] {
            return Err(Violation::FaceLabelMismatch { dart: d });
        }
    }

    // Each interior face is one next-orbit of the stated degree.
    let mut per_face = vec![0usize; m.face_degrees.len()];
    for &f in &m.face {
        if f != OUTER_FACE {
            per_face[f] += 1;
        }
    }
    for (f, &expected) in m.face_degrees.iter().enumerate() {
        let start = m.face_start[f];
        let mut len = 1;
        let mut d = m.next[start];
        while d != start && len <= n {
            len += 1;
            d = m.next[d];
        }
        // A second orbit carrying the same label shows up as extra darts.
        let found = if m.face[start] != f { 0 } else { per_face[f] };
        if found != expected || found != len {
            return Err(Violation::FaceWalkLength { face: f, expected, found });
        }
    }

    if let Some(cfg) = &m.config {
        let mut first_out = vec![None; m.vertex_count];
        let mut out_deg = vec![0usize; m.vertex_count];
        let mut on_boundary = vec![false; m.vertex_count];
        for d in 0..n {
            let v = m.origin[d];
            first_out[v].get_or_insert(d);
            out_deg[v] += 1;
            if m.face[d] == OUTER_FACE {
                on_boundary[v] = true;
            }
        }
        for v in 0..m.vertex_count {
            if on_boundary[v] {
                continue;
            }
            let Some(start) = first_out[v] else {
                return Err(Violation::RotationMismatch { vertex: v, found: Vec::new() });
            };
            let mut word = Vec::new();
            let mut d = start;
            loop {
                word.push(m.face_degrees[m.face[d]]);
                d = m.rot_ccw(d);
                if d == start || word.len() > out_deg[v] {
                    break;
                }
            }
            if word.len() != out_deg[v] || !cfg.matches_cyclic(&word) {
                return Err(Violation::RotationMismatch { vertex: v, found: word });
            }
        }
        let expected = if m.face.contains(&OUTER_FACE) { 1 } else { 2 };
        let found = m.euler_characteristic();
        if found != expected {
            return Err(Violation::EulerCharacteristic { expected, found });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tessmap::build;

    fn built(c: &str, layers: usize) -> CombinatorialMap {
        build(&c.parse().unwrap(), layers).unwrap().map
    }

    #[test]
    fn redirected_twin_is_named() {
        let mut m = built("6,8,8", 2);
        let t = m.twin[0];
        m.twin[0] = m.twin[2];
        let r = validate(&m);
        assert!(matches!(
            r.violation,
            Some(Violation::TwinNotInvolution { .. })
        ));
        m.twin[0] = t;
        assert!(validate(&m).is_ok());
        m.twin[5] = 5;
        assert_eq!(validate(&m).violation, Some(Violation::TwinFixedPoint { dart: 5 }));
    }

    #[test]
    fn broken_face_walk_is_named() {
        let mut m = built("4,4,4,4", 1);
        m.face_degrees[3] = 5;
        assert!(matches!(
            validate(&m).violation,
            Some(Violation::FaceWalkLength { face: 3, expected: 5, found: 4 })
        ));
    }

    #[test]
    fn wrong_configuration_is_named() {
        let mut m = built("4,4,4,4", 2);
        m.config = Some("4,4,4,4,4".parse().unwrap());
        assert!(matches!(validate(&m).violation, Some(Violation::RotationMismatch { .. })));
    }

    #[test]
    fn closed_sphere_reports_two() {
        let m = built("4,6,6", 10);
        let r = validate(&m);
        assert!(r.is_ok());
        assert!(r.closed);
        assert_eq!(r.euler_characteristic, Some(2));
    }

    #[test]
    fn out_of_range_pointer() {
        let mut m = built("4,4,4,4", 0);
        m.next[1] = 99;
        let r = validate(&m);
        assert_eq!(
            r.violation,
            Some(Violation::DartOutOfRange { dart: 1, field: "next", value: 99 })
        );
        assert_eq!(r.euler_characteristic, None);
    }
}
