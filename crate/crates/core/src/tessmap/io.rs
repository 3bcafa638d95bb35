//! Flat dart-table import and export.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{validate, CombinatorialMap, MapError, VertexConfiguration, OUTER_FACE};

/// One row of the dart table. The outer face is written as `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DartRecord {
    pub dart_id: usize,
    pub twin: usize,
    pub next: usize,
    pub vertex: usize,
    pub face: i64,
}

/// Refuse tables larger than this many darts on import.
const MAX_IMPORT_DARTS: usize = 1 << 24;

impl CombinatorialMap {
    pub fn to_records(&self) -> Vec<DartRecord> {
        (0..self.dart_count())
            .map(|d| DartRecord {
                dart_id: d,
                twin: self.twin[d],
                next: self.next[d],
                vertex: self.origin[d],
                face: if self.face[d] == OUTER_FACE { -1 } else { self.face[d] as i64 },
            })
            .collect()
    }

    /// Rebuilds a map from dart records and checks every invariant.
    ///
    /// Rows may come in any order but their ids must be exactly `0..n`.
    /// Vertex and face ids must be dense. With `config` given, the rotation
    /// at every complete vertex and the Euler characteristic are checked too.
    pub fn from_records(
        records: &[DartRecord],
        config: Option<VertexConfiguration>,
    ) -> Result<CombinatorialMap, MapError> {
        let n = records.len();
        if n > MAX_IMPORT_DARTS {
            return Err(MapError::Malformed(format!("{n} darts exceeds the import limit")));
        }
        let mut rows: Vec<Option<&DartRecord>> = vec![None; n];
        for r in records {
            if r.dart_id >= n {
                return Err(MapError::Malformed(format!("dart id {} out of range", r.dart_id)));
            }
            if rows[r.dart_id].replace(r).is_some() {
                return Err(MapError::Malformed(format!("dart id {} repeated", r.dart_id)));
            }
        }
        let rows: Vec<&DartRecord> = rows.into_iter().map(Option::unwrap).collect();

        let mut face = Vec::with_capacity(n);
        let mut face_count = 0usize;
        for r in &rows {
            let f = match r.face {
                -1 => OUTER_FACE,
                f if f >= 0 && (f as u64) < n as u64 => f as usize,
                f => return Err(MapError::Malformed(format!("dart {}: face {f}", r.dart_id))),
            };
            if f != OUTER_FACE {
                face_count = face_count.max(f + 1);
            }
            face.push(f);
        }
        let vertex_count = rows.iter().map(|r| r.vertex + 1).max().unwrap_or(0);
        if vertex_count > n {
            return Err(MapError::Malformed(format!("vertex id {} too large", vertex_count - 1)));
        }
        let mut face_degrees = vec![0usize; face_count];
        let mut face_start = vec![usize::MAX; face_count];
        for (d, &f) in face.iter().enumerate() {
            if f != OUTER_FACE {
                face_degrees[f] += 1;
                if face_start[f] == usize::MAX {
                    face_start[f] = d;
                }
            }
        }
        if let Some(f) = face_degrees.iter().position(|&k| k == 0) {
            return Err(MapError::Malformed(format!("face {f} has no darts")));
        }
        let mut used = vec![false; vertex_count];
        for r in &rows {
            used[r.vertex] = true;
        }
        if let Some(v) = used.iter().position(|&u| !u) {
            return Err(MapError::Malformed(format!("vertex {v} has no darts")));
        }

        let mut map = CombinatorialMap {
            twin: rows.iter().map(|r| r.twin).collect(),
            next: rows.iter().map(|r| r.next).collect(),
            prev: Vec::new(),
            origin: rows.iter().map(|r| r.vertex).collect(),
            face,
            vertex_count,
            face_degrees,
            face_start,
            config,
        };
        if let Some(&bad) = map.next.iter().find(|&&x| x >= n) {
            return Err(MapError::Malformed(format!("next points at missing dart {bad}")));
        }
        map.rebuild_prev();
        if let Some(v) = validate(&map).violation {
            return Err(MapError::Malformed(v.to_string()));
        }
        Ok(map)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        for r in self.to_records() {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }

    pub fn read_csv<R: Read>(
        input: R,
        config: Option<VertexConfiguration>,
    ) -> Result<CombinatorialMap, MapError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
        let mut records = Vec::new();
        for row in rdr.deserialize() {
            let r: DartRecord = row.map_err(|e| MapError::Malformed(e.to_string()))?;
            records.push(r);
            if records.len() > MAX_IMPORT_DARTS {
                return Err(MapError::Malformed("too many darts".into()));
            }
        }
        Self::from_records(&records, config)
    }

    /// JSON array of dart records.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_records()).expect("records serialize")
    }

    pub fn from_json_str(
        s: &str,
        config: Option<VertexConfiguration>,
    ) -> Result<CombinatorialMap, MapError> {
        let records: Vec<DartRecord> =
            serde_json::from_str(s).map_err(|e| MapError::Malformed(e.to_string()))?;
        Self::from_records(&records, config)
    }
}

#[cfg(test)]
mod tests {
    use crate::tessmap::{build, dualize, CombinatorialMap};

    #[test]
    fn csv_round_trip() {
        let r = build(&"6,8,8".parse().unwrap(), 2).unwrap();
        let text = r.map.to_csv_string();
        assert!(text.starts_with("dart_id,twin,next,vertex,face\n"));
        let back = CombinatorialMap::read_csv(text.as_bytes(), r.map.config().cloned()).unwrap();
        assert_eq!(back.to_records(), r.map.to_records());
        assert_eq!(back.vertex_count(), r.map.vertex_count());
        assert_eq!(back.face_degrees(), r.map.face_degrees());
    }

    #[test]
    fn json_round_trip_of_a_dual() {
        let m = dualize(&build(&"4,6,6".parse().unwrap(), 10).unwrap().map);
        let back = CombinatorialMap::from_json_str(&m.to_json_string(), None).unwrap();
        assert_eq!(back.to_records(), m.to_records());
        assert_eq!(back.face_count(), 24);
    }

    #[test]
    fn corrupt_tables_are_rejected() {
        let m = build(&"4,4,4,4".parse().unwrap(), 1).unwrap().map;
        let mut rec = m.to_records();
        rec[0].twin = rec[2].dart_id;
        assert!(CombinatorialMap::from_records(&rec, None).is_err());
        let mut rec = m.to_records();
        rec[3].next = 10_000;
        assert!(CombinatorialMap::from_records(&rec, None).is_err());
        let mut rec = m.to_records();
        rec[1].dart_id = 0;
        assert!(CombinatorialMap::from_records(&rec, None).is_err());
        assert!(CombinatorialMap::from_json_str("[{\"dart_id\":0}]", None).is_err());
        assert!(CombinatorialMap::read_csv("a,b\n1,2\n".as_bytes(), None).is_err());
        assert!(CombinatorialMap::from_records(&[], None).unwrap().dart_count() == 0);
    }
}
