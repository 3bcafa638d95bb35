//! Vertex counts by generation (BFS distance from a seed set).
//!
//! Counts on an open patch are only reported up to a certified horizon: if
//! `b` is the smallest distance from the seeds to a boundary vertex, every
//! generation `n <= b` is already final. A shortest path that leaves the
//! patch has to pass a boundary vertex first, and complete vertices have all
//! their neighbours in the patch.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tessmap::{dualize, Builder, CombinatorialMap, MapError, VertexConfiguration, VertexId, OUTER_FACE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("seed set is empty")]
    EmptySeeds,
    #[error("seed vertex {0} is not in the map")]
    UnknownVertex(VertexId),
    #[error("seed face has degree {found}, requested {requested}")]
    SeedMismatch { requested: usize, found: usize },
    #[error("map has no seed object for {0}")]
    MissingSeed(String),
    #[error("horizon stalled at generation {reached} after {layers} layers (wanted {wanted})")]
    HorizonStalled { reached: usize, wanted: usize, layers: usize },
    #[error(transparent)]
    Map(#[from] MapError),
}

/// How the seed set is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedMode {
    /// The vertices of the builder's seed face, in the built map.
    FaceVertices,
    /// The dual vertex of the seed face, in the dual map.
    DualCenter,
    /// Vertex 0 of the built map (a corner of the seed face).
    Vertex,
}

impl fmt::Display for SeedMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeedMode::FaceVertices => "face",
            SeedMode::DualCenter => "center",
            SeedMode::Vertex => "vertex",
        })
    }
}

impl FromStr for SeedMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "face" | "face_vertices" => Ok(SeedMode::FaceVertices),
            "center" | "dual_center" => Ok(SeedMode::DualCenter),
            "vertex" => Ok(SeedMode::Vertex),
            _ => Err(format!("unknown seed mode {s:?} (expected face, center or vertex)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    /// `counts[n]` is the number of vertices at distance `n`.
    pub counts: Vec<u64>,
    /// Last generation whose count is final. On a closed map this is the
    /// requested maximum and `counts` stops at the last non-empty generation.
    pub valid_through: usize,
    pub seed_description: String,
    /// Distance of every vertex from the seeds, `None` if not reached.
    #[serde(skip)]
    pub generation: Vec<Option<usize>>,
}

impl CensusReport {
    /// Count for generation `n`, or `None` past the certified horizon.
    pub fn count(&self, n: usize) -> Option<u64> {
        if n > self.valid_through {
            None
        } else {
            Some(self.counts.get(n).copied().unwrap_or(0))
        }
    }

    /// `generation,count` rows.
    pub fn to_csv_string(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["generation", "count"]).expect("writing to memory");
        for (n, c) in self.counts.iter().enumerate() {
            w.write_record([n.to_string(), c.to_string()]).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8")
    }
}

/// Vertices on the open frontier, plus any vertex with no edges at all.
fn frontier(map: &CombinatorialMap) -> Vec<bool> {
    let mut on = vec![true; map.vertex_count()];
    for d in 0..map.dart_count() {
        on[map.origin(d)] = false;
    }
    for d in 0..map.dart_count() {
        if map.face(d) == OUTER_FACE {
            on[map.origin(d)] = true;
        }
    }
    on
}

/// Multi-source BFS from `seeds`, certified against the patch boundary.
pub fn bfs_census(
    map: &CombinatorialMap,
    seeds: &[VertexId],
    max_gen: usize,
) -> Result<CensusReport, CensusError> {
    if seeds.is_empty() {
        return Err(CensusError::EmptySeeds);
    }
    if let Some(&v) = seeds.iter().find(|&&v| v >= map.vertex_count()) {
        return Err(CensusError::UnknownVertex(v));
    }
    let adj = map.adjacency();
    let boundary = frontier(map);
    let mut dist: Vec<Option<usize>> = vec![None; map.vertex_count()];
    let mut queue = VecDeque::new();
    for &s in seeds {
        if dist[s].is_none() {
            dist[s] = Some(0);
            queue.push_back(s);
        }
    }
    let mut counts: Vec<u64> = Vec::new();
    let mut horizon: Option<usize> = None;
    while let Some(v) = queue.pop_front() {
        let dv = dist[v].unwrap();
        if dv > max_gen {
            dist[v] = None;
            continue;
        }
        if counts.len() <= dv {
            counts.resize(dv + 1, 0);
        }
        counts[dv] += 1;
        if boundary[v] && horizon.is_none() {
            horizon = Some(dv);
        }
        if dv == max_gen {
            continue;
        }
        for &w in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(dv + 1);
                queue.push_back(w);
            }
        }
    }
    // A boundary vertex past max_gen does not limit the horizon.
    let valid_through = horizon.map_or(max_gen, |b| b.min(max_gen));
    counts.truncate(valid_through + 1);
    for d in dist.iter_mut() {
        if matches!(d, Some(g) if *g > valid_through) {
            *d = None;
        }
    }
    let mut seed_list: Vec<VertexId> = seeds.to_vec();
    seed_list.sort_unstable();
    seed_list.dedup();
    Ok(CensusReport {
        counts,
        valid_through,
        seed_description: describe_seeds(&seed_list),
        generation: dist,
    })
}

fn describe_seeds(seeds: &[VertexId]) -> String {
    if seeds.len() <= 8 {
        let ids: Vec<String> = seeds.iter().map(ToString::to_string).collect();
        format!("vertices {{{}}}", ids.join(","))
    } else {
        format!("{} vertices", seeds.len())
    }
}

/// Seed vertices for `mode`.
///
/// For [`SeedMode::FaceVertices`] the map must come from the builder and
/// `degree` must match its seed face; for [`SeedMode::DualCenter`] the map
/// must be the dual of such a map.
pub fn central_seeds(
    map: &CombinatorialMap,
    mode: SeedMode,
    degree: Option<usize>,
) -> Result<Vec<VertexId>, CensusError> {
    match mode {
        SeedMode::FaceVertices => {
            if map.face_count() == 0 {
                return Err(CensusError::MissingSeed("seed face".into()));
            }
            let found = map.face_degree(0);
            if let Some(requested) = degree {
                if requested != found {
                    return Err(CensusError::SeedMismatch { requested, found });
                }
            }
            Ok(map.face_vertices(0))
        }
        SeedMode::DualCenter | SeedMode::Vertex => {
            if map.vertex_count() == 0 {
                return Err(CensusError::MissingSeed(format!("{mode} seed")));
            }
            Ok(vec![0])
        }
    }
}

/// A census together with the map it was taken on.
#[derive(Debug, Clone)]
pub struct CensusRun {
    /// The built map, or its dual for [`SeedMode::DualCenter`].
    pub map: CombinatorialMap,
    pub layers_built: usize,
    pub closed: bool,
    pub report: CensusReport,
}

/// Builds layer by layer until the census is certified through `max_gen`.
///
/// Gives up with [`CensusError::HorizonStalled`] after `max_layers` sweeps.
pub fn run_census(
    config: &VertexConfiguration,
    mode: SeedMode,
    max_gen: usize,
    max_layers: usize,
) -> Result<CensusRun, CensusError> {
    let mut builder = Builder::new(config.clone());
    let mut reached = 0;
    loop {
        let map = match mode {
            SeedMode::DualCenter => dualize(builder.map()),
            _ => builder.map().clone(),
        };
        // The dual of the seed face alone has no edges yet.
        if builder.layers_built() > 0 || builder.closed() || mode != SeedMode::DualCenter {
            let seeds = central_seeds(&map, mode, None)?;
            let report = bfs_census(&map, &seeds, max_gen)?;
            reached = report.valid_through;
            if report.valid_through >= max_gen || builder.closed() {
                return Ok(CensusRun {
                    map,
                    layers_built: builder.layers_built(),
                    closed: builder.closed(),
                    report,
                });
            }
        }
        if builder.layers_built() >= max_layers {
            return Err(CensusError::HorizonStalled {
                reached,
                wanted: max_gen,
                layers: builder.layers_built(),
            });
        }
        builder.grow_layer()?;
    }
}

/// Layer budget used by the convenience pipelines.
pub const DEFAULT_MAX_LAYERS: usize = 256;

/// Census of the tessellation dual to `config`, seeded at the dual vertex of
/// the seed face.
pub fn primal_census(config: &VertexConfiguration, max_gen: usize) -> Result<CensusReport, CensusError> {
    Ok(run_census(config, SeedMode::DualCenter, max_gen, DEFAULT_MAX_LAYERS)?.report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tessmap::build;

    fn cfg(s: &str) -> VertexConfiguration {
        s.parse().unwrap()
    }

    /// Coefficients of num/den by long division in plain integers.
    fn expand(num: &[i64], den: &[i64], n: usize) -> Vec<i64> {
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = num.get(k).copied().unwrap_or(0);
            for j in 1..den.len().min(k + 1) {
                c -= den[j] * out[k - j];
            }
            assert_eq!(c % den[0], 0);
            out.push(c / den[0]);
        }
        out
    }

    #[test]
    fn escher_dual_from_the_hexagon() {
        let run = run_census(&cfg("6,8,8"), SeedMode::FaceVertices, 14, 64).unwrap();
        assert_eq!(run.report.valid_through, 14);
        let want: Vec<u64> = expand(&[6, 6, 6, 6], &[1, 0, -1, -2, -1, 0, 1], 15)
            .into_iter()
            .map(|c| c as u64)
            .collect();
        assert_eq!(run.report.counts, want);
        assert_eq!(&run.report.counts[..8], &[6, 6, 12, 24, 30, 54, 84, 132]);
    }

    #[test]
    fn escher_primal_from_the_center() {
        let r = primal_census(&cfg("6,8,8"), 8).unwrap();
        assert_eq!(&r.counts[..5], &[1, 6, 24, 66, 192]);
        let want = expand(&[1, 4, 10, 4, 1], &[1, -2, -2, -2, 1], 9);
        assert_eq!(r.counts.iter().map(|&c| c as i64).collect::<Vec<_>>(), want);
    }

    #[test]
    fn regular_three_eight() {
        let r = primal_census(&cfg("8,8,8"), 6).unwrap();
        assert_eq!(r.counts, expand(&[1, 4, 1], &[1, -4, 1], 7).iter().map(|&c| c as u64).collect::<Vec<_>>());
    }

    #[test]
    fn euclidean_pair() {
        let r = primal_census(&cfg("4,8,8"), 10).unwrap();
        assert_eq!(&r.counts[..5], &[1, 4, 16, 24, 32]);
        let want = expand(&[1, 2, 9, -4], &[1, -2, 1], 11);
        assert_eq!(r.counts.iter().map(|&c| c as i64).collect::<Vec<_>>(), want);

        let d = run_census(&cfg("4,8,8"), SeedMode::FaceVertices, 12, 64).unwrap().report;
        // 4(1+z^2) / ((1+z+z^2)(1-z)^2) = 4(1+z^2) / (1 - z - z^3 + z^4)
        let want = expand(&[4, 0, 4], &[1, -1, 0, -1, 1], 13);
        assert_eq!(d.counts.iter().map(|&c| c as i64).collect::<Vec<_>>(), want);
        assert_eq!(&d.counts[..8], &[4, 4, 8, 12, 12, 16, 20, 20]);
    }

    #[test]
    fn sphere_pair() {
        let d = run_census(&cfg("4,6,6"), SeedMode::FaceVertices, 10, 20).unwrap();
        assert!(d.closed);
        assert_eq!(d.report.counts, vec![4, 4, 8, 4, 4]);
        assert_eq!(d.report.valid_through, 10);
        assert_eq!(d.report.count(7), Some(0));
        assert_eq!(d.report.counts.iter().sum::<u64>(), 24);
        let p = primal_census(&cfg("4,6,6"), 10).unwrap();
        assert_eq!(p.counts, vec![1, 4, 8, 1]);
    }

    #[test]
    fn horizon_is_monotone_in_layers() {
        let c = cfg("6,8,8");
        let mut prev: Option<CensusReport> = None;
        for layers in 1..=9 {
            let m = build(&c, layers).unwrap().map;
            let r = bfs_census(&m, &m.face_vertices(0), 30).unwrap();
            assert_eq!(r.counts.len(), r.valid_through + 1);
            if let Some(p) = &prev {
                assert!(r.valid_through >= p.valid_through);
                assert_eq!(&r.counts[..=p.valid_through], &p.counts[..]);
            }
            prev = Some(r);
        }
        assert!(prev.unwrap().valid_through >= 8);
    }

    #[test]
    fn all_vertices_as_seeds() {
        let m = build(&cfg("6,8,8"), 2).unwrap().map;
        let all: Vec<usize> = (0..m.vertex_count()).collect();
        let r = bfs_census(&m, &all, 5).unwrap();
        assert_eq!(r.counts, vec![m.vertex_count() as u64]);
    }

    #[test]
    fn seed_errors() {
        let m = build(&cfg("6,8,8"), 1).unwrap().map;
        assert_eq!(bfs_census(&m, &[], 3), Err(CensusError::EmptySeeds));
        assert_eq!(bfs_census(&m, &[100_000], 3), Err(CensusError::UnknownVertex(100_000)));
        assert_eq!(
            central_seeds(&m, SeedMode::FaceVertices, Some(8)),
            Err(CensusError::SeedMismatch { requested: 8, found: 6 })
        );
        assert_eq!(central_seeds(&m, SeedMode::FaceVertices, Some(6)).unwrap().len(), 6);
        let d = dualize(&m);
        let c = central_seeds(&d, SeedMode::DualCenter, None).unwrap();
        assert_eq!(c, vec![0]);
        assert_eq!(d.vertex_degrees()[0], 6);
    }

    #[test]
    fn csv_rows() {
        let r = primal_census(&cfg("4,6,6"), 4).unwrap();
        assert_eq!(r.to_csv_string(), "generation,count\n0,1\n1,4\n2,8\n3,1\n");
    }
}
