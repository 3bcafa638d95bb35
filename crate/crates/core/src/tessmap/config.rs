use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::MapError;

/// Curvature class of a vertex-transitive tessellation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Geometry::Spherical => "spherical",
            Geometry::Euclidean => "euclidean",
            Geometry::Hyperbolic => "hyperbolic",
        })
    }
}

/// Cyclic sequence of face degrees met around every vertex, e.g. `(6,8,8)`.
///
/// Two configurations that differ by rotation or reflection of the cyclic
/// order describe the same vertex star.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexConfiguration {
    face_degrees: Vec<usize>,
}

/// Largest face degree accepted; keeps the builder's per-face work bounded.
pub const MAX_FACE_DEGREE: usize = 1 << 12;
/// Largest vertex degree accepted.
pub const MAX_VERTEX_DEGREE: usize = 1 << 8;

impl VertexConfiguration {
    pub fn new(face_degrees: Vec<usize>) -> Result<Self, MapError> {
        if face_degrees.len() < 3 {
            return Err(MapError::InvalidConfiguration(format!(
                "need at least 3 faces around a vertex, got {}",
                face_degrees.len()
            )));
        }
        if face_degrees.len() > MAX_VERTEX_DEGREE {
            return Err(MapError::InvalidConfiguration(format!(
                "vertex degree {} exceeds {MAX_VERTEX_DEGREE}",
                face_degrees.len()
            )));
        }
        if let Some(&f) = face_degrees.iter().find(|&&f| !(3..=MAX_FACE_DEGREE).contains(&f)) {
            return Err(MapError::InvalidConfiguration(format!(
                "face degree {f} outside 3..={MAX_FACE_DEGREE}"
            )));
        }
        Ok(VertexConfiguration { face_degrees })
    }

    /// Regular `{p,q}`: `q` faces of degree `p` at every vertex.
    pub fn regular(p: usize, q: usize) -> Result<Self, MapError> {
        Self::new(vec![p; q])
    }

    pub fn face_degrees(&self) -> &[usize] {
        &self.face_degrees
    }

    /// Number of faces (and edges) at each vertex.
    pub fn vertex_degree(&self) -> usize {
        self.face_degrees.len()
    }

    pub fn max_face_degree(&self) -> usize {
        *self.face_degrees.iter().max().unwrap()
    }

    /// Compares `sum (1 - 2/f)` with 2 in exact arithmetic.
    pub fn geometry(&self) -> Geometry {
        let sum: BigRational = self
            .face_degrees
            .iter()
            .map(|&f| BigRational::one() - BigRational::new(BigInt::from(2), BigInt::from(f)))
            .fold(BigRational::zero(), |a, b| a + b);
        let two = BigRational::from_integer(BigInt::from(2));
        match sum.cmp(&two) {
            std::cmp::Ordering::Less => Geometry::Spherical,
            std::cmp::Ordering::Equal => Geometry::Euclidean,
            std::cmp::Ordering::Greater => Geometry::Hyperbolic,
        }
    }

    /// All rotations of the cyclic word and of its reverse, deduplicated.
    pub(crate) fn arrangements(&self) -> Vec<Vec<usize>> {
        let q = self.face_degrees.len();
        let reversed: Vec<usize> = self.face_degrees.iter().rev().copied().collect();
        let mut out: Vec<Vec<usize>> = Vec::with_capacity(2 * q);
        for word in [&self.face_degrees, &reversed] {
            for r in 0..q {
                let rot: Vec<usize> = (0..q).map(|i| word[(r + i) % q]).collect();
                if !out.contains(&rot) {
                    out.push(rot);
                }
            }
        }
        out
    }

    /// Words `u` such that `fan ++ u` is an arrangement of the configuration.
    pub(crate) fn completions(&self, fan: &[usize]) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        if fan.len() > self.face_degrees.len() {
            return out;
        }
        for word in self.arrangements() {
            if word.starts_with(fan) {
                let rest = word[fan.len()..].to_vec();
                if !out.contains(&rest) {
                    out.push(rest);
                }
            }
        }
        out.sort();
        out
    }

    /// True when the cyclic word matches the configuration up to rotation and reflection.
    pub(crate) fn matches_cyclic(&self, word: &[usize]) -> bool {
        word.len() == self.face_degrees.len() && self.arrangements().iter().any(|w| w == word)
    }
}

impl TryFrom<Vec<usize>> for VertexConfiguration {
    type Error = MapError;

    fn try_from(v: Vec<usize>) -> Result<Self, MapError> {
        VertexConfiguration::new(v)
    }
}

impl From<VertexConfiguration> for Vec<usize> {
    fn from(c: VertexConfiguration) -> Vec<usize> {
        c.face_degrees
    }
}

impl fmt::Display for VertexConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.face_degrees.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for VertexConfiguration {
    type Err = MapError;

    /// Accepts `6,8,8`, `(6,8,8)` or `6.8.8`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, MapError> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(t);
        let sep = if t.contains(',') { ',' } else { '.' };
        let degrees = t
            .split(sep)
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<usize>()
                    .map_err(|_| MapError::InvalidConfiguration(format!("bad face degree {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        VertexConfiguration::new(degrees)
    }
}

pub fn classify(config: &VertexConfiguration) -> Geometry {
    config.geometry()
}
