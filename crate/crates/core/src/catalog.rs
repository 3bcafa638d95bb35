//! The tessellations whose censuses are reproduced, with expected series.

use num_bigint::BigInt;
use serde::Serialize;

use crate::census::{run_census, CensusError, SeedMode, DEFAULT_MAX_LAYERS};
use crate::polyrat::{Polynomial, RationalFunction};
use crate::tessmap::VertexConfiguration;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExpectedRate {
    Finite,
    Linear,
    /// Exponential; `printed` is the value as the source prints it.
    Value {
        printed: String,
        /// Closed radical form, where one is printed.
        closed_form: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub config: VertexConfiguration,
    pub seed_mode: SeedMode,
    pub expected_gf: RationalFunction,
    /// The generating function exactly as printed, when it differs from
    /// `expected_gf`.
    pub printed_gf: Option<RationalFunction>,
    pub expected_rate: ExpectedRate,
    pub provenance: &'static str,
    /// Generations checked by a default `verify` run.
    pub verify_depth: usize,
}

impl CatalogEntry {
    pub fn is_finite(&self) -> bool {
        self.expected_rate == ExpectedRate::Finite
    }

    /// First `n + 1` expected counts.
    pub fn expected_series(&self, n: usize) -> Vec<BigInt> {
        self.expected_gf.integer_series(n).expect("catalog series are integral")
    }
}

fn poly(c: &[i64]) -> Polynomial {
    Polynomial::from_i64s(c)
}

fn gf(num: Polynomial, den: Polynomial) -> RationalFunction {
    RationalFunction::new(num, den).expect("nonzero denominator")
}

fn cfg(s: &str) -> VertexConfiguration {
    s.parse().expect("catalog configuration")
}

fn rate(printed: &str, closed_form: Option<f64>) -> ExpectedRate {
    ExpectedRate::Value { printed: printed.to_string(), closed_form }
}

pub fn entries() -> Vec<CatalogEntry> {
    let golden = 0.5 + 5f64.sqrt() / 2.0;
    let sqrt13 = 13f64.sqrt();
    vec![
        CatalogEntry {
            name: "escher-dual",
            aliases: &["{[6,8,8],3}"],
            config: cfg("6,8,8"),
            seed_mode: SeedMode::FaceVertices,
            expected_gf: gf(poly(&[6, 6, 6, 6]), poly(&[1, 0, -1, -2, -1, 0, 1])),
            printed_gf: None,
            expected_rate: rate("1.582", None),
            provenance: "dual of Circle Limit IV, seeded at the six vertices of the central hexagon",
            verify_depth: 20,
        },
        CatalogEntry {
            name: "escher-primal",
            aliases: &["{3,[6,8,8]}"],
            config: cfg("6,8,8"),
            seed_mode: SeedMode::DualCenter,
            expected_gf: gf(poly(&[1, 4, 10, 4, 1]), poly(&[1, -2, -2, -2, 1])),
            printed_gf: None,
            expected_rate: rate("2.890", Some(golden + golden.sqrt())),
            provenance: "Circle Limit IV, seeded at the central vertex of degree six",
            verify_depth: 11,
        },
        CatalogEntry {
            name: "regular-3-8",
            aliases: &["{3,8}"],
            config: cfg("8,8,8"),
            seed_mode: SeedMode::DualCenter,
            expected_gf: gf(poly(&[1, 4, 1]), poly(&[1, -4, 1])),
            printed_gf: None,
            expected_rate: rate("3.732", Some(2.0 + 3f64.sqrt())),
            provenance: "regular tessellation by triangles, eight at each vertex",
            verify_depth: 9,
        },
        CatalogEntry {
            name: "regular-8-3",
            aliases: &["{8,3}"],
            config: cfg("8,8,8"),
            seed_mode: SeedMode::Vertex,
            expected_gf: gf(
                &poly(&[1, 1]) * &poly(&[1, 1, 1, 1]),
                poly(&[1, -1, -1, -1, 1]),
            ),
            printed_gf: Some(gf(
                &poly(&[1, 1]) * &poly(&[1, 1, 1, 1, 1]),
                poly(&[1, -6, -6, -6, 1]),
            )),
            expected_rate: rate(
                "1.722",
                Some(0.25 + sqrt13 / 4.0 + (sqrt13 / 8.0 - 0.125).sqrt()),
            ),
            provenance: "regular tessellation by octagons, three at each vertex, seeded at one vertex; \
                         series from the census (the printed fraction does not match the printed rate)",
            verify_depth: 17,
        },
        CatalogEntry {
            name: "euclid-primal",
            aliases: &["{3,[4,8,8]}"],
            config: cfg("4,8,8"),
            seed_mode: SeedMode::DualCenter,
            expected_gf: gf(poly(&[1, 2, 9, -4]), &poly(&[1, -1]) * &poly(&[1, -1])),
            printed_gf: None,
            expected_rate: ExpectedRate::Linear,
            provenance: "Euclidean tessellation dual to the truncated square tiling, seeded at a vertex of degree four",
            verify_depth: 20,
        },
        CatalogEntry {
            name: "euclid-dual",
            aliases: &["{[4,8,8],3}"],
            config: cfg("4,8,8"),
            seed_mode: SeedMode::FaceVertices,
            expected_gf: gf(
                poly(&[4, 0, 4]),
                &poly(&[1, 1, 1]) * &(&poly(&[1, -1]) * &poly(&[1, -1])),
            ),
            printed_gf: None,
            expected_rate: ExpectedRate::Linear,
            provenance: "truncated square tiling, seeded at the four vertices of a square (OEIS A004396 times 4)",
            verify_depth: 20,
        },
        CatalogEntry {
            name: "sphere-primal",
            aliases: &["{3,[4,6,6]}"],
            config: cfg("4,6,6"),
            seed_mode: SeedMode::DualCenter,
            expected_gf: RationalFunction::from_poly(poly(&[1, 4, 8, 1])),
            printed_gf: None,
            expected_rate: ExpectedRate::Finite,
            provenance: "tetrakis hexahedron, seeded at a vertex of degree four (printed 8z^ read as 8z^2)",
            verify_depth: 6,
        },
        CatalogEntry {
            name: "sphere-dual",
            aliases: &["{[4,6,6],3}"],
            config: cfg("4,6,6"),
            seed_mode: SeedMode::FaceVertices,
            expected_gf: RationalFunction::from_poly(poly(&[4, 4, 8, 4, 4])),
            printed_gf: None,
            expected_rate: ExpectedRate::Finite,
            provenance: "truncated octahedron, seeded at the four vertices of a square",
            verify_depth: 8,
        },
    ]
}

/// Entry by name or alias.
pub fn find(name: &str) -> Option<CatalogEntry> {
    entries().into_iter().find(|e| e.name == name || e.aliases.contains(&name))
}

/// Census against expected series for one entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    pub entry: String,
    pub max_gen: usize,
    pub valid_through: usize,
    pub closed: bool,
    pub layers_built: usize,
    pub census: Vec<u64>,
    #[serde(serialize_with = "crate::polyrat::serialize_integers")]
    pub expected: Vec<BigInt>,
    pub pass: bool,
}

/// Builds the entry's patch until the census is certified through
/// `max_gen` and compares it with the expected series term by term.
pub fn verify(entry: &CatalogEntry, max_gen: usize) -> Result<Verification, CensusError> {
    let run = run_census(&entry.config, entry.seed_mode, max_gen, DEFAULT_MAX_LAYERS)?;
    let expected = entry.expected_series(max_gen);
    let census: Vec<u64> = (0..=max_gen).map(|n| run.report.count(n).unwrap_or(0)).collect();
    let pass = run.report.valid_through >= max_gen
        && census.iter().zip(&expected).all(|(c, e)| BigInt::from(*c) == *e);
    Ok(Verification {
        entry: entry.name.to_string(),
        max_gen,
        valid_through: run.report.valid_through,
        closed: run.closed,
        layers_built: run.layers_built,
        census,
        expected,
        pass,
    })
}
