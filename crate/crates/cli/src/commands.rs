use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use num_bigint::{BigInt, Sign};
use serde::{Serialize, Serializer};
use tesscensus::analysis::{
    default_tolerance, fit_recurrence, growth_rate, parse_counts, rate_from_zeta, GrowthAnalysis, GrowthKind,
    Recurrence,
};
use tesscensus::catalog::{self, CatalogEntry, ExpectedRate};
use tesscensus::census::{bfs_census, central_seeds, run_census, CensusReport, SeedMode};
use tesscensus::gfsystem::{class_census, default_escher_system, solve, ClassName, VertexClass};
use tesscensus::polyrat::{serialize_integers, Polynomial, RationalFunction};
use tesscensus::render::{emit_svg, layout, parse_palette, SvgOptions};
use tesscensus::tessmap::{build, validate, DartRecord, Geometry, ValidationReport, VertexConfiguration};

use crate::error::{CliError, EXIT_OK, EXIT_VERIFY_FAILED};
use crate::{
    BuildArgs, CatalogArgs, CensusArgs, Command, DeriveArgs, FitArgs, Format, GfArgs, GrowthArgs, Output,
    RenderArgs, SeriesArgs, VerifyArgs,
};

type Result<T> = std::result::Result<T, CliError>;

pub fn run(command: Command) -> Result<i32> {
    match command {
        Command::Catalog(a) => catalog_cmd(a),
        Command::Build(a) => build_cmd(a),
        Command::Census(a) => census_cmd(a),
        Command::Series(a) => series_cmd(a),
        Command::Fit(a) => fit_cmd(a),
        Command::Growth(a) => growth_cmd(a),
        Command::Derive(a) => derive_cmd(a),
        Command::Render(a) => render_cmd(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn write_out(output: &Output, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(output: &Output, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("output serializes");
    text.push('\n');
    write_out(output, &text)
}

fn find_entry(name: &str) -> Result<CatalogEntry> {
    catalog::find(name).ok_or_else(|| {
        let known: Vec<&str> = catalog::entries().iter().map(|e| e.name).collect();
        CliError::usage(format!("unknown catalog entry {name:?} (known: {})", known.join(", ")))
    })
}

struct Ints(Vec<BigInt>);

struct Int(BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl Serialize for Ints {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_integers(&self.0, s)
    }
}

#[derive(Serialize)]
struct CatalogRow<'a> {
    #[serde(flatten)]
    entry: &'a CatalogEntry,
    geometry: Geometry,
    expected_series: Ints,
}

fn catalog_cmd(a: CatalogArgs) -> Result<i32> {
    let entries = catalog::entries();
    let rows: Vec<CatalogRow> = entries
        .iter()
        .map(|e| CatalogRow { entry: e, geometry: e.config.geometry(), expected_series: Ints(e.expected_series(a.max_gen)) })
        .collect();
    emit_json(&a.output, &rows)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct BuildOut<'a> {
    config: &'a VertexConfiguration,
    geometry: Geometry,
    layers_built: usize,
    closed: bool,
    vertices: usize,
    edges: usize,
    faces: usize,
    boundary_vertices: usize,
    validation: ValidationReport,
    darts: Vec<DartRecord>,
}

fn build_cmd(a: BuildArgs) -> Result<i32> {
    let result = build(&a.config, a.layers)?;
    let map = &result.map;
    match a.format {
        Format::Csv => write_out(&a.output, &map.to_csv_string())?,
        Format::Json => emit_json(
            &a.output,
            &BuildOut {
                config: &a.config,
                geometry: a.config.geometry(),
                layers_built: result.layers_built,
                closed: result.closed,
                vertices: map.vertex_count(),
                edges: map.edge_count(),
                faces: map.face_count(),
                boundary_vertices: result.boundary_vertices.len(),
                validation: validate(map),
                darts: map.to_records(),
            },
        )?,
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CensusOut<'a> {
    entry: Option<&'a str>,
    config: &'a VertexConfiguration,
    geometry: Geometry,
    seed: SeedMode,
    seed_description: &'a str,
    max_gen: usize,
    valid_through: usize,
    closed: bool,
    layers_built: usize,
    counts: &'a [u64],
}

fn census_cmd(a: CensusArgs) -> Result<i32> {
    let (entry, config, seed) = match &a.entry {
        Some(name) => {
            let e = find_entry(name)?;
            (Some(e.name), e.config, e.seed_mode)
        }
        None => (None, a.config.clone().expect("clap requires config"), a.seed.unwrap_or(SeedMode::FaceVertices)),
    };
    let run = run_census(&config, seed, a.max_gen, a.max_layers)?;
    let shown = run.report.counts.len().min(run.report.valid_through.min(a.max_gen) + 1);
    let counts = &run.report.counts[..shown];
    match a.format {
        Format::Csv => {
            let table = CensusReport { counts: counts.to_vec(), ..run.report.clone() };
            let text = format!(
                "# config={} seed={} valid_through={} closed={}\n{}",
                config,
                seed,
                run.report.valid_through.min(a.max_gen),
                run.closed,
                table.to_csv_string()
            );
            write_out(&a.output, &text)?;
        }
        Format::Json => emit_json(
            &a.output,
            &CensusOut {
                entry,
                config: &config,
                geometry: config.geometry(),
                seed,
                seed_description: &run.report.seed_description,
                max_gen: a.max_gen,
                valid_through: run.report.valid_through.min(a.max_gen),
                closed: run.closed,
                layers_built: run.layers_built,
                counts,
            },
        )?,
    }
    Ok(EXIT_OK)
}

fn gf_from_args(a: &GfArgs) -> Result<(Option<CatalogEntry>, RationalFunction)> {
    if let Some(name) = &a.entry {
        let e = find_entry(name)?;
        let gf = e.expected_gf.clone();
        return Ok((Some(e), gf));
    }
    let (num, den) = match (&a.num, &a.den) {
        (Some(n), Some(d)) => (n, d),
        _ => return Err(CliError::usage("give --entry or both --num and --den")),
    };
    let num: Polynomial = num.parse()?;
    let den: Polynomial = den.parse()?;
    Ok((None, RationalFunction::new(num, den)?))
}

#[derive(Serialize)]
struct SeriesOut<'a> {
    entry: Option<&'a str>,
    gf: &'a RationalFunction,
    text: String,
    max_gen: usize,
    series: Ints,
}

fn series_cmd(a: SeriesArgs) -> Result<i32> {
    let (entry, gf) = gf_from_args(&a.gf)?;
    let series = gf.integer_series(a.max_gen)?;
    emit_json(
        &a.output,
        &SeriesOut { entry: entry.as_ref().map(|e| e.name), gf: &gf, text: gf.to_string(), max_gen: a.max_gen, series: Ints(series) },
    )?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct FitOut<'a> {
    #[serde(flatten)]
    recurrence: &'a Recurrence,
    text: String,
}

fn fit_cmd(a: FitArgs) -> Result<i32> {
    let text = match &a.input {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).map_err(|e| CliError::io(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::io(format!("stdin: {e}")))?;
            s
        }
    };
    let counts = parse_counts(&text)?;
    let rec = fit_recurrence(&counts)?;
    emit_json(&a.output, &FitOut { text: rec.generating_function().to_string(), recurrence: &rec })?;
    Ok(EXIT_OK)
}

/// `ζ^3 - 4ζ - 2`, highest power first.
fn zeta_text(p: &Polynomial) -> String {
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.sign() == Sign::NoSign {
            continue;
        }
        let neg = c.sign() == Sign::Minus;
        let mag = c.magnitude().to_string();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit = mag == "1";
        match i {
            0 => out.push_str(&mag),
            1 if unit => out.push('ζ'),
            1 => out.push_str(&format!("{mag}ζ")),
            _ if unit => out.push_str(&format!("ζ^{i}")),
            _ => out.push_str(&format!("{mag}ζ^{i}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Serialize)]
struct GrowthOut<'a> {
    entry: Option<&'a str>,
    gf: &'a RationalFunction,
    #[serde(flatten)]
    analysis: &'a GrowthAnalysis,
    zeta_text: Option<String>,
    /// Rate recomputed from the largest real root of the ζ polynomial.
    zeta_rate: Option<f64>,
    printed_rate: Option<&'a str>,
}

fn growth_cmd(a: GrowthArgs) -> Result<i32> {
    let (entry, gf) = gf_from_args(&a.gf)?;
    let tol = a.tol.unwrap_or_else(default_tolerance);
    let g = growth_rate(&gf, tol)?;
    let zeta_rate = match (&g.zeta_polynomial, g.kind) {
        (Some(q), GrowthKind::Exponential) => rate_from_zeta(q, tol).ok(),
        _ => None,
    };
    let printed_rate = match entry.as_ref().map(|e| &e.expected_rate) {
        Some(ExpectedRate::Value { printed, .. }) => Some(printed.as_str()),
        _ => None,
    };
    emit_json(
        &a.output,
        &GrowthOut {
            entry: entry.as_ref().map(|e| e.name),
            gf: &gf,
            analysis: &g,
            zeta_text: g.zeta_polynomial.as_ref().map(zeta_text),
            zeta_rate,
            printed_rate,
        },
    )?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct DeriveOut {
    classes: Vec<VertexClass>,
    per_class: BTreeMap<ClassName, RationalFunction>,
    per_class_text: BTreeMap<ClassName, String>,
    total: RationalFunction,
    total_text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    class_census: Option<BTreeMap<ClassName, Ints>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    total_series: Option<Ints>,
}

fn derive_cmd(a: DeriveArgs) -> Result<i32> {
    let system = default_escher_system();
    let solved = solve(&system)?;
    let (class_census, total_series) = match a.max_gen {
        Some(n) => {
            let table = class_census(&solved, n)?;
            let table = table.into_iter().map(|(k, v)| (k, Ints(v))).collect();
            (Some(table), Some(Ints(solved.total.integer_series(n)?)))
        }
        None => (None, None),
    };
    emit_json(
        &a.output,
        &DeriveOut {
            classes: system.classes(),
            per_class_text: solved.per_class.iter().map(|(k, v)| (*k, v.to_string())).collect(),
            per_class: solved.per_class.clone(),
            total_text: solved.total.to_string(),
            total: solved.total,
            class_census,
            total_series,
        },
    )?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct RenderOut<'a> {
    out: String,
    config: &'a VertexConfiguration,
    geometry: Geometry,
    layers_built: usize,
    vertices: usize,
    edges: usize,
    side: f64,
    bytes: usize,
}

fn render_cmd(a: RenderArgs) -> Result<i32> {
    let geometry = a.config.geometry();
    if geometry == Geometry::Spherical {
        return Err(tesscensus::render::RenderError::UnsupportedGeometry(geometry).into());
    }
    if !(a.size.is_finite() && a.size > 0.0) {
        return Err(CliError::usage(format!("--size must be positive, got {}", a.size)));
    }
    let result = build(&a.config, a.layers)?;
    let map = &result.map;
    let seeds = central_seeds(map, SeedMode::FaceVertices, None)?;
    let census = bfs_census(map, &seeds, map.vertex_count())?;
    let lay = layout(map, &census, geometry)?;
    let mut options = SvgOptions { max_generation: a.max_gen, geodesic_arcs: a.geodesic, boundary_circle: a.boundary, size: a.size, ..SvgOptions::default() };
    if let Some(p) = &a.palette {
        options.palette = parse_palette(p)?;
    }
    let svg = emit_svg(&lay, &options);
    write_out(&a.output, &svg)?;
    if let Some(path) = &a.output.out {
        let summary = RenderOut {
            out: path.display().to_string(),
            config: &a.config,
            geometry,
            layers_built: result.layers_built,
            vertices: lay.positions.iter().filter(|p| p.is_some()).count(),
            edges: lay.edges.len(),
            side: lay.side,
            bytes: svg.len(),
        };
        emit_json(&Output { out: None }, &summary)?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VerifyRow {
    generation: usize,
    census: Option<u64>,
    expected: Int,
    #[serde(rename = "match")]
    matches: bool,
}

#[derive(Serialize)]
struct VerifyEntry {
    entry: String,
    status: &'static str,
    max_gen: usize,
    valid_through: usize,
    closed: bool,
    layers_built: usize,
    rows: Vec<VerifyRow>,
}

#[derive(Serialize)]
struct VerifyOut {
    status: &'static str,
    entries: Vec<VerifyEntry>,
}

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn verify_cmd(a: VerifyArgs) -> Result<i32> {
    let entries = match &a.entry {
        Some(name) => vec![find_entry(name)?],
        None => catalog::entries(),
    };
    // Entries are independent; each runs on its own thread.
    let results: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = entries
            .iter()
            .map(|e| s.spawn(move || catalog::verify(e, a.max_gen.unwrap_or(e.verify_depth))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("verify thread panicked")).collect()
    });
    let mut out = Vec::new();
    for r in results {
        let v = r?;
        let rows = v
            .expected
            .iter()
            .enumerate()
            .map(|(n, e)| {
                let census = (n <= v.valid_through).then(|| v.census[n]);
                VerifyRow { generation: n, census, matches: census.is_some_and(|c| BigInt::from(c) == *e), expected: Int(e.clone()) }
            })
            .collect();
        out.push(VerifyEntry {
            entry: v.entry,
            status: status(v.pass),
            max_gen: v.max_gen,
            valid_through: v.valid_through,
            closed: v.closed,
            layers_built: v.layers_built,
            rows,
        });
    }
    let pass = out.iter().all(|e| e.status == "PASS");
    emit_json(&a.output, &VerifyOut { status: status(pass), entries: out })?;
    Ok(if pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
}
