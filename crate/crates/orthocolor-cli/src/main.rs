//! Command-line front end: every verification and construction in the
//! library behind one binary, emitting JSON reports with re-checkable
//! witnesses. Exit codes: 0 property holds / computation succeeded,
//! 1 property refuted (witness in the report), 2 usage or parse error.

mod report;
mod vectors;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orthocolor::geometry::{
    circle2_structure, dominates, ArcsFileSpec, Circle2Outcome, DominationOutcome,
    RegionFileSpec, RegionSpec,
};
use orthocolor::graph::{build_graph, decorte13, VectorConfig};
use orthocolor::numerics::{parse_rational, RationalVector};
use orthocolor::octahedral::{
    find_negative_triple, is_locally_octahedral, octa_class, OrthonormalBasis,
};
use orthocolor::solver::{chromatic_number, ks_colorable, validate_coloring};
use orthocolor::sphere::{enumerate_points, HeightBound, PrimitiveQuadruple};
use orthocolor::valuation::{gz_color, verify_baek, verify_gz, GzDensityProbe};
use orthocolor::Verdict;

use report::{Report, ReportVerdict};
use vectors::parse_vectors;

#[derive(Parser)]
#[command(
    name = "orthocolor",
    about = "Exact orthogonality graphs and colorings on the unit sphere",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PointsFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ColoringKind {
    Gz,
    Octa,
}

#[derive(Subcommand)]
enum Command {
    /// Exact chromatic number of an orthogonality graph.
    Chromatic {
        #[arg(long, conflicts_with = "builtin")]
        file: Option<PathBuf>,
        /// Built-in configuration name (currently `decorte13`).
        #[arg(long)]
        builtin: Option<String>,
        /// Identify antipodal vectors before building the graph.
        #[arg(long)]
        projective: bool,
    },
    /// 010-colorability search (one 1 per orthonormal triple, never two on
    /// an orthogonal pair).
    KsColor {
        #[arg(long, conflicts_with = "builtin")]
        file: Option<PathBuf>,
        #[arg(long)]
        builtin: Option<String>,
    },
    /// Export the orthogonality graph as DOT or a JSON adjacency report.
    Graph {
        #[arg(long, conflicts_with = "builtin")]
        file: Option<PathBuf>,
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        #[arg(long)]
        projective: bool,
    },
    /// Enumerate rational sphere points up to a height bound.
    GenRational {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=500))]
        height: i64,
        #[arg(long, value_enum, default_value_t = PointsFormat::Text)]
        format: PointsFormat,
    },
    /// Verify the 2-adic 3-coloring on all points up to a height bound.
    GzVerify {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=500))]
        height: i64,
        /// Angular radius (radians) of the density-probe caps.
        #[arg(long, default_value_t = 0.5)]
        cap_radius: f64,
    },
    /// Verify the 9-set covering on all points up to a height bound.
    BaekVerify {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=500))]
        height: i64,
        /// Nine rationals (row-major) for the octant basis; default standard.
        #[arg(long)]
        basis: Option<String>,
    },
    /// Octant class of every vector in a file.
    OctaClassify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        basis: Option<String>,
    },
    /// Check `(u·v)(u·w)(v·w) ≥ 0` for every triple in a file.
    LocallyOctahedral {
        #[arg(long)]
        file: PathBuf,
    },
    /// Search enumerated points for a monochromatic negative triple.
    NegativeTriple {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=500))]
        height: i64,
        #[arg(long, value_enum)]
        coloring: ColoringKind,
        #[arg(long)]
        basis: Option<String>,
    },
    /// Sampling falsifier for “D dominates S”.
    Dominate {
        #[arg(long)]
        d_region: PathBuf,
        #[arg(long)]
        s_region: PathBuf,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Two-arc structure check for closed covers of the circle.
    Circle2 {
        #[arg(long)]
        arcs: PathBuf,
        #[arg(long, default_value_t = 720, value_parser = clap::value_parser!(u64).range(8..=100_000))]
        grid: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Chromatic { .. } => "chromatic",
            Command::KsColor { .. } => "ks-color",
            Command::Graph { .. } => "graph",
            Command::GenRational { .. } => "gen-rational",
            Command::GzVerify { .. } => "gz-verify",
            Command::BaekVerify { .. } => "baek-verify",
            Command::OctaClassify { .. } => "octa-classify",
            Command::LocallyOctahedral { .. } => "locally-octahedral",
            Command::NegativeTriple { .. } => "negative-triple",
            Command::Dominate { .. } => "dominate",
            Command::Circle2 { .. } => "circle2",
        }
    }
}

enum Output {
    Report(Report),
    Raw(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    match run(cli.command) {
        Ok(Output::Report(report)) => {
            println!("{}", report.to_json());
            ExitCode::from(report.exit_code())
        }
        Ok(Output::Raw(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            let report = Report::error(name, &format!("{err:#}"));
            println!("{}", report.to_json());
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Output> {
    match command {
        Command::Chromatic {
            file,
            builtin,
            projective,
        } => cmd_chromatic(file.as_deref(), builtin.as_deref(), projective),
        Command::KsColor { file, builtin } => cmd_ks_color(file.as_deref(), builtin.as_deref()),
        Command::Graph {
            file,
            builtin,
            format,
            projective,
        } => cmd_graph(file.as_deref(), builtin.as_deref(), format, projective),
        Command::GenRational { height, format } => cmd_gen_rational(height, format),
        Command::GzVerify { height, cap_radius } => cmd_gz_verify(height, cap_radius),
        Command::BaekVerify { height, basis } => cmd_baek_verify(height, basis.as_deref()),
        Command::OctaClassify { file, basis } => cmd_octa_classify(&file, basis.as_deref()),
        Command::LocallyOctahedral { file } => cmd_locally_octahedral(&file),
        Command::NegativeTriple {
            height,
            coloring,
            basis,
        } => cmd_negative_triple(height, coloring, basis.as_deref()),
        Command::Dominate {
            d_region,
            s_region,
            samples,
            seed,
        } => cmd_dominate(&d_region, &s_region, samples, seed),
        Command::Circle2 { arcs, grid } => cmd_circle2(&arcs, grid as usize),
    }
}

// --- input loading -------------------------------------------------------

fn load_config(file: Option<&Path>, builtin: Option<&str>) -> Result<(VectorConfig, String)> {
    match (file, builtin) {
        (Some(path), None) => {
            let content = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            let config = parse_vectors(&content)?;
            Ok((config, path.display().to_string()))
        }
        (None, Some(name)) => match name {
            "decorte13" => Ok((decorte13(), "builtin:decorte13".to_string())),
            other => bail!("unknown builtin configuration `{other}` (try decorte13)"),
        },
        (None, None) => bail!("one of --file or --builtin is required"),
        (Some(_), Some(_)) => bail!("--file and --builtin are mutually exclusive"),
    }
}

fn parse_basis(spec: Option<&str>) -> Result<OrthonormalBasis> {
    let Some(text) = spec else {
        return Ok(OrthonormalBasis::standard());
    };
    let entries: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .collect();
    if entries.len() != 9 {
        bail!("--basis needs nine rationals, got {}", entries.len());
    }
    let mut values = Vec::with_capacity(9);
    for e in &entries {
        values.push(parse_rational(e).map_err(|err| anyhow!("--basis: {err}"))?);
    }
    let row = |i: usize| {
        RationalVector::new(
            values[3 * i].clone(),
            values[3 * i + 1].clone(),
            values[3 * i + 2].clone(),
        )
    };
    OrthonormalBasis::new(row(0), row(1), row(2)).map_err(|err| anyhow!("--basis: {err}"))
}

fn load_region(path: &Path) -> Result<RegionSpec> {
    let content = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let spec: RegionFileSpec = serde_json::from_str(&content)
        .with_context(|| format!("invalid region JSON in {}", path.display()))?;
    spec.try_into()
        .with_context(|| format!("invalid region in {}", path.display()))
}

fn height_points(height: i64) -> Vec<PrimitiveQuadruple> {
    enumerate_points(HeightBound::new(height).expect("clap enforces the range"))
}

// --- witness rendering ---------------------------------------------------

fn vector_json(v: &RationalVector) -> Value {
    json!([v.x.to_string(), v.y.to_string(), v.z.to_string()])
}

fn quad_json(p: &PrimitiveQuadruple) -> Value {
    json!([p.x(), p.y(), p.z(), p.n()])
}

// --- commands ------------------------------------------------------------

fn cmd_chromatic(file: Option<&Path>, builtin: Option<&str>, projective: bool) -> Result<Output> {
    let (config, source) = load_config(file, builtin)?;
    let graph = build_graph(&config, projective)?;
    let result = chromatic_number(&graph);
    let check = validate_coloring(&graph, &result.witness)?;
    anyhow::ensure!(check.holds(), "internal error: witness failed validation");
    let report = Report::new("chromatic")
        .inputs(json!({ "source": source, "projective": projective }))
        .witnesses(json!({
            "k": result.k,
            "coloring": result.witness.classes(),
        }))
        .statistics(json!({
            "k": result.k,
            "nodes_explored": result.nodes_explored,
            "lower_bound": result.lower_bound,
            "upper_bound_initial": result.upper_bound_initial,
            "vertex_count": graph.vertex_count(),
            "edge_count": graph.edge_count(),
        }));
    Ok(Output::Report(report))
}

fn cmd_ks_color(file: Option<&Path>, builtin: Option<&str>) -> Result<Output> {
    let (config, source) = load_config(file, builtin)?;
    let outcome = ks_colorable(&config)?;
    let report = Report::new("ks-color").inputs(json!({ "source": source }));
    let report = match outcome {
        Some(assignment) => {
            let bits: Vec<u8> = assignment.bits().iter().map(|&b| b as u8).collect();
            report
                .verdict(ReportVerdict::Ok)
                .witnesses(json!({ "assignment": bits }))
                .statistics(json!({ "colorable": true, "vectors": config.len() }))
        }
        None => report
            .verdict(ReportVerdict::Refuted)
            .statistics(json!({ "colorable": false, "vectors": config.len() })),
    };
    Ok(Output::Report(report))
}

fn cmd_graph(
    file: Option<&Path>,
    builtin: Option<&str>,
    format: GraphFormat,
    projective: bool,
) -> Result<Output> {
    let (config, _) = load_config(file, builtin)?;
    let graph = build_graph(&config, projective)?;
    match format {
        GraphFormat::Dot => Ok(Output::Raw(graph.to_dot())),
        GraphFormat::Json => {
            let mut text = serde_json::to_string_pretty(&graph.report())?;
            text.push('\n');
            Ok(Output::Raw(text))
        }
    }
}

fn cmd_gen_rational(height: i64, format: PointsFormat) -> Result<Output> {
    let points = height_points(height);
    match format {
        PointsFormat::Text => {
            let mut out = format!("# rational sphere points of height <= {height}\n");
            for p in &points {
                let v = p.to_vector();
                out.push_str(&format!("{} {} {}\n", v.x, v.y, v.z));
            }
            Ok(Output::Raw(out))
        }
        PointsFormat::Json => {
            let report = Report::new("gen-rational")
                .inputs(json!({ "height": height }))
                .witnesses(json!({
                    "points": points.iter().map(quad_json).collect::<Vec<_>>(),
                }))
                .statistics(json!({ "count": points.len() }));
            Ok(Output::Report(report))
        }
    }
}

fn cmd_gz_verify(height: i64, cap_radius: f64) -> Result<Output> {
    anyhow::ensure!(
        cap_radius.is_finite() && cap_radius > 0.0 && cap_radius < std::f64::consts::PI,
        "--cap-radius must lie in (0, π)"
    );
    let points = height_points(height);
    let probe = GzDensityProbe {
        centers: height_points(height.min(5)),
        radius: cap_radius,
    };
    let gz = verify_gz(&points, Some(&probe));
    let verdict = if gz.is_valid() {
        ReportVerdict::Ok
    } else {
        ReportVerdict::Refuted
    };
    let report = Report::new("gz-verify")
        .inputs(json!({ "height": height, "cap_radius": cap_radius }))
        .verdict(verdict)
        .witnesses(json!({
            "violations": gz.violations,
            "cap_census": gz.cap_census,
        }))
        .statistics(json!({
            "points": gz.points,
            "pairs_checked": gz.pairs_checked,
            "orthogonal_pairs": gz.orthogonal_pairs,
        }));
    Ok(Output::Report(report))
}

fn cmd_baek_verify(height: i64, basis: Option<&str>) -> Result<Output> {
    let base = parse_basis(basis)?;
    let points = height_points(height);
    let baek = verify_baek(&points, &base);
    let verdict = if baek.is_valid() {
        ReportVerdict::Ok
    } else {
        ReportVerdict::Refuted
    };
    let report = Report::new("baek-verify")
        .inputs(json!({ "height": height, "basis": basis.unwrap_or("standard") }))
        .verdict(verdict)
        .witnesses(json!({
            "coverage_holes": baek.coverage_holes,
            "covering_violations": baek.covering_violations,
            "partition_violations": baek.partition_violations,
        }))
        .statistics(json!({
            "points": baek.points,
            "pairs_checked": baek.pairs_checked,
            "orthogonal_pairs": baek.orthogonal_pairs,
        }));
    Ok(Output::Report(report))
}

fn cmd_octa_classify(file: &Path, basis: Option<&str>) -> Result<Output> {
    let base = parse_basis(basis)?;
    let (config, source) = load_config(Some(file), None)?;
    let classes: Vec<u8> = config
        .vectors()
        .iter()
        .map(|v| octa_class(v, &base).label())
        .collect();
    let report = Report::new("octa-classify")
        .inputs(json!({ "source": source, "basis": basis.unwrap_or("standard") }))
        .witnesses(json!({
            "labels": config.labels(),
            "classes": classes,
        }))
        .statistics(json!({ "vectors": config.len() }));
    Ok(Output::Report(report))
}

fn cmd_locally_octahedral(file: &Path) -> Result<Output> {
    let (config, source) = load_config(Some(file), None)?;
    let verdict = is_locally_octahedral(config.vectors());
    let report = Report::new("locally-octahedral").inputs(json!({ "source": source }));
    let report = match verdict {
        Verdict::Holds => report
            .verdict(ReportVerdict::Ok)
            .statistics(json!({ "vectors": config.len() })),
        Verdict::Refuted((i, j, k)) => report
            .verdict(ReportVerdict::Refuted)
            .witnesses(json!({
                "triple": [i, j, k],
                "vectors": [
                    vector_json(&config.vectors()[i]),
                    vector_json(&config.vectors()[j]),
                    vector_json(&config.vectors()[k]),
                ],
            }))
            .statistics(json!({ "vectors": config.len() })),
    };
    Ok(Output::Report(report))
}

fn cmd_negative_triple(height: i64, coloring: ColoringKind, basis: Option<&str>) -> Result<Output> {
    let points = height_points(height);
    let vectors: Vec<RationalVector> = points.iter().map(|p| p.to_vector()).collect();
    let (coloring_name, labels): (&str, Vec<u8>) = match coloring {
        ColoringKind::Gz => ("gz", points.iter().map(|p| gz_color(p).label()).collect()),
        ColoringKind::Octa => {
            let base = parse_basis(basis)?;
            (
                "octa",
                vectors.iter().map(|v| octa_class(v, &base).label()).collect(),
            )
        }
    };
    let found = find_negative_triple(&vectors, &labels);
    let report = Report::new("negative-triple").inputs(json!({
        "height": height,
        "coloring": coloring_name,
        "basis": basis.unwrap_or("standard"),
    }));
    let report = match found {
        Some((class, (i, j, k))) => report
            .witnesses(json!({
                "class": class,
                "indices": [i, j, k],
                "points": [quad_json(&points[i]), quad_json(&points[j]), quad_json(&points[k])],
            }))
            .statistics(json!({ "found": true, "points": points.len() })),
        None => report.statistics(json!({ "found": false, "points": points.len() })),
    };
    Ok(Output::Report(report))
}

fn cmd_dominate(d_path: &Path, s_path: &Path, samples: u64, seed: u64) -> Result<Output> {
    let d = load_region(d_path)?;
    let s = load_region(s_path)?;
    let outcome = dominates(&d, &s, samples, seed);
    let report = Report::new("dominate")
        .inputs(json!({
            "d_region": d_path.display().to_string(),
            "s_region": s_path.display().to_string(),
            "samples": samples,
        }))
        .seed(seed);
    let report = match outcome {
        DominationOutcome::Refuted {
            witness,
            samples_used,
        } => report
            .verdict(ReportVerdict::Refuted)
            .witnesses(json!({ "circle_normal": vector_json(witness.normal()) }))
            .statistics(json!({ "samples_used": samples_used, "refuted": true })),
        DominationOutcome::Unrefuted { samples } => report
            .verdict(ReportVerdict::Ok)
            .statistics(json!({ "samples_used": samples, "refuted": false })),
    };
    Ok(Output::Report(report))
}

fn cmd_circle2(arcs_path: &Path, grid: usize) -> Result<Output> {
    let content = std::fs::read_to_string(arcs_path)
        .with_context(|| format!("cannot read {}", arcs_path.display()))?;
    let spec: ArcsFileSpec = serde_json::from_str(&content)
        .with_context(|| format!("invalid arcs JSON in {}", arcs_path.display()))?;
    let (b1, b2) = spec.to_unions()?;
    let outcome = circle2_structure(&b1, &b2, grid)?;
    let report = Report::new("circle2").inputs(json!({
        "arcs": arcs_path.display().to_string(),
        "grid": grid,
    }));
    let report = match outcome {
        Circle2Outcome::Confirmed { theta0, corners } => report
            .verdict(ReportVerdict::Ok)
            .witnesses(json!({ "theta0": theta0, "corners": corners }))
            .statistics(json!({ "confirmed": true })),
        Circle2Outcome::HypothesisFailed { set, angles } => report
            .verdict(ReportVerdict::Refuted)
            .witnesses(json!({ "set": set, "angles": angles }))
            .statistics(json!({ "confirmed": false, "reason": "hypothesis failed" })),
        Circle2Outcome::StructureMismatch { reason } => report
            .verdict(ReportVerdict::Refuted)
            .witnesses(json!({ "reason": reason }))
            .statistics(json!({ "confirmed": false, "reason": "structure mismatch" })),
    };
    Ok(Output::Report(report))
}
