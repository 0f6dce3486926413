//! Batch CLI: every subcommand runs one library operation and emits a
//! single RunRecord JSON document (plus optional CSV for tabular
//! payloads). Exit codes: 0 success, 1 usage or input error, 2 failed
//! verification assertion.

use clap::{Args, Parser, Subcommand};
use ffext::verifier::{
    self, lower_bound_construction, run_verify_suite, sharpness_sweep, BOUND_NAMES,
};
use ffext::{energy, incidence, io as fio, spectral, PointSet, PrimeContext};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "ffext", version, about = "Fourier extension experiments over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output path for the RunRecord JSON (stdout if omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format for tabular payloads
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
    /// Worker threads (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Dense-workspace cap on p^d
    #[arg(long, global = true, default_value_t = spectral::SIZE_CAP)]
    size_cap: u64,
}

#[derive(Args)]
struct SetArgs {
    /// Prime modulus
    #[arg(long)]
    p: u64,
    /// Set file (one point per line, comma-separated coordinates)
    #[arg(long)]
    set: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Additive energy of the lifted set, with rectangle classification
    /// for 3-dimensional bases
    Energy {
        #[command(flatten)]
        set: SetArgs,
        /// Ambient dimension (base sets live in dimension d-1)
        #[arg(long, default_value_t = 4)]
        d: usize,
    },
    /// Rectangle counts of a base set via the orthogonality criterion
    Rectangles {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Incidence statistics: point-plane (3D sets) or point-line,
    /// rich-line and right-triangle statistics (2D sets)
    Incidence {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Run a named verification suite and report fitted constants
    Verify {
        /// Bound name
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(BOUND_NAMES))]
        bound: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random instances on top of the named families
        #[arg(long, default_value_t = 50)]
        n: usize,
    },
    /// Extension-ratio sweep for the isotropic-line lift
    Sharpness {
        #[arg(long, default_value_t = 4)]
        d: usize,
        /// Lebesgue exponents, comma-separated
        #[arg(long, value_delimiter = ',', default_value = "3")]
        q: Vec<f64>,
        /// Primes, comma-separated
        #[arg(long, value_delimiter = ',', default_value = "3,7,11")]
        primes: Vec<u64>,
    },
    /// Slice construction in F_p^3 with restricted norm above p^{7/6}
    LowerBound {
        #[arg(long)]
        p: u64,
    },
    /// Hill-climbing search for large extension ratios
    Extremize {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[arg(long, default_value_t = 3.0)]
        q: f64,
        /// Move evaluations beyond the initial candidate
        #[arg(long, default_value_t = 1000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Fourier transform of the indicator of a set
    Transform {
        #[command(flatten)]
        set: SetArgs,
        /// Apply the normalized inverse transform of the lifted measure
        /// instead (set is a paraboloid base)
        #[arg(long)]
        extension: bool,
    },
}

#[derive(Serialize)]
struct RunRecord {
    command: String,
    params: BTreeMap<String, Value>,
    input_digests: BTreeMap<String, String>,
    payload: Value,
    wall_ms: u64,
    version: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's help/version paths are successes, not usage errors
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn check_cap(p: u64, d: usize, cap: u64) -> Result<(), String> {
    let n = (p as u128).pow(d as u32);
    if n > cap as u128 {
        return Err(format!("p^d = {n} exceeds the size cap {cap}"));
    }
    Ok(())
}

fn digest_file(path: &PathBuf) -> Result<String, String> {
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

fn load_set(args: &SetArgs) -> Result<(PointSet, fio::ParseWarnings, String), String> {
    let digest = digest_file(&args.set)?;
    let (set, warnings) =
        fio::parse_set_file(&args.set, args.p).map_err(|e| format!("{}: {e}", args.set.display()))?;
    Ok((set, warnings, digest))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    let start = Instant::now();
    let mut params = BTreeMap::new();
    let mut digests = BTreeMap::new();
    let mut exit = ExitCode::SUCCESS;
    let mut csv: Option<String> = None;

    let (name, payload): (&str, Value) = match &cli.command {
        Command::Energy { set, d } => {
            if *d != 3 && *d != 4 {
                return Err(format!("d = {d} is not supported (need 3 or 4)"));
            }
            check_cap(set.p, *d, cli.size_cap)?;
            let (base, warnings, digest) = load_set(set)?;
            if base.dim() != d - 1 {
                return Err(format!(
                    "set dimension {} does not match base dimension d-1 = {}",
                    base.dim(),
                    d - 1
                ));
            }
            params.insert("p".into(), json!(set.p));
            params.insert("d".into(), json!(d));
            digests.insert(set.set.display().to_string(), digest);
            let report = energy::energy_report(&base).map_err(|e| e.to_string())?;
            (
                "energy",
                json!({ "report": report, "warnings": warnings, "size": base.len() }),
            )
        }
        Command::Rectangles { set } => {
            let (base, warnings, digest) = load_set(set)?;
            params.insert("p".into(), json!(set.p));
            digests.insert(set.set.display().to_string(), digest);
            let triples = energy::rectangle_triples(&base).map_err(|e| e.to_string())?;
            let trivial = energy::trivial_triple_count(base.len() as u64);
            let classes = if base.dim() == 3 {
                Some(energy::classify_rectangles(&base).map_err(|e| e.to_string())?)
            } else {
                None
            };
            (
                "rectangles",
                json!({
                    "triples": triples,
                    "trivial": trivial,
                    "nontrivial": triples - trivial,
                    "by_class": classes,
                    "warnings": warnings,
                    "size": base.len(),
                }),
            )
        }
        Command::Incidence { set } => {
            let (pts, warnings, digest) = load_set(set)?;
            params.insert("p".into(), json!(set.p));
            digests.insert(set.set.display().to_string(), digest);
            let ctx = PrimeContext::new(set.p).map_err(|e| e.to_string())?;
            let payload = match pts.dim() {
                3 => {
                    let planes = incidence::PlaneMultiset::all_planes(&ctx);
                    let inc = incidence::point_plane_incidences(&pts, &planes)
                        .map_err(|e| e.to_string())?;
                    let k = incidence::max_collinear(&pts).map_err(|e| e.to_string())?;
                    json!({
                        "planes": planes.total(),
                        "incidences": inc.count,
                        "deviation": inc.deviation(),
                        "max_collinear": k,
                        "warnings": warnings,
                        "size": pts.len(),
                    })
                }
                2 => {
                    let lines = incidence::all_lines_2d(&ctx);
                    let inc = incidence::point_line_incidences(&pts, &lines)
                        .map_err(|e| e.to_string())?;
                    let triangles =
                        incidence::right_triangle_count(&pts).map_err(|e| e.to_string())?;
                    let decomposition = incidence::right_triangle_decomposition(&pts)
                        .ok()
                        .map(|dec| {
                            json!({
                                "total": dec.total,
                                "poor": dec.poor,
                                "just_rich": dec.just_rich,
                                "very_rich": dec.very_rich,
                                "k_star": dec.k_star,
                                "very_rich_threshold": dec.very_rich_threshold,
                            })
                        });
                    json!({
                        "lines": lines.len(),
                        "incidences": inc,
                        "right_triangles": triangles,
                        "right_triangle_decomposition": decomposition,
                        "warnings": warnings,
                        "size": pts.len(),
                    })
                }
                d => return Err(format!("incidence needs a 2- or 3-dimensional set, got {d}")),
            };
            ("incidence", payload)
        }
        Command::Verify { bound, p, d, seed, n } => {
            check_cap(*p, *d, cli.size_cap)?;
            params.insert("bound".into(), json!(bound));
            params.insert("p".into(), json!(p));
            params.insert("d".into(), json!(d));
            params.insert("seed".into(), json!(seed));
            params.insert("n".into(), json!(n));
            let summary = run_verify_suite(bound, *p, *d, *seed, *n).map_err(|e| e.to_string())?;
            if !summary.exact_failures.is_empty() {
                exit = ExitCode::from(2);
            }
            csv = Some(records_csv(&summary.records));
            ("verify", serde_json::to_value(&summary).unwrap())
        }
        Command::Sharpness { d, q, primes } => {
            params.insert("d".into(), json!(d));
            params.insert("q".into(), json!(q));
            params.insert("primes".into(), json!(primes));
            let rows = sharpness_sweep(*d, q, primes).map_err(|e| e.to_string())?;
            let mut table = String::from("p,q,ratio\n");
            for r in &rows {
                table.push_str(&format!("{},{},{}\n", r.p, fmt_sig(r.q), fmt_sig(r.ratio)));
            }
            csv = Some(table);
            ("sharpness", json!({ "rows": rows }))
        }
        Command::LowerBound { p } => {
            check_cap(*p, 3, cli.size_cap)?;
            params.insert("p".into(), json!(p));
            let ctx = PrimeContext::new(*p).map_err(|e| e.to_string())?;
            let report = lower_bound_construction(&ctx).map_err(|e| e.to_string())?;
            if report.min_slice_rectangles < report.n_fourth {
                exit = ExitCode::from(2);
            }
            ("lower-bound", serde_json::to_value(&report).unwrap())
        }
        Command::Extremize { p, d, q, budget, seed } => {
            check_cap(*p, *d, cli.size_cap)?;
            params.insert("p".into(), json!(p));
            params.insert("d".into(), json!(d));
            params.insert("q".into(), json!(q));
            params.insert("budget".into(), json!(budget));
            params.insert("seed".into(), json!(seed));
            let ctx = PrimeContext::new(*p).map_err(|e| e.to_string())?;
            let result = verifier::extremizer_search(&ctx, *d, *q, *budget, *seed)
                .map_err(|e| e.to_string())?;
            ("extremize", serde_json::to_value(&result).unwrap())
        }
        Command::Transform { set, extension } => {
            let (pts, warnings, digest) = load_set(set)?;
            params.insert("p".into(), json!(set.p));
            params.insert("extension".into(), json!(extension));
            digests.insert(set.set.display().to_string(), digest);
            let ctx = PrimeContext::new(set.p).map_err(|e| e.to_string())?;
            let out = if *extension {
                check_cap(set.p, pts.dim() + 1, cli.size_cap)?;
                let f = spectral::ParaboloidFunction::indicator_of_base(&pts)
                    .map_err(|e| e.to_string())?;
                spectral::extension(&ctx, &f)
            } else {
                check_cap(set.p, pts.dim(), cli.size_cap)?;
                let g = spectral::SpatialFunction::indicator(&pts).map_err(|e| e.to_string())?;
                spectral::fourier_transform(&ctx, &g)
            };
            let mut text = Vec::new();
            fio::write_spatial_function(&mut text, &out).map_err(|e| e.to_string())?;
            (
                "transform",
                json!({
                    "d": out.d(),
                    "support": out.support_size(),
                    "values": String::from_utf8(text).unwrap(),
                    "warnings": warnings,
                }),
            )
        }
    };

    let record = RunRecord {
        command: name.to_string(),
        params,
        input_digests: digests,
        payload,
        wall_ms: start.elapsed().as_millis() as u64,
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let body = if cli.format == "csv" {
        csv.unwrap_or_else(|| serde_json::to_string_pretty(&record).unwrap())
    } else {
        serde_json::to_string_pretty(&record).unwrap()
    };
    match &cli.out {
        Some(path) => {
            let mut f =
                std::fs::File::create(path).map_err(|e| format!("{}: {e}", path.display()))?;
            writeln!(f, "{body}").map_err(|e| e.to_string())?;
        }
        None => println!("{body}"),
    }
    Ok(exit)
}

/// 12 significant digits.
fn fmt_sig(x: f64) -> String {
    format!("{x:.11e}")
}

fn records_csv(records: &[verifier::BoundCheckRecord]) -> String {
    let mut out = String::from("name,generator,p,d,size,seed,lhs,rhs_total,fitted_c\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.name,
            r.instance.generator,
            r.instance.p,
            r.instance.d,
            r.instance.size,
            r.instance.seed,
            fmt_sig(r.lhs),
            fmt_sig(r.rhs_total()),
            fmt_sig(r.fitted_c),
        ));
    }
    out
}
