//! `courant`: Courant-sharp eigenvalue bounds and their numerical checks.

mod svg;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use courant_core::bounds::{bound_report, remainder_upper_bound, EpsRoute};
use courant_core::constants::pleijel_constants;
use courant_core::domain::Domain;
use courant_core::fractals::{
    build_cube_fractal, build_snowflake, cube_fractal_count_bound, cube_fractal_stats, snowflake_count_bound,
    snowflake_dimension, snowflake_epsilon_lower,
};
use courant_core::geometry::{epsilon_omega, mu_curve, BoundaryLayer, DistanceField, RasterDomain};
use courant_core::golden::{self, Check};
use courant_core::io::{domain_to_json, parse_domain, read_domain, round_sig, to_json_string, DomainFile};
use courant_core::spectral::{
    courant_sharp_scan, label_sign_components, solve_dirichlet_spectrum, ScanOptions, SolverOptions,
};
use courant_core::Error;

#[derive(Parser)]
#[command(name = "courant", version, about = "Upper bounds on Courant-sharp Dirichlet eigenvalues")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Unit-ball volume, first ball eigenvalue and Pleijel constant.
    Constants {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Boundary-layer measure sampled on [0, eps-max], as CSV.
    Mu {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long)]
        eps_max: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Critical width of a domain.
    Epsilon {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Courant-sharp bounds for a domain.
    Bounds {
        #[command(flatten)]
        domain: DomainArgs,
        /// Use the closed-form width bound instead of measuring the geometry.
        #[arg(long)]
        analytic: bool,
        #[arg(long)]
        paper_check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weyl remainder and its upper bound at one eigenvalue level.
    Remainder {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The fractal examples.
    Fractal {
        #[command(subcommand)]
        which: FractalCommand,
    },
    /// Lowest Dirichlet eigenpairs of a planar domain.
    Eigen {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Eigenvector file; defaults to the output path with extension `f64`.
        #[arg(long)]
        vectors: Option<PathBuf>,
    },
    /// Nodal-domain scan and Courant-sharp detection.
    Verify {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, default_value_t = 15)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        paper_check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plots.
    Plot {
        #[command(subcommand)]
        which: PlotCommand,
    },
}

#[derive(Args)]
struct DomainArgs {
    /// Domain JSON file.
    #[arg(long)]
    domain: PathBuf,
    /// Grid spacing for domains that need rasterising.
    #[arg(long)]
    h: Option<f64>,
}

#[derive(Subcommand)]
enum FractalCommand {
    /// The square snowflake.
    Snowflake {
        #[arg(long, default_value_t = 4)]
        generations: u32,
        /// Write a cell-exact raster with this spacing instead of the summary.
        #[arg(long)]
        raster: Option<f64>,
        #[arg(long)]
        paper_check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The cube fractal with ratio `s`.
    Cubes {
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 2)]
        generations: u32,
        #[arg(long)]
        raster: Option<f64>,
        #[arg(long)]
        paper_check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PlotCommand {
    /// Sign pattern of one eigenvector from an `eigen` run.
    Nodal {
        #[arg(long)]
        spectrum: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Numeric(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numeric() {
            Failure::Numeric(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Writes `text` to `out`, or to stdout when there is none, then prints the
/// summary (to stdout after a file write, otherwise to stderr).
fn emit(out: Option<&Path>, text: &str, summary: &str) -> Outcome {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            println!("{summary}");
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn emit_json(out: Option<&Path>, value: &impl Serialize, summary: &str) -> Outcome {
    emit(out, &to_json_string(value)?, summary)
}

fn load(args: &DomainArgs) -> Result<DomainFile, Failure> {
    let mut file = read_domain(&args.domain)
        .map_err(|e| usage(format!("domain {}: {e}", args.domain.display())))?;
    if let Some(h) = args.h {
        file.h = Some(h);
    }
    Ok(file)
}

/// The raster to compute on: raster files as they are, everything else at
/// the requested spacing.
fn raster_of(file: &DomainFile) -> Result<RasterDomain, Failure> {
    Ok(file.domain.to_raster(file.h)?)
}

/// Exact geometry where available, otherwise a raster at `h`.
fn layer_of(file: &DomainFile, force_raster: bool) -> Result<Box<dyn BoundaryLayer>, Failure> {
    match file.domain.boundary_layer() {
        Some(layer) if !force_raster || matches!(file.domain, Domain::Raster(_)) => Ok(layer),
        _ => Ok(Box::new(DistanceField::compute(&raster_of(file)?))),
    }
}

fn report_checks(checks: &[Check]) -> Outcome {
    for c in checks {
        println!("[{}] criterion {:>2} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.criterion, c.name, c.detail);
    }
    match checks.iter().filter(|c| !c.passed).count() {
        0 => Ok(()),
        n => Err(Failure::Check(format!("{n} paper check(s) failed"))),
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Constants { dim, out } => {
            let c = pleijel_constants(dim)?;
            emit_json(out.as_deref(), &c, &format!("gamma_{dim} = {}", round_sig(c.gamma_m)))
        }
        Command::Mu { domain, eps_max, steps, out } => {
            let file = load(&domain)?;
            let layer = layer_of(&file, domain.h.is_some())?;
            let curve = mu_curve(layer.as_ref(), eps_max, steps)?;
            let mut csv = String::from("eps,mu\n");
            for (e, m) in curve.eps_samples.iter().zip(&curve.mu_values) {
                csv.push_str(&format!("{},{}\n", round_sig(*e), round_sig(*m)));
            }
            emit(out.as_deref(), &csv, &format!("mu sampled at {} widths, |domain| = {}", steps + 1, round_sig(curve.total_measure)))
        }
        Command::Epsilon { domain, out } => {
            let file = load(&domain)?;
            let c = pleijel_constants(file.domain.dim())?;
            let layer = match file.domain.boundary_layer() {
                None if file.h.is_none() => {
                    return Err(usage(format!("a {} domain needs --h to be measured", file.domain.kind())))
                }
                _ => layer_of(&file, domain.h.is_some())?,
            };
            let eps = epsilon_omega(layer.as_ref(), &c)?;
            emit_json(out.as_deref(), &eps, &format!("eps = {}", round_sig(eps.value)))
        }
        Command::Bounds { domain, analytic, paper_check, out } => {
            let file = load(&domain)?;
            let c = pleijel_constants(file.domain.dim())?;
            // an explicit --h measures the rasterised domain instead of the exact one
            let target = match domain.h {
                Some(_) if !analytic && !matches!(file.domain, Domain::Raster(_)) => Domain::Raster(raster_of(&file)?),
                _ => file.domain.clone(),
            };
            let route = if analytic { EpsRoute::Analytic } else { EpsRoute::Geometric };
            let report = bound_report(&target, &c, route)?;
            emit_json(
                out.as_deref(),
                &report,
                &format!("lambda_star = {:e}, count_star = {:e}", round_sig(report.lambda_star), round_sig(report.count_star)),
            )?;
            if paper_check {
                report_checks(&golden::analytic_checks()?)?;
            }
            Ok(())
        }
        Command::Remainder { domain, lambda, eps, out } => {
            let file = load(&domain)?;
            let c = pleijel_constants(file.domain.dim())?;
            let layer = match file.domain.boundary_layer() {
                Some(layer) => layer,
                None => Box::new(DistanceField::compute(&raster_of(&file)?)),
            };
            let exact = file.domain.exact_spectrum();
            let report = remainder_upper_bound(layer.as_ref(), &c, lambda, eps, exact.as_ref())?;
            let summary = match report.remainder {
                Some(r) => format!("remainder = {} <= {}", round_sig(r), round_sig(report.upper_bound)),
                None => format!("remainder bound = {}", round_sig(report.upper_bound)),
            };
            emit_json(out.as_deref(), &report, &summary)
        }
        Command::Fractal { which } => fractal(which),
        Command::Eigen { domain, k, seed, out, vectors } => {
            let file = load(&domain)?;
            let raster = raster_of(&file)?;
            let spectrum = solve_dirichlet_spectrum(&raster, k, &SolverOptions { seed, ..Default::default() })?;
            let vectors = vectors.unwrap_or_else(|| out.with_extension("f64"));
            let mut bytes = Vec::with_capacity(8 * k * raster.len());
            for v in &spectrum.eigenvectors {
                for x in v {
                    bytes.extend_from_slice(&x.to_le_bytes());
                }
            }
            fs::write(&vectors, bytes).map_err(|e| usage(format!("cannot write {}: {e}", vectors.display())))?;
            let name = vectors.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let mut shape = vec![k];
            shape.extend_from_slice(raster.shape());
            let doc = json!({
                "h": spectrum.h,
                "seed": seed,
                "eigenvalues": spectrum.eigenvalues,
                "residuals": spectrum.residuals,
                "cluster_ids": spectrum.cluster_ids,
                "vectors": {"file": name, "dtype": "float64 little-endian", "order": "row-major", "shape": shape},
                "domain": domain_to_json(&Domain::Raster(raster.clone()), None),
            });
            emit_json(Some(&out), &doc, &format!("{k} eigenpairs, lambda_1 = {}", round_sig(spectrum.eigenvalues[0])))
        }
        Command::Verify { domain, k, seed, paper_check, out } => {
            let file = load(&domain)?;
            let raster = raster_of(&file)?;
            let spectrum = solve_dirichlet_spectrum(&raster, k, &SolverOptions { seed, ..Default::default() })?;
            let c = pleijel_constants(2)?;
            let report = bound_report(&Domain::Raster(raster), &c, EpsRoute::Geometric)?;
            let scan = courant_sharp_scan(&spectrum, Some(&report), &ScanOptions { seed, ..Default::default() })?;
            let summary = format!("courant_sharp = {:?}", scan.sharp_set);
            emit_json(out.as_deref(), &json!({"bounds": report, "scan": scan}), &summary)?;
            if !scan.courant_violations.is_empty() {
                return Err(Failure::Numeric(format!("Courant count exceeded at {:?}", scan.courant_violations)));
            }
            if paper_check {
                report_checks(&golden::spectral_checks()?)?;
            }
            Ok(())
        }
        Command::Plot { which: PlotCommand::Nodal { spectrum, n, out } } => plot_nodal(&spectrum, n, &out),
    }
}

fn fractal(which: FractalCommand) -> Outcome {
    match which {
        FractalCommand::Snowflake { generations, raster, paper_check, out } => {
            let spec = build_snowflake(generations)?;
            match raster {
                Some(h) => {
                    let domain = Domain::Raster(spec.rasterize(spec.refine_for(h)?)?);
                    let text = to_json_string(&domain_to_json(&domain, None))?;
                    emit(out.as_deref(), &text, &format!("snowflake raster, |K_{generations}| = {}", round_sig(domain.volume()?)))?;
                }
                None => {
                    let bound = snowflake_count_bound()?;
                    let doc = json!({
                        "generations": generations,
                        "squares": spec.squares.len(),
                        "truncated_measure": spec.truncated_measure(),
                        "measure": 2.0,
                        "boundary_dimension": snowflake_dimension(),
                        "eps_lower": snowflake_epsilon_lower(),
                        "count_bound": bound.count,
                    });
                    emit_json(out.as_deref(), &doc, &format!("count_bound = {:e}", round_sig(bound.count)))?;
                }
            }
            if paper_check {
                let mut checks = vec![golden::snowflake_width(), golden::snowflake_count()];
                checks.push(golden::snowflake_measure(generations.min(6))?);
                report_checks(&checks)?;
            }
            Ok(())
        }
        FractalCommand::Cubes { s, generations, raster, paper_check, out } => {
            let spec = build_cube_fractal(s, generations)?;
            match raster {
                Some(h) => {
                    let domain = Domain::Raster(spec.rasterize(h)?);
                    let text = to_json_string(&domain_to_json(&domain, None))?;
                    emit(out.as_deref(), &text, &format!("cube fractal raster, measure {}", round_sig(domain.volume()?)))?;
                }
                None => {
                    let stats = cube_fractal_stats(s)?;
                    let bound = cube_fractal_count_bound(s)?;
                    let doc = json!({
                        "s": s,
                        "generations": generations,
                        "cubes": spec.cubes.len(),
                        "truncated_measure": spec.truncated_measure(),
                        "stats": stats,
                        "bound": bound,
                    });
                    emit_json(out.as_deref(), &doc, &format!("count_bound = {:e}", round_sig(bound.count)))?;
                }
            }
            if paper_check {
                report_checks(&[golden::cube_fractal_uniform()])?;
            }
            Ok(())
        }
    }
}

fn plot_nodal(spectrum: &Path, n: usize, out: &Path) -> Outcome {
    let text = fs::read_to_string(spectrum).map_err(|e| usage(format!("cannot read {}: {e}", spectrum.display())))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| usage(format!("spectrum: {e}")))?;
    let file = parse_domain(&doc["domain"]).map_err(|e| usage(format!("spectrum domain: {e}")))?;
    let Domain::Raster(raster) = file.domain else {
        return Err(usage("spectrum domain must be a raster"));
    };
    let k = doc["eigenvalues"].as_array().map_or(0, Vec::len);
    if n == 0 || n > k {
        return Err(usage(format!("n must lie in 1..={k}, got {n}")));
    }
    let name = doc["vectors"]["file"].as_str().ok_or_else(|| usage("spectrum has no vector file"))?;
    let path = spectrum.parent().unwrap_or(Path::new(".")).join(name);
    let bytes = fs::read(&path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let len = raster.len();
    if bytes.len() != 8 * k * len {
        return Err(usage(format!("{} holds {} bytes, expected {}", path.display(), bytes.len(), 8 * k * len)));
    }
    let values: Vec<f64> = bytes[8 * (n - 1) * len..8 * n * len]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let (count, labels) = label_sign_components(&raster, &values);
    let svg = svg::sign_pattern(&raster, &values, &labels, &format!("eigenfunction {n}: {count} nodal domains"));
    emit(Some(out), &svg, &format!("n = {n}: {count} nodal domains"))
}

fn configure_threads() -> Outcome {
    let Ok(value) = std::env::var("COURANT_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| usage(format!("COURANT_THREADS must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| usage(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
