use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use nalgebra::DMatrix;
use serde::Serialize;

use buffon::dynamics::{
    affine_regular_residual, iterate_to_limit, perturb, polygon_spectrum, polygram_eigenspace,
    DirectedPolygon, IterateOptions,
};
use buffon::io::input::{load, InputSpec, LoadedInput};
use buffon::io::off::write_off;
use buffon::io::report::{summarize_spectrum, IterationSummary, RunReport, Timings};
use buffon::poly_core::skeleton;
use buffon::poly_core::steinitz::validate_complex;
use buffon::realization::{pyramid_height_ratio, realize, shape_report, Realization, RealizationSource};
use buffon::spectral::{buffon_matrix, spectrum, subdominant_space, SpectralDecomposition, DEFAULT_GROUP_TOL};
use buffon::symmetry::{automorphisms, subdominant_multiplicity_check, DEFAULT_BUDGET};
use buffon::{Error, Result};

#[derive(Parser)]
#[command(name = "buffon", version, about = "Buffon transformation of polygons and polyhedra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reference coordinates of a seed, optionally after Conway operators, as OFF.
    Generate {
        seed: String,
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        conway: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grouped spectrum of the Buffon operator.
    Spectrum {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_GROUP_TOL)]
        tol: f64,
        /// Write a JSON run report here.
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Realize one eigenvalue group (1 = the eigenvalue 1) and report shape verdicts.
    Realize {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 2)]
        group: usize,
        #[arg(long, default_value_t = DEFAULT_GROUP_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Iterate the transformation on perturbed coordinates until the shape settles.
    Iterate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 100_000)]
        steps: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        #[arg(long, default_value_t = 0.1)]
        perturb: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Steinitz, symmetry, spectral and shape verdicts for a mesh.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_GROUP_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Midpoint map on an n-gon: spectrum, polygram eigenspaces, or iteration.
    Polygon {
        n: usize,
        #[arg(long, conflicts_with_all = ["polygram", "iterate"])]
        spectrum: bool,
        #[arg(long, conflicts_with = "iterate")]
        polygram: Option<usize>,
        #[arg(long)]
        iterate: bool,
        #[arg(long, default_value_t = 100_000)]
        steps: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
    },
}

#[derive(Args)]
struct InputArgs {
    /// OFF mesh file.
    #[arg(required_unless_present = "seed", conflicts_with = "seed")]
    input: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Conway operators applied to the seed, e.g. `dual,kis`.
    #[arg(long, num_args = 1.., value_delimiter = ',', requires = "seed")]
    conway: Vec<String>,
}

impl InputArgs {
    fn load(&self) -> Result<LoadedInput> {
        let spec = match (&self.seed, &self.input) {
            (Some(name), _) => InputSpec::Seed {
                name: name.clone(),
                conway: self.conway.clone(),
            },
            (None, Some(path)) => InputSpec::File { path: path.clone() },
            (None, None) => return Err(Error::InvalidArgument("no input given".into())),
        };
        load(&spec)
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Include wall-clock timings in reports (breaks byte-identical output).
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let payload = serde_json::json!({
                "error": e.kind(),
                "message": e.to_string(),
                "exit_code": e.exit_code(),
            });
            eprintln!("{payload}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn emit(text: &str, path: Option<&PathBuf>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            out(text);
            Ok(())
        }
    }
}

// A closed pipe on stdout is not an error for this tool.
fn out(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn finish(mut report: RunReport, start: Instant, common: &CommonArgs, path: Option<&PathBuf>) -> Result<()> {
    if common.timings {
        report.timings = Some(Timings {
            total_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    emit(&(report.to_json() + "\n"), path)
}

fn decompose(r: &Realization, tol: f64) -> Result<SpectralDecomposition> {
    spectrum(&buffon_matrix(&skeleton(&r.complex)), tol)
}

fn run(command: Command) -> Result<()> {
    let start = Instant::now();
    match command {
        Command::Generate { seed, conway, out } => {
            let loaded = load(&InputSpec::Seed { name: seed, conway })?;
            emit(&write_off(&loaded.realization)?, out.as_ref())
        }
        Command::Spectrum { input, tol, json, common } => {
            let loaded = input.load()?;
            let decomp = decompose(&loaded.realization, tol)?;
            let groups = summarize_spectrum(&decomp);
            let mut table = String::from("# group eigenvalue exact multiplicity\n");
            for (k, g) in groups.iter().enumerate() {
                table += &format!(
                    "{} {} {} {}\n",
                    k + 1,
                    g.eigenvalue,
                    g.exact.as_deref().unwrap_or("-"),
                    g.multiplicity
                );
            }
            out(&table);
            if let Some(path) = json {
                let mut report = RunReport::new(loaded.descriptor);
                report.subdominant_dimension = Some(subdominant_space(&decomp)?.multiplicity);
                report.spectrum = Some(groups);
                finish(report, start, &common, Some(&path))?;
            }
            Ok(())
        }
        Command::Realize { input, group, tol, out, report: report_path, common } => {
            let loaded = input.load()?;
            let decomp = decompose(&loaded.realization, tol)?;
            if group == 0 || group > decomp.groups.len() {
                return Err(Error::InvalidArgument(format!(
                    "group {group} out of range 1..={}",
                    decomp.groups.len()
                )));
            }
            let r = realize(&decomp.groups[group - 1], group, &loaded.realization.complex)?;
            let identity: Vec<usize> = (0..r.coords.nrows()).collect();
            let reference = loaded
                .is_reference
                .then_some((&loaded.realization.coords, identity.as_slice()));
            let shape = shape_report(&r, reference)?;
            let mut report = RunReport::new(loaded.descriptor);
            report.spectrum = Some(summarize_spectrum(&decomp));
            report.subdominant_dimension = Some(subdominant_space(&decomp)?.multiplicity);
            report.realized_group = Some(group);
            if r.dimension() == 3 && r.complex.labels().is_some() {
                report.pyramid_ratios = pyramid_height_ratio(&r).ok();
            }
            report.warnings.extend(shape.notes.iter().cloned());
            report.shape = Some(shape);
            if let Some(path) = out {
                emit(&write_off(&r)?, Some(&path))?;
            }
            finish(report, start, &common, report_path.as_ref())
        }
        Command::Iterate { input, steps, tol, rng_seed, perturb: eps, out, report: report_path, common } => {
            let mut loaded = input.load()?;
            loaded.descriptor.rng_seed = Some(rng_seed);
            let graph = skeleton(&loaded.realization.complex);
            let start_coords = perturb(&loaded.realization.coords, eps, rng_seed);
            let opts = IterateOptions {
                max_steps: steps,
                shape_tol: tol,
                ..Default::default()
            };
            let outcome = iterate_to_limit(&start_coords, &graph, &opts)?;
            let limit = Realization::new(
                outcome.limit.coords.clone(),
                RealizationSource::Iteration {
                    steps: outcome.steps_used,
                    rng_seed: Some(rng_seed),
                },
                loaded.realization.complex.clone(),
            )?;
            let mut report = RunReport::new(loaded.descriptor);
            report.iteration = Some(IterationSummary::from(&outcome.limit.diagnostics));
            let shape = shape_report(&limit, None)?;
            report.warnings.extend(shape.notes.iter().cloned());
            report.shape = Some(shape);
            if let Some(path) = out {
                emit(&write_off(&limit)?, Some(&path))?;
            }
            finish(report, start, &common, report_path.as_ref())
        }
        Command::Check { input, tol, budget, report: report_path, common } => {
            let loaded = input.load()?;
            let r = &loaded.realization;
            let graph = skeleton(&r.complex);
            let mut report = RunReport::new(loaded.descriptor.clone());
            let steinitz = validate_complex(&r.complex);
            if !steinitz.is_polyhedral() {
                report.warnings.push("graph fails the Steinitz conditions".into());
            }
            report.steinitz = Some(steinitz);
            report.automorphism_order = Some(automorphisms(&graph, budget)?.order);
            let decomp = decompose(r, tol)?;
            report.subdominant_dimension = Some(subdominant_space(&decomp)?.multiplicity);
            report.spectrum = Some(summarize_spectrum(&decomp));
            let verdict = subdominant_multiplicity_check(&r.complex)?;
            if let Some(w) = &verdict.warning {
                report.warnings.push(w.clone());
            }
            report.subdominant_check = Some(verdict);
            let shape = shape_report(r, None)?;
            report.warnings.extend(shape.notes.iter().cloned());
            report.shape = Some(shape);
            finish(report, start, &common, report_path.as_ref())
        }
        Command::Polygon { n, spectrum: _, polygram, iterate, steps, tol, rng_seed } => {
            polygon_command(n, polygram, iterate, steps, tol, rng_seed)
        }
    }
}

#[derive(Serialize)]
struct PolygonEigenvalue {
    j: usize,
    re: f64,
    im: f64,
    modulus: f64,
}

#[derive(Serialize)]
struct PolygonIteration {
    n: usize,
    rng_seed: u64,
    steps_used: usize,
    collapse_dim: usize,
    affine_regular_residual: f64,
    coords: Vec<[f64; 2]>,
}

fn polygon_command(n: usize, polygram: Option<usize>, iterate: bool, steps: usize, tol: f64, rng_seed: u64) -> Result<()> {
    let value = if let Some(k) = polygram {
        let (c, s) = polygram_eigenspace(n, k)?;
        let lambda = &polygon_spectrum(n)?.eigenvalues[k];
        serde_json::json!({
            "n": n,
            "k": k,
            "eigenvalue": { "re": lambda.re, "im": lambda.im },
            "cos": c.as_slice(),
            "sin": s.as_slice(),
        })
    } else if iterate {
        let map = DirectedPolygon::new(n)?;
        let start = perturb(&DMatrix::zeros(n, 2), 1.0, rng_seed);
        let opts = IterateOptions {
            max_steps: steps,
            shape_tol: tol,
            ..Default::default()
        };
        let out = iterate_to_limit(&start, &map, &opts)?;
        let x = &out.limit.coords;
        serde_json::to_value(PolygonIteration {
            n,
            rng_seed,
            steps_used: out.steps_used,
            collapse_dim: out.collapse_dim,
            affine_regular_residual: affine_regular_residual(x),
            coords: (0..n).map(|i| [x[(i, 0)], x[(i, 1)]]).collect(),
        })
        .expect("serializable")
    } else {
        let s = polygon_spectrum(n)?;
        let eigenvalues: Vec<PolygonEigenvalue> = s
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(j, z)| PolygonEigenvalue {
                j,
                re: z.re,
                im: z.im,
                modulus: z.norm(),
            })
            .collect();
        serde_json::json!({
            "n": n,
            "eigenvalues": eigenvalues,
            "by_modulus": s.by_modulus,
            "subdominant": [s.subdominant.0, s.subdominant.1],
        })
    };
    out(&(serde_json::to_string_pretty(&value).expect("serializable") + "\n"));
    Ok(())
}

