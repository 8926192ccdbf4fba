//! Command-line front end: model I/O, closed-form bounds, 1-D eigensolves,
//! Hardy checks, and pointwise matrix-inequality fuzzing, all emitting one
//! machine-readable report envelope per invocation.
//!
//! Exit codes: 0 pass/success, 1 failed inequality, 2 usage error,
//! 3 inconclusive (mesh-convergence flag or numeric trouble), 4 I/O error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use conespec::bochner::{find_hypothesis_violation, fuzz_inequalities};
use conespec::eigen::{spindle_lambda1, SpectralGapNumeric, MESH_CONVERGENCE_RTOL};
use conespec::error::Error;
use conespec::estimates::{
    admissibility, alpha_bar_s, gap_bound_hardy, gap_bound_multi, gap_bound_single,
    taming_thresholds, verify_chain_with_ts, CapParams, ChainLink, GapBoundReport,
    SpectralReport, Verdict,
};
use conespec::hardy::{
    best_constant_estimate, combine_weights, verify_hardy, CompositeHardyWeight, HardyWeight,
};
use conespec::modelfile::{load_model, save_model, serialize_model};
use conespec::models::{
    catalog, grushin_admissibility, grushin_bound, ricci_bound_cone, ricci_bound_warped,
    weighted_space_bound, Computable, ConicalManifoldModel, GrushinMeasure, SectionSpectrum,
};
use conespec::radial::Grid;
use conespec::report::{Envelope, OutputFormat};
use conespec::scalar::{comparison_radius, cos_ell, sin_ell};

#[derive(Parser)]
#[command(
    name = "conespec",
    version,
    about = "Spectral-gap, Hardy, and curvature machinery for cones and spindles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format: json, csv, or table.
    #[arg(long, global = true, default_value = "json")]
    format: String,
    /// Write the report to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List the model catalog, inspect one entry, or validate a model file.
    Models {
        /// Show one catalog entry in full.
        #[arg(long)]
        name: Option<String>,
        /// Write the selected entry (--name) as a model file.
        #[arg(long, requires = "name")]
        save: Option<PathBuf>,
        /// Validate and echo a model file.
        #[arg(long, conflicts_with = "name")]
        file: Option<PathBuf>,
    },
    /// Ricci lower bounds: along a cone axis, or the Grushin/weighted
    /// half-space closed forms.
    Ricci {
        /// Catalog name or model file path.
        #[arg(long)]
        model: Option<String>,
        /// Sample count along the axis.
        #[arg(long, default_value_t = 64)]
        cells: usize,
        /// Grushin-plane mode (needs --n, --j, --alpha, --y).
        #[arg(long, conflicts_with_all = ["model", "weighted"])]
        grushin: bool,
        /// Weighted-space mode (needs --n, --alpha, --x).
        #[arg(long, conflicts_with = "model")]
        weighted: bool,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        j: Option<u32>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        y: Option<f64>,
        #[arg(long)]
        x: Option<f64>,
        /// riemannian or lebesgue (Grushin mode).
        #[arg(long, default_value = "riemannian")]
        measure: String,
    },
    /// Verify the Hardy inequality −Δ ≥ ϑ on a model, or estimate the best
    /// Euclidean constant.
    HardyCheck {
        /// Catalog name or model file path.
        #[arg(long)]
        model: Option<String>,
        /// Clamp curvature L (defaults to the cap minimum ℓ ∨ (π/2ρ)²).
        #[arg(long)]
        clamp: Option<f64>,
        /// Cross-section modes to check (0..=modes).
        #[arg(long, default_value_t = 5)]
        modes: usize,
        #[arg(long, default_value_t = 3000)]
        cells: usize,
        /// Assert the model's ambient dimension.
        #[arg(long)]
        n: Option<u32>,
        /// Assert the model's sphere-section radius.
        #[arg(long = "R")]
        section_radius: Option<f64>,
        /// Estimate the best constant of ϑ = C/r² instead (needs --n).
        #[arg(long, conflicts_with_all = ["model", "clamp", "modes"])]
        best_constant: bool,
        /// Curvature for the best-constant quotient space.
        #[arg(long, default_value_t = 0.0)]
        ell: f64,
        /// First-cell width of the graded best-constant grid.
        #[arg(long, default_value_t = 1e-21)]
        depth: f64,
    },
    /// Numeric spectral gap of a computable model.
    Eig {
        /// Catalog name or model file path.
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 2000)]
        cells: usize,
        /// Solve at unit curvature and map back (conditioning).
        #[arg(long)]
        rescale: bool,
    },
    /// Closed-form gap bounds: single cap, multi-cap, or the Hardy route.
    GapBound {
        #[arg(long)]
        n: u32,
        /// Bulk Ricci lower bound K.
        #[arg(long = "K")]
        big_k: f64,
        #[arg(long)]
        kappa: Option<f64>,
        #[arg(long)]
        ell: Option<f64>,
        /// Cap radius, or `auto` for the conjugate radius R_ℓ.
        #[arg(long)]
        rho: Option<String>,
        /// Repeatable cap triple `ell,rho,kappa` (multi-cap bound).
        #[arg(long = "cap", conflicts_with_all = ["kappa", "ell", "rho"])]
        caps: Vec<String>,
        /// Comma-separated Hardy coefficients s_i.
        #[arg(long, conflicts_with_all = ["kappa", "ell", "rho", "caps"])]
        hardy_s: Option<String>,
        /// Weight supports pairwise separated: use sup s_i instead of Σ s_i.
        #[arg(long, requires = "hardy_s")]
        separated: bool,
    },
    /// Full verification chain: numeric gap vs Schrödinger grounds vs bound.
    Verify {
        /// Catalog name or model file path.
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 1200)]
        cells: usize,
        /// Assert the model's ambient dimension.
        #[arg(long)]
        n: Option<u32>,
        /// Assert the model's cap curvature.
        #[arg(long)]
        ell: Option<f64>,
        /// Extra diagnostic transform strengths t.
        #[arg(long = "t")]
        ts: Vec<f64>,
        /// Solve at unit curvature and map back (conditioning).
        #[arg(long)]
        rescale: bool,
    },
    /// Fuzz the pointwise curvature-dimension inequalities.
    BochnerFuzz {
        #[arg(long, default_value_t = 100_000)]
        count: u64,
        #[arg(long, default_value_t = 6)]
        max_dim: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Skip the hypothesis-necessity search (R ⋡ kI violations).
        #[arg(long)]
        skip_violation_search: bool,
    },
    /// Taming radii and the admissibility threshold table.
    Thresholds {
        #[arg(long, default_value_t = 3)]
        n: u32,
    },
}

fn main() -> ExitCode {
    if let Ok(v) = std::env::var("CONESPEC_THREADS") {
        if let Ok(k) = v.parse::<usize>() {
            rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build_global()
                .ok();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err((msg, code)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

type Failure = (String, ExitCode);

fn fail(e: Error) -> Failure {
    let code = match &e {
        Error::Io { .. } => ExitCode::from(4),
        Error::Domain(_) | Error::Model(_) => ExitCode::from(2),
        _ => ExitCode::from(3),
    };
    (e.to_string(), code)
}

fn emit(env: &Envelope, format: &str, out: Option<&Path>) -> Result<(), Failure> {
    let format: OutputFormat = format.parse().map_err(fail)?;
    let text = env.render(format);
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| (format!("cannot write {}: {e}", path.display()), ExitCode::from(4))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Resolve `--model`: catalog name first, then a file path.
fn resolve_model(arg: &str) -> Result<(ConicalManifoldModel, String), Failure> {
    for entry in catalog() {
        if entry.name == arg {
            return Ok((entry.model, arg.to_string()));
        }
    }
    let path = Path::new(arg);
    if path.exists() {
        let model = load_model(path).map_err(fail)?;
        return Ok((model, path.display().to_string()));
    }
    Err((
        format!(
            "`{arg}` is neither a catalog model ({}) nor an existing file",
            catalog()
                .iter()
                .map(|e| e.name.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        ),
        ExitCode::from(2),
    ))
}

fn section_label(model: &ConicalManifoldModel) -> String {
    model
        .caps
        .first()
        .map(|cap| match &cap.section.spectrum {
            SectionSpectrum::Sphere { radius } => format!("sphere R={radius}"),
            SectionSpectrum::Table(v) => format!("table({} modes)", v.len()),
        })
        .unwrap_or_else(|| "none".to_string())
}

#[derive(Serialize)]
struct CapSummary {
    rho: f64,
    ell: f64,
    kappa: f64,
    section: String,
}

#[derive(Serialize)]
struct ModelSummary {
    name: String,
    n: u32,
    bulk_k: f64,
    computable: String,
    closed_spindle: bool,
    caps: Vec<CapSummary>,
    notes: Vec<String>,
}

fn summarize(name: &str, model: &ConicalManifoldModel, notes: &[String]) -> ModelSummary {
    ModelSummary {
        name: name.to_string(),
        n: model.n,
        bulk_k: model.bulk_k,
        computable: match &model.computable {
            Computable::Spindle { .. } => "spindle".to_string(),
            Computable::Abstract => "abstract".to_string(),
        },
        closed_spindle: model.is_closed_spindle(),
        caps: model
            .caps
            .iter()
            .map(|cap| CapSummary {
                rho: cap.rho,
                ell: cap.ell,
                kappa: cap.section.kappa,
                section: match &cap.section.spectrum {
                    SectionSpectrum::Sphere { radius } => format!("sphere R={radius}"),
                    SectionSpectrum::Table(v) => format!("table({} modes)", v.len()),
                },
            })
            .collect(),
        notes: notes.to_vec(),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Models { name, save, file } => {
            let mut env = Envelope::new("models");
            if let Some(path) = &file {
                env.arg("file", path.display());
                let model = load_model(path).map_err(fail)?;
                env.set_results(&summarize(&path.display().to_string(), &model, &[]))
                    .map_err(fail)?;
                env.note("model file validated");
            } else if let Some(name) = &name {
                env.arg("name", name);
                let entry = catalog()
                    .into_iter()
                    .find(|e| e.name == *name)
                    .ok_or_else(|| {
                        (
                            format!("no catalog model named `{name}`"),
                            ExitCode::from(2),
                        )
                    })?;
                if let Some(path) = &save {
                    save_model(path, &entry.model).map_err(fail)?;
                    env.note(format!("wrote {}", path.display()));
                }
                #[derive(Serialize)]
                struct Full {
                    summary: ModelSummary,
                    file_text: String,
                }
                env.set_results(&Full {
                    summary: summarize(&entry.name, &entry.model, &entry.notes),
                    file_text: serialize_model(&entry.model).map_err(fail)?,
                })
                .map_err(fail)?;
            } else {
                let list: Vec<ModelSummary> = catalog()
                    .iter()
                    .map(|e| summarize(&e.name, &e.model, &e.notes))
                    .collect();
                env.set_results(&list).map_err(fail)?;
            }
            emit(&env, &cli.format, cli.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Ricci {
            model,
            cells,
            grushin,
            weighted,
            n,
            j,
            alpha,
            y,
            x,
            measure,
        } => {
            let mut env = Envelope::new("ricci");
            if grushin {
                let (n, j, alpha, y) = match (n, j, alpha, y) {
                    (Some(n), Some(j), Some(a), Some(y)) => (n, j, a, y),
                    _ => {
                        return Err((
                            "--grushin needs --n, --j, --alpha, --y".to_string(),
                            ExitCode::from(2),
                        ))
                    }
                };
                env.arg("n", n).arg("j", j).arg("alpha", alpha).arg("y", y);
                env.arg("measure", &measure);
                let meas = match measure.as_str() {
                    "riemannian" => GrushinMeasure::Riemannian,
                    "lebesgue" => GrushinMeasure::Lebesgue,
                    other => {
                        return Err((
                            format!("unknown measure `{other}`"),
                            ExitCode::from(2),
                        ))
                    }
                };
                #[derive(Serialize)]
                struct GrushinOut {
                    bound: f64,
                    admissibility: conespec::models::GrushinAdmissibility,
                }
                let out = GrushinOut {
                    bound: grushin_bound(n, j, alpha, y, meas).map_err(fail)?,
                    admissibility: grushin_admissibility(n, j, alpha).map_err(fail)?,
                };
                if out.admissibility.discrepancy {
                    env.note(
                        "the two admissibility thresholds disagree; both are reported, none is chosen",
                    );
                }
                env.set_results(&out).map_err(fail)?;
            } else if weighted {
                let (n, alpha, x) = match (n, alpha, x) {
                    (Some(n), Some(a), Some(x)) => (n, a, x),
                    _ => {
                        return Err((
                            "--weighted needs --n, --alpha, --x".to_string(),
                            ExitCode::from(2),
                        ))
                    }
                };
                env.arg("n", n).arg("alpha", alpha).arg("x", x);
                #[derive(Serialize)]
                struct WeightedOut {
                    bound: f64,
                }
                env.set_results(&WeightedOut {
                    bound: weighted_space_bound(n, alpha, x).map_err(fail)?,
                })
                .map_err(fail)?;
            } else {
                let model_arg = model.ok_or_else(|| {
                    (
                        "ricci needs --model (or --grushin / --weighted)".to_string(),
                        ExitCode::from(2),
                    )
                })?;
                let (model, label) = resolve_model(&model_arg)?;
                env.arg("model", &label).arg("cells", cells);
                let view = model.spindle_view().map_err(fail)?;
                let kappa = view.section.kappa;
                let grid = Grid::uniform(0.0, view.total_length, cells.max(8)).map_err(fail)?;
                #[derive(Serialize)]
                struct Row {
                    r: f64,
                    bound: f64,
                }
                let mut rows = Vec::with_capacity(grid.cells());
                let mut min_bound = f64::INFINITY;
                let mut cross_check = 0.0_f64;
                for i in 0..grid.cells() {
                    let r = grid.node(i);
                    let bound = ricci_bound_cone(model.n, view.ell, kappa, r).map_err(fail)?;
                    let f = sin_ell(view.ell, r);
                    let warped = ricci_bound_warped(
                        model.n,
                        f,
                        cos_ell(view.ell, r),
                        -view.ell * f,
                        kappa,
                        r,
                    )
                    .map_err(fail)?;
                    cross_check = cross_check.max((bound - warped).abs());
                    min_bound = min_bound.min(bound);
                    rows.push(Row { r, bound });
                }
                #[derive(Serialize)]
                struct RicciOut {
                    n: u32,
                    ell: f64,
                    kappa: f64,
                    bulk_k: f64,
                    min_sampled_bound: f64,
                    warped_cross_check_max_diff: f64,
                    rows: Vec<Row>,
                }
                env.set_results(&RicciOut {
                    n: model.n,
                    ell: view.ell,
                    kappa,
                    bulk_k: model.bulk_k,
                    min_sampled_bound: min_bound,
                    warped_cross_check_max_diff: cross_check,
                    rows,
                })
                .map_err(fail)?;
            }
            emit(&env, &cli.format, cli.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::HardyCheck {
            model,
            clamp,
            modes,
            cells,
            n,
            section_radius,
            best_constant,
            ell,
            depth,
        } => {
            let mut env = Envelope::new("hardy-check");
            if best_constant {
                let n = n.ok_or_else(|| {
                    ("--best-constant needs --n".to_string(), ExitCode::from(2))
                })?;
                env.arg("n", n).arg("ell", ell).arg("cells", cells).arg("depth", depth);
                let cells = cells.max(2000);
                let grid = Grid::geometric(0.0, 1.0e3, cells, depth).map_err(fail)?;
                let constant = best_constant_estimate(n, ell, &grid).map_err(fail)?;
                let target = ((n as f64 - 2.0) / 2.0).powi(2);
                let relative_error = (constant - target) / target;
                let pass = relative_error.abs() <= 0.02 && constant >= target - 1e-9;
                #[derive(Serialize)]
                struct BestOut {
                    constant: f64,
                    target: f64,
                    relative_error: f64,
                    pass: bool,
                    grid_cells: usize,
                }
                env.set_results(&BestOut {
                    constant,
                    target,
                    relative_error,
                    pass,
                    grid_cells: cells,
                })
                .map_err(fail)?;
                env.note("discrete constant converges to the target from above");
                emit(&env, &cli.format, cli.out.as_deref())?;
                return Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) });
            }
            let model_arg = model.ok_or_else(|| {
                (
                    "hardy-check needs --model (or --best-constant)".to_string(),
                    ExitCode::from(2),
                )
            })?;
            let (model, label) = resolve_model(&model_arg)?;
            env.arg("model", &label).arg("cells", cells).arg("modes", modes);
            if let Some(n) = n {
                if n != model.n {
                    return Err((
                        format!("--n {n} does not match the model's n = {}", model.n),
                        ExitCode::from(2),
                    ));
                }
            }
            if let Some(r) = section_radius {
                for cap in &model.caps {
                    match &cap.section.spectrum {
                        SectionSpectrum::Sphere { radius }
                            if (radius - r).abs() <= 1e-12 * r.abs().max(1.0) => {}
                        _ => {
                            return Err((
                                format!(
                                    "--R {r} does not match the model's section ({})",
                                    section_label(&model)
                                ),
                                ExitCode::from(2),
                            ))
                        }
                    }
                }
            }
            let weight = cap_weight_combination(&model, clamp).map_err(fail)?;
            let view = model.spindle_view().map_err(fail)?;
            let grid = if model.caps.len() >= 2 {
                Grid::uniform(0.0, view.total_length, cells.max(64))
            } else {
                Grid::geometric(0.0, view.total_length, cells.max(64), view.total_length * 1e-12)
            }
            .map_err(fail)?;
            let verification = verify_hardy(&weight, &model, &grid, modes).map_err(fail)?;
            #[derive(Serialize)]
            struct HardyOut {
                weight: CompositeHardyWeight,
                verification: conespec::hardy::HardyVerification,
            }
            let pass = verification.pass;
            env.set_results(&HardyOut {
                weight,
                verification,
            })
            .map_err(fail)?;
            emit(&env, &cli.format, cli.out.as_deref())?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Command::Eig {
            model,
            cells,
            rescale,
        } => {
            let mut env = Envelope::new("eig");
            let (model, label) = resolve_model(&model)?;
            env.arg("model", &label).arg("cells", cells).arg("rescale", rescale);
            let view = model.spindle_view().map_err(fail)?;
            let (solve_model, scale) = if rescale {
                match rescaled_model(&model) {
                    Some(pair) => {
                        env.note("solved at unit curvature; values mapped back");
                        pair
                    }
                    None => {
                        env.note("rescale skipped: curvature is not positive");
                        (model.clone(), 1.0)
                    }
                }
            } else {
                (model.clone(), 1.0)
            };
            let solve_view = solve_model.spindle_view().map_err(fail)?;
            let grid =
                Grid::uniform(0.0, solve_view.total_length, cells.max(64)).map_err(fail)?;
            let mut numeric = spindle_lambda1(&solve_model, &grid).map_err(fail)?;
            numeric.lambda1 *= scale;
            numeric.convergence_estimate *= scale;
            let converged =
                numeric.convergence_estimate <= MESH_CONVERGENCE_RTOL * numeric.lambda1.abs();
            env.flag_convergence("lambda1", converged, numeric.convergence_estimate);
            #[derive(Serialize)]
            struct EigOut {
                numeric: SpectralGapNumeric,
                total_length: f64,
                ell: f64,
            }
            env.set_results(&EigOut {
                numeric,
                total_length: view.total_length,
                ell: view.ell,
            })
            .map_err(fail)?;
            emit(&env, &cli.format, cli.out.as_deref())?;
            Ok(if converged {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }

        Command::GapBound {
            n,
            big_k,
            kappa,
            ell,
            rho,
            caps,
            hardy_s,
            separated,
        } => {
            let mut env = Envelope::new("gap-bound");
            env.arg("n", n).arg("K", big_k);
            if let Some(list) = &hardy_s {
                env.arg("hardy_s", list).arg("separated", separated);
                let s_list = parse_f64_list(list)?;
                let s = if separated {
                    s_list.iter().cloned().fold(0.0, f64::max)
                } else {
                    s_list.iter().sum()
                };
                let bound = gap_bound_hardy(n, big_k, &s_list, separated).map_err(fail)?;
                #[derive(Serialize)]
                struct HardyBound {
                    bound: f64,
                    s_effective: f64,
                    alpha_bar: f64,
                }
                env.set_results(&HardyBound {
                    bound,
                    s_effective: s,
                    alpha_bar: alpha_bar_s(n, s).map_err(fail)?,
                })
                .map_err(fail)?;
            } else if !caps.is_empty() {
                let parsed: Vec<CapParams> = caps
                    .iter()
                    .map(|c| parse_cap(c))
                    .collect::<Result<_, Failure>>()?;
                env.arg("caps", caps.join(";"));
                let report = gap_bound_multi(n, big_k, &parsed).map_err(fail)?;
                for a in &report.assumptions {
                    env.note(a.clone());
                }
                env.set_results(&report).map_err(fail)?;
            } else {
                let (kappa, ell) = match (kappa, ell) {
                    (Some(k), Some(l)) => (k, l),
                    _ => {
                        return Err((
                            "single-cap mode needs --kappa, --ell, --rho".to_string(),
                            ExitCode::from(2),
                        ))
                    }
                };
                let rho_arg = rho.ok_or_else(|| {
                    (
                        "single-cap mode needs --rho (a number or `auto`)".to_string(),
                        ExitCode::from(2),
                    )
                })?;
                let rho = if rho_arg == "auto" {
                    if ell <= 0.0 {
                        return Err((
                            "--rho auto needs ℓ > 0 (no conjugate radius otherwise)".to_string(),
                            ExitCode::from(2),
                        ));
                    }
                    comparison_radius(ell)
                } else {
                    rho_arg.parse::<f64>().map_err(|_| {
                        (
                            format!("--rho must be a number or `auto`, got `{rho_arg}`"),
                            ExitCode::from(2),
                        )
                    })?
                };
                env.arg("kappa", kappa).arg("ell", ell).arg("rho", rho);
                let report = gap_bound_single(n, big_k, kappa, ell, rho).map_err(fail)?;
                let verdict = admissibility(n, kappa, view_lambda1_placeholder(kappa, n))
                    .map_err(fail)?;
                #[derive(Serialize)]
                struct SingleOut {
                    report: GapBoundReport,
                    admissibility: conespec::estimates::AdmissibilityVerdict,
                }
                env.set_results(&SingleOut {
                    report,
                    admissibility: verdict,
                })
                .map_err(fail)?;
            }
            emit(&env, &cli.format, cli.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify {
            model,
            cells,
            n,
            ell,
            ts,
            rescale,
        } => {
            let mut env = Envelope::new("verify");
            let (model, label) = resolve_model(&model)?;
            env.arg("model", &label).arg("cells", cells).arg("rescale", rescale);
            if let Some(n) = n {
                if n != model.n {
                    return Err((
                        format!("--n {n} does not match the model's n = {}", model.n),
                        ExitCode::from(2),
                    ));
                }
            }
            if let Some(ell) = ell {
                let mismatch = model
                    .caps
                    .iter()
                    .any(|cap| (cap.ell - ell).abs() > 1e-12 * ell.abs().max(1.0));
                if mismatch {
                    return Err((
                        format!(
                            "--ell {ell} does not match the model's cap curvatures ({:?})",
                            model.caps.iter().map(|c| c.ell).collect::<Vec<_>>()
                        ),
                        ExitCode::from(2),
                    ));
                }
            }
            if !ts.is_empty() {
                env.arg(
                    "t",
                    ts.iter()
                        .map(|t| t.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                );
            }
            let (solve_model, scale) = if rescale {
                match rescaled_model(&model) {
                    Some(pair) => {
                        env.note("solved at unit curvature; values mapped back");
                        pair
                    }
                    None => {
                        env.note("rescale skipped: curvature is not positive");
                        (model.clone(), 1.0)
                    }
                }
            } else {
                (model.clone(), 1.0)
            };
            let view = solve_model.spindle_view().map_err(fail)?;
            let grid = Grid::uniform(0.0, view.total_length, cells.max(64)).map_err(fail)?;
            let report = verify_chain_with_ts(&solve_model, &grid, &ts).map_err(fail)?;
            let report = scale_spectral_report(report, scale);
            for note in &report.notes {
                env.note(note.clone());
            }
            env.note(report.gap_notion.clone());
            env.flag_convergence(
                "lambda1",
                report.numeric.convergence_estimate
                    <= MESH_CONVERGENCE_RTOL * report.numeric.lambda1.abs(),
                report.numeric.convergence_estimate,
            );
            for link in &report.links {
                env.flag_convergence(
                    &format!("ground(t={})", link.t),
                    link.ground.mesh_converged,
                    link.ground.convergence_estimate,
                );
            }
            let verdict = report.verdict;
            env.set_results(&report).map_err(fail)?;
            emit(&env, &cli.format, cli.out.as_deref())?;
            Ok(match verdict {
                Verdict::Pass => ExitCode::SUCCESS,
                Verdict::Fail => ExitCode::from(1),
                Verdict::Inconclusive => ExitCode::from(3),
            })
        }

        Command::BochnerFuzz {
            count,
            max_dim,
            seed,
            skip_violation_search,
        } => {
            use rand::SeedableRng;
            let mut env = Envelope::new("bochner-fuzz");
            env.seed = Some(seed);
            env.arg("count", count)
                .arg("max_dim", max_dim)
                .arg("seed", seed)
                .arg("violation_search", !skip_violation_search);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let fuzz = fuzz_inequalities(&mut rng, count, max_dim).map_err(fail)?;
            let mut ok = fuzz.be1_failures == 0 && fuzz.lemma_failures == 0;
            #[derive(Serialize)]
            struct FuzzOut {
                fuzz: conespec::bochner::FuzzReport,
                #[serde(skip_serializing_if = "Option::is_none")]
                violation: Option<conespec::bochner::ViolationReport>,
            }
            let violation = if skip_violation_search {
                None
            } else {
                let report = find_hypothesis_violation(&mut rng, 10_000).map_err(fail)?;
                if !report.found {
                    ok = false;
                    env.note("hypothesis-necessity search found no violation (unexpected)");
                }
                Some(report)
            };
            env.set_results(&FuzzOut { fuzz, violation }).map_err(fail)?;
            emit(&env, &cli.format, cli.out.as_deref())?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Command::Thresholds { n } => {
            let mut env = Envelope::new("thresholds");
            env.arg("n", n);
            let taming = taming_thresholds(n).map_err(fail)?;
            #[derive(Serialize)]
            struct ThresholdRow {
                n: u32,
                threshold: f64,
            }
            #[derive(Serialize)]
            struct ThresholdsOut {
                taming: conespec::estimates::TamingThresholds,
                admissibility_thresholds: Vec<ThresholdRow>,
            }
            let rows = (3..=6u32)
                .map(|n| {
                    admissibility(n, 1.0, 1.0).map(|v| ThresholdRow {
                        n,
                        threshold: v.threshold,
                    })
                })
                .collect::<conespec::Result<Vec<_>>>()
                .map_err(fail)?;
            env.set_results(&ThresholdsOut {
                taming,
                admissibility_thresholds: rows,
            })
            .map_err(fail)?;
            emit(&env, &cli.format, cli.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Section λ₁ placeholder for the admissibility echo in gap-bound: the
/// sphere-section value (n−1)·κ (callers with tabulated sections should use
/// the library directly).
fn view_lambda1_placeholder(kappa: f64, n: u32) -> f64 {
    (n as f64 - 1.0) * kappa
}

fn parse_f64_list(list: &str) -> Result<Vec<f64>, Failure> {
    list.split(',')
        .map(|v| {
            v.trim().parse::<f64>().map_err(|_| {
                (
                    format!("`{v}` in `{list}` is not a number"),
                    ExitCode::from(2),
                )
            })
        })
        .collect()
}

fn parse_cap(text: &str) -> Result<CapParams, Failure> {
    let parts = parse_f64_list(text)?;
    if parts.len() != 3 {
        return Err((
            format!("--cap takes `ell,rho,kappa`, got `{text}`"),
            ExitCode::from(2),
        ));
    }
    Ok(CapParams {
        ell: parts[0],
        rho: parts[1],
        kappa: parts[2],
    })
}

/// Build the model's Hardy weight: one cap → the single weight with s = 1;
/// two caps (spindle poles) → s = ½ each, anchored at opposite ends.
fn cap_weight_combination(
    model: &ConicalManifoldModel,
    clamp: Option<f64>,
) -> conespec::Result<CompositeHardyWeight> {
    match model.caps.len() {
        1 => Ok(CompositeHardyWeight::single(HardyWeight::for_cap(
            &model.caps[0],
            clamp,
        )?)),
        2 => {
            let w0 = HardyWeight::for_cap(&model.caps[0], clamp)?;
            let w1 = HardyWeight::for_cap(&model.caps[1], clamp)?;
            combine_weights(vec![(w0, 0.5, 0), (w1, 0.5, 1)])
        }
        k => Err(Error::Domain(format!(
            "the 1-D Hardy check supports 1 or 2 caps, the model has {k}"
        ))),
    }
}

/// Unit-curvature rescaling: r ↦ r√ℓ sends ℓ → 1 and multiplies every
/// eigenvalue and curvature bound by 1/ℓ; returns the scaled model and the
/// factor mapping solved values back to original units.
fn rescaled_model(model: &ConicalManifoldModel) -> Option<(ConicalManifoldModel, f64)> {
    let view = model.spindle_view().ok()?;
    let s = view.ell;
    if !(s > 0.0) || (s - 1.0).abs() < 1e-15 {
        return None;
    }
    let sqrt_s = s.sqrt();
    let mut scaled = model.clone();
    scaled.bulk_k /= s;
    for cap in &mut scaled.caps {
        cap.rho *= sqrt_s;
        cap.ell /= s;
    }
    if let Computable::Spindle {
        ell, total_length, ..
    } = &mut scaled.computable
    {
        *ell /= s;
        *total_length *= sqrt_s;
    }
    scaled.validate().ok()?;
    Some((scaled, s))
}

/// Map a spectral report solved in rescaled units back to original units.
fn scale_spectral_report(report: SpectralReport, s: f64) -> SpectralReport {
    if s == 1.0 {
        return report;
    }
    let mut numeric = report.numeric;
    numeric.lambda1 *= s;
    numeric.convergence_estimate *= s;
    let links = report
        .links
        .into_iter()
        .map(|link| {
            let mut ground = link.ground;
            ground.value *= s;
            ground.convergence_estimate *= s;
            ChainLink {
                alpha_times_ground: link.alpha_times_ground * s,
                ground,
                ..link
            }
        })
        .collect();
    let mut bound = report.bound;
    bound.bound *= s;
    bound.big_k *= s;
    bound.spindle_form = bound.spindle_form.map(|v| v * s);
    for cap in &mut bound.caps {
        cap.ell *= s;
        cap.rho /= s.sqrt();
    }
    SpectralReport {
        numeric,
        links,
        bound,
        tol: report.tol * s,
        ..report
    }
}
