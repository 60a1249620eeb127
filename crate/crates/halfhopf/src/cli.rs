//! Command-line surface: analysis reports, randomized identity-verification
//! suites, the projected gradient flow, and disc-grid data export.
//!
//! Exit codes: 0 success, 1 verification failure, 2 malformed input or
//! invalid configuration (including any NaN reaching a report), 3 analyze
//! stationarity above tolerance, 4 flow hit the iteration cap.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::energy::NormReport;
use crate::error::{Error, Result};
use crate::flows::{run_flow, FlowConfig};
use crate::hopf::{hopf_differential_at, DiscGrid, HopfReport};
use crate::operators::harmonic_extension_eval;
use crate::report::{
    export_csv, to_checked_json, trajectory_csv, write_artifact, AnalyzeReport, RunManifest,
};
use crate::spectral::CircleFunction;
use crate::variation::ResidualReport;
use crate::verify::{run_suite, suite_spectral_basics, SuiteOutcome, SUITE_NAMES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_NOT_STATIONARY: i32 = 3;
pub const EXIT_NO_CONVERGENCE: i32 = 4;

#[derive(Parser)]
#[command(
    name = "halfhopf",
    version,
    about = "Half Dirichlet energy on the circle: stationarity, Hopf differentials, symmetries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Residual, norm and Hopf reports for one function.
    Analyze {
        /// CircleFunction JSON file.
        #[arg(long)]
        input: PathBuf,
        /// Output directory (omit to print the report to stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Stationarity tolerance, relative: residual ≤ tol·(1 + E½(u)).
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Disc grid as R:T (radial by angular resolution).
        #[arg(long, default_value = "16:64")]
        grid: String,
        /// Largest grid radius, strictly inside (0, 1).
        #[arg(long, default_value_t = 0.95)]
        rmax: f64,
        /// Gagliardo quadrature multiplier: M = mult·(2N+1).
        #[arg(long, default_value_t = 8)]
        gagliardo_mult: usize,
    },
    /// Randomized identity suites with per-trial worst cases.
    Verify {
        /// pohozaev | noether | mobius | commutator | hopf-paths | all
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Projected gradient flow toward a sphere-valued stationary point.
    Flow {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long, default_value_t = 50_000)]
        max_iter: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 8)]
        oversample: usize,
        #[arg(long, default_value_t = 48)]
        bandwidth: usize,
    },
    /// CSV of harmonic-extension samples and Hopf values on a disc grid.
    Export {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Disc grid as R:T.
        #[arg(long, default_value = "16:64")]
        grid: String,
        #[arg(long, default_value_t = 0.95)]
        rmax: f64,
    },
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze {
            input,
            out,
            tol,
            grid,
            rmax,
            gagliardo_mult,
        } => cmd_analyze(&input, out.as_deref(), tol, &grid, rmax, gagliardo_mult),
        Command::Verify {
            suite,
            trials,
            seed,
            out,
        } => cmd_verify(&suite, trials, seed, out.as_deref()),
        Command::Flow {
            input,
            out,
            step,
            max_iter,
            tol,
            oversample,
            bandwidth,
        } => {
            let cfg = FlowConfig {
                step,
                max_iter,
                tol,
                oversample,
                bandwidth,
            };
            cmd_flow(&input, out.as_deref(), &cfg)
        }
        Command::Export {
            input,
            out,
            grid,
            rmax,
        } => cmd_export(&input, out.as_deref(), &grid, rmax),
    };
    match code {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_BAD_INPUT
        }
    }
}

fn load_function(path: &Path) -> Result<CircleFunction> {
    let text = std::fs::read_to_string(path)?;
    CircleFunction::from_json(&text).map_err(|e| match e {
        // serde_json errors carry line/column diagnostics already.
        Error::Json(inner) => Error::Schema {
            context: path.display().to_string(),
            detail: inner.to_string(),
        },
        other => other,
    })
}

fn parse_grid(text: &str, rmax: f64) -> Result<DiscGrid> {
    let (r, t) = text.split_once(':').ok_or_else(|| Error::Schema {
        context: "--grid".into(),
        detail: format!("expected R:T, got `{text}`"),
    })?;
    let r_res: usize = r.parse().map_err(|_| Error::Schema {
        context: "--grid".into(),
        detail: format!("bad radial resolution `{r}`"),
    })?;
    let theta_res: usize = t.parse().map_err(|_| Error::Schema {
        context: "--grid".into(),
        detail: format!("bad angular resolution `{t}`"),
    })?;
    DiscGrid::new(r_res, theta_res, rmax)
}

fn cmd_analyze(
    input: &Path,
    out: Option<&Path>,
    tol: f64,
    grid_text: &str,
    rmax: f64,
    gagliardo_mult: usize,
) -> Result<i32> {
    let f = load_function(input)?;
    let grid = parse_grid(grid_text, rmax)?;
    let deltas: Vec<f64> = (0..16)
        .map(|i| 0.37 + 2.0 * std::f64::consts::PI * i as f64 / 16.0)
        .collect();
    let report = AnalyzeReport {
        hopf: HopfReport::compute(&f, Some(&grid))?,
        norms: NormReport::compute(&f, gagliardo_mult, &[-0.5, 0.0, 0.5, 1.0])?,
        residuals: ResidualReport::compute(&f, &deltas)?,
    };
    let json = to_checked_json(&report, "analyze report")?;
    let stationary = report.residuals.is_stationary(&f, tol);

    if let Some(dir) = out {
        let report_path = write_artifact(dir, "report.json", &json)?;
        let mut manifest = RunManifest::new("analyze");
        manifest.input = Some(input.display().to_string());
        manifest
            .param("tol", tol)
            .param("grid", grid_text)
            .param("rmax", rmax)
            .param("gagliardo_mult", gagliardo_mult);
        manifest.outputs.push(report_path);
        manifest.outputs.push(dir.join("manifest.json").display().to_string());
        let manifest_json = to_checked_json(&manifest, "manifest")?;
        write_artifact(dir, "manifest.json", &manifest_json)?;
    } else {
        print!("{json}");
    }
    println!(
        "stationarity residual {:.6e} ({}) tol {:.1e}",
        report.residuals.stationarity,
        if stationary { "PASS" } else { "FAIL" },
        tol
    );
    Ok(if stationary { EXIT_OK } else { EXIT_NOT_STATIONARY })
}

fn cmd_verify(suite: &str, trials: usize, seed: u64, out: Option<&Path>) -> Result<i32> {
    let outcomes: Vec<SuiteOutcome> = if suite == "all" {
        let mut all: Vec<SuiteOutcome> = SUITE_NAMES
            .iter()
            .map(|name| run_suite(name, trials, seed).expect("known suite"))
            .collect();
        all.push(suite_spectral_basics(trials, seed));
        all
    } else {
        vec![run_suite(suite, trials, seed).ok_or_else(|| Error::Schema {
            context: "suite".into(),
            detail: format!(
                "unknown suite `{suite}`; expected one of {:?} or all",
                SUITE_NAMES
            ),
        })?]
    };

    let mut all_pass = true;
    for outcome in &outcomes {
        for check in &outcome.checks {
            println!(
                "{} {}::{} worst {:.3e} bound {:.3e} (trial {})",
                if check.pass { "PASS" } else { "FAIL" },
                outcome.name,
                check.name,
                check.worst,
                check.bound,
                check.worst_trial
            );
        }
        if !outcome.passed() {
            all_pass = false;
        }
    }
    let json = to_checked_json(&outcomes, "verify report")?;
    if let Some(dir) = out {
        let report_path = write_artifact(dir, "verify.json", &json)?;
        let mut manifest = RunManifest::new("verify");
        manifest.seed = Some(seed);
        manifest.param("suite", suite).param("trials", trials);
        manifest.outputs.push(report_path);
        for outcome in &outcomes {
            if let Some(csv) = &outcome.probe_csv {
                let name = format!("{}_probes.csv", outcome.name);
                manifest.outputs.push(write_artifact(dir, &name, csv)?);
            }
        }
        manifest.outputs.push(dir.join("manifest.json").display().to_string());
        write_artifact(dir, "manifest.json", &to_checked_json(&manifest, "manifest")?)?;
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn cmd_flow(input: &Path, out: Option<&Path>, cfg: &FlowConfig) -> Result<i32> {
    let f0 = load_function(input)?;
    let trajectory = run_flow(&f0, cfg)?;
    let last = trajectory.rows.last().expect("at least one row");
    println!(
        "flow {} after {} iterations: energy {:.9}, tangential {:.3e}, stationarity {:.3e}",
        if trajectory.converged {
            "converged"
        } else {
            "stopped"
        },
        last.iteration,
        last.energy,
        last.tangential_residual,
        last.stationarity_residual
    );
    if let Some(dir) = out {
        let csv_path = write_artifact(dir, "trajectory.csv", &trajectory_csv(&trajectory))?;
        let final_json = to_checked_json(&trajectory.final_function, "final function")?;
        let final_path = write_artifact(dir, "final.json", &final_json)?;
        let mut manifest = RunManifest::new("flow");
        manifest.input = Some(input.display().to_string());
        manifest
            .param("step", cfg.step)
            .param("max_iter", cfg.max_iter)
            .param("tol", cfg.tol)
            .param("oversample", cfg.oversample)
            .param("bandwidth", cfg.bandwidth)
            .param("converged", trajectory.converged);
        manifest.outputs.push(csv_path);
        manifest.outputs.push(final_path);
        manifest.outputs.push(dir.join("manifest.json").display().to_string());
        write_artifact(dir, "manifest.json", &to_checked_json(&manifest, "manifest")?)?;
    }
    Ok(if trajectory.converged {
        EXIT_OK
    } else {
        EXIT_NO_CONVERGENCE
    })
}

fn cmd_export(input: &Path, out: Option<&Path>, grid_text: &str, rmax: f64) -> Result<i32> {
    let f = load_function(input)?;
    let grid = parse_grid(grid_text, rmax)?;
    let mut rows = Vec::with_capacity(grid.r_res * grid.theta_res);
    for p in grid.points() {
        let ext = harmonic_extension_eval(&f, p);
        let hopf = hopf_differential_at(&f, p.to_complex())?;
        rows.push((p.r(), p.theta(), ext, hopf));
    }
    let csv = export_csv(&rows, f.dim());
    if let Some(dir) = out {
        let csv_path = write_artifact(dir, "grid.csv", &csv)?;
        let mut manifest = RunManifest::new("export");
        manifest.input = Some(input.display().to_string());
        manifest.param("grid", grid_text).param("rmax", rmax);
        manifest.outputs.push(csv_path);
        manifest.outputs.push(dir.join("manifest.json").display().to_string());
        write_artifact(dir, "manifest.json", &to_checked_json(&manifest, "manifest")?)?;
    } else {
        print!("{csv}");
    }
    println!("exported {} rows", rows.len());
    Ok(EXIT_OK)
}
