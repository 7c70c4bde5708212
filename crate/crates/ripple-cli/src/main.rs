//! `ripple` — command line front end for the short-wave solver.
//!
//! Subcommands: `check` (admissibility of the configured datum), `solve`
//! (run the fixed-point and/or direct integrator, emit CSV + JSON), `field`
//! (synthesize a stored solution in physical space). Exit codes: 0 success,
//! 1 admissibility/convergence failure, 2 usage or IO problems. Mathematical
//! failures print a one-line machine-readable error JSON on stdout.

mod config;
mod emit;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ripple::{
    admissibility, diagnostics, integrate, solve_adaptive, BranchSign, DiagnosticsRecord,
    EvolutionConfig, PicardConfig, Trajectory,
};
use serde_json::json;

use config::{Branch, RunConfig, Solver};
use emit::fmt_f64;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Math(ripple::Error),
}

impl CliError {
    fn usage(msg: String) -> Self {
        CliError::Usage(msg)
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Math(e) => {
                if e.is_math_failure() {
                    1
                } else {
                    2
                }
            }
        }
    }

    fn to_json(&self) -> String {
        let (category, message) = match self {
            CliError::Usage(m) => ("Usage", m.clone()),
            CliError::Math(e) => (e.category(), e.to_string()),
        };
        json!({ "error": { "category": category, "message": message } }).to_string()
    }
}

#[derive(Parser)]
#[command(
    name = "ripple",
    version,
    about = "Spectral solver for the periodic short-wave equation u_tx = u - 3u^2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Run configuration (flat JSON, one document per run).
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Zero-mode branch, overriding the config.
    #[arg(long, value_enum)]
    branch: Option<Branch>,
    /// Suppress informational output.
    #[arg(long)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the configured initial data against the admissibility gate.
    Check {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run the selected solver(s); write trajectory CSV, diagnostics CSV and
    /// a JSON report into the output directory.
    Solve {
        #[command(flatten)]
        common: CommonOpts,
        /// Output directory, overriding the config (default `ripple-out`).
        #[arg(long, value_name = "DIR")]
        output: Option<PathBuf>,
        /// Solver selection, overriding the config.
        #[arg(long, value_enum)]
        solver: Option<Solver>,
    },
    /// Synthesize a stored trajectory at a time; prints (x, u, u_x) CSV on
    /// stdout.
    Field {
        #[command(flatten)]
        common: CommonOpts,
        /// Output directory of the earlier solve run.
        #[arg(long, value_name = "DIR")]
        output: Option<PathBuf>,
        /// Which stored trajectory to read (default: picard when available).
        #[arg(long, value_enum)]
        solver: Option<Solver>,
        /// Requested time; the nearest stored sample is used and reported.
        #[arg(long)]
        at: f64,
        /// Number of grid points (default 4N+1).
        #[arg(long)]
        points: Option<usize>,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("RIPPLE_THREADS") {
        if let Ok(threads) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            use std::io::Write;
            // Best effort: a closed stdout must not mask the exit code.
            let _ = writeln!(std::io::stdout(), "{}", err.to_json());
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Check { common } => cmd_check(common),
        Command::Solve {
            common,
            output,
            solver,
        } => cmd_solve(common, output, solver),
        Command::Field {
            common,
            output,
            solver,
            at,
            points,
        } => cmd_field(common, output, solver, at, points),
    }
}

fn load_config(common: &CommonOpts) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::load(&common.config)?;
    if let Some(branch) = common.branch {
        cfg.branch = branch;
    }
    Ok(cfg)
}

fn cmd_check(common: CommonOpts) -> Result<u8, CliError> {
    let cfg = load_config(&common)?;
    let tail = cfg.initial_tail()?;
    let report = admissibility(&tail);

    if !common.quiet {
        println!("S2 = {}", fmt_f64(report.s2));
        println!("S0 = {}", fmt_f64(report.s0));
        println!("gate_72 = {} (S2 < 1/72 required)", report.gate_72);
        println!("gate_36 = {} (S0 <= 1/36)", report.gate_36);
        for branch in [BranchSign::Plus, BranchSign::Minus] {
            match ripple::solve_zero_mode(report.s0, branch) {
                Ok(mean) => println!("phi0_{branch} = {}", fmt_f64(mean)),
                Err(_) => println!("phi0_{branch} = none (S0 beyond the fold)"),
            }
        }
        if report.gate_72 {
            let phi = ripple::build_initial(&tail, cfg.branch.into()).map_err(CliError::Math)?;
            let built = admissibility(&phi);
            println!("zero_mean_residual = {}", fmt_f64(built.zero_mean_residual));
        }
    }
    Ok(if report.gate_72 { 0 } else { 1 })
}

fn out_dir_for(cfg: &RunConfig, flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| cfg.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("ripple-out"))
}

fn diagnostics_along(
    traj: &Trajectory,
    quad_points: usize,
) -> Result<Vec<DiagnosticsRecord>, CliError> {
    traj.times()
        .iter()
        .zip(traj.states())
        .map(|(&t, state)| diagnostics::record(state, t, quad_points).map_err(CliError::Math))
        .collect()
}

fn cmd_solve(
    common: CommonOpts,
    output: Option<PathBuf>,
    solver: Option<Solver>,
) -> Result<u8, CliError> {
    let mut cfg = load_config(&common)?;
    if let Some(solver) = solver {
        cfg.solver = solver;
    }
    let out_dir = out_dir_for(&cfg, output);
    std::fs::create_dir_all(&out_dir)
        .map_err(|e| CliError::usage(format!("cannot create {}: {e}", out_dir.display())))?;

    let phi = cfg.initial_state()?;
    let branch: BranchSign = cfg.branch.into();
    let quad_points = 4 * cfg.n + 1;

    let mut report = serde_json::Map::new();
    report.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    report.insert(
        "config".into(),
        serde_json::to_value(&cfg)
            .map_err(|e| CliError::usage(format!("config echo failed: {e}")))?,
    );

    let mut picard_traj = None;
    if matches!(cfg.solver, Solver::Picard | Solver::Both) {
        let mut picard_cfg = PicardConfig::new(cfg.t, cfg.m);
        picard_cfg.tol = cfg.tol;
        picard_cfg.max_iter = cfg.max_iter;
        picard_cfg.branch = branch;
        let solved = solve_adaptive(&phi, &picard_cfg).map_err(CliError::Math)?;

        let records = diagnostics_along(&solved.trajectory, quad_points)?;
        emit::write_trajectory_csv(&out_dir.join("picard_trajectory.csv"), &solved.trajectory)?;
        emit::write_diagnostics_csv(&out_dir.join("picard_diagnostics.csv"), &records)?;
        report.insert(
            "picard".into(),
            json!({
                "iterations": solved.report.iterations,
                "converged": solved.report.converged,
                "final_update_norm": solved.report.final_update_norm,
                "contraction_ratios": solved.report.contraction_ratios,
                "integral_residual": solved.report.integral_residual,
                "horizon": solved.horizon,
                "halvings": solved.halvings,
                "samples": solved.trajectory.num_samples(),
            }),
        );
        if !common.quiet {
            println!(
                "picard: converged in {} iterations on horizon {} ({} halvings), residual {}",
                solved.report.iterations,
                fmt_f64(solved.horizon),
                solved.halvings,
                fmt_f64(solved.report.integral_residual),
            );
        }
        picard_traj = Some(solved.trajectory);
    }

    let mut rk4_traj = None;
    if matches!(cfg.solver, Solver::Rk4 | Solver::Both) {
        let mut evo_cfg = EvolutionConfig::new(cfg.dt, cfg.t_final);
        evo_cfg.branch = branch;
        evo_cfg.conservation_tol = cfg.conservation_tol;
        let (traj, records) = integrate(&phi, &evo_cfg).map_err(CliError::Math)?;

        emit::write_trajectory_csv(&out_dir.join("rk4_trajectory.csv"), &traj)?;
        emit::write_diagnostics_csv(&out_dir.join("rk4_diagnostics.csv"), &records)?;
        let drift = ripple::drift_report(&records);
        report.insert(
            "rk4".into(),
            json!({
                "dt_effective": traj.dt(),
                "samples": traj.num_samples(),
                "max_e1_drift": drift.max_e1_drift,
                "max_constraint_residual": drift.max_constraint_residual,
                "max_zero_mean_residual": drift.max_zero_mean_residual,
            }),
        );
        if !common.quiet {
            println!(
                "rk4: {} samples to t = {}, E1 drift {}",
                traj.num_samples(),
                fmt_f64(traj.horizon()),
                fmt_f64(drift.max_e1_drift),
            );
        }
        rk4_traj = Some(traj);
    }

    if let (Some(picard), Some(rk4)) = (&picard_traj, &rk4_traj) {
        let (distance, compared) = cross_method_distance(picard, rk4);
        report.insert(
            "cross_method".into(),
            json!({ "sup_h_distance": distance, "samples_compared": compared }),
        );
        if !common.quiet {
            println!(
                "cross-method sup-H distance over {compared} shared samples: {}",
                fmt_f64(distance)
            );
        }
    }

    emit::write_json(
        &out_dir.join("report.json"),
        &serde_json::Value::Object(report),
    )?;
    if !common.quiet {
        println!("wrote {}", out_dir.display());
    }
    Ok(0)
}

/// Sup of the H-distance over samples whose times coincide (the grids align
/// whenever `t / m == dt`); returns the distance and how many samples
/// matched.
fn cross_method_distance(a: &Trajectory, b: &Trajectory) -> (f64, usize) {
    let tol = 1e-9 * a.dt().max(b.dt());
    let mut sup = 0.0f64;
    let mut compared = 0usize;
    for (&t, state) in a.times().iter().zip(a.states()) {
        let j = b.nearest_sample(t);
        if (b.times()[j] - t).abs() <= tol {
            sup = sup.max(state.h_distance(b.state(j)));
            compared += 1;
        }
    }
    (sup, compared)
}

fn cmd_field(
    common: CommonOpts,
    output: Option<PathBuf>,
    solver: Option<Solver>,
    at: f64,
    points: Option<usize>,
) -> Result<u8, CliError> {
    let mut cfg = load_config(&common)?;
    if let Some(solver) = solver {
        cfg.solver = solver;
    }
    let out_dir = out_dir_for(&cfg, output);
    let stem = match cfg.solver {
        Solver::Rk4 => "rk4",
        Solver::Picard | Solver::Both => "picard",
    };
    let path = out_dir.join(format!("{stem}_trajectory.csv"));
    if !path.exists() {
        return Err(CliError::usage(format!(
            "no stored trajectory at {} (run `ripple solve` first)",
            path.display()
        )));
    }
    let traj = emit::read_trajectory_csv(&path, cfg.l, cfg.n)?;

    let j = traj.nearest_sample(at);
    let t = traj.times()[j];
    let state = traj.state(j);
    let points = points.unwrap_or(4 * cfg.n + 1);
    let field = state.synthesize(points).map_err(CliError::Math)?;
    let deriv = state
        .synthesize_derivative(points)
        .map_err(CliError::Math)?;

    if !common.quiet {
        eprintln!(
            "field: using stored sample t = {} (requested {})",
            fmt_f64(t),
            fmt_f64(at)
        );
    }
    emit::write_field_csv(
        std::io::stdout().lock(),
        field.xs(),
        field.values(),
        deriv.values(),
    )?;
    Ok(0)
}
