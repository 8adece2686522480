//! Command-line front end. The binary is a thin wrapper around [`main`].

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::dynamics::{simulate, Policy};
use crate::error::{Error, Result};
use crate::limit::analyze;
use crate::montecarlo::{
    estimate_limit_distribution, nonconvergence_check, path_dependence_report, ExperimentManifest, EPS_ASSIGN,
};
use crate::params::{ModelParams, ParamSet, PlatformState, Region};
use crate::phase::{atlas_svg, phase_svg};
use crate::report::{self, AnalysisDocument, OutputDir};
use crate::statics::{grid, kappa_bounds, sign_check, sweep, theta_shape, Param, Spacing, SIGN_CELLS};
use crate::verify;

#[derive(Debug, Parser)]
#[command(name = "attention-urn", version, about = "Story-sharing urn with endogenous attention")]
pub struct Cli {
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Thresholds, quasi steady states, stable set and configuration.
    Analyze(AnalyzeArgs),
    /// One sample path of the urn.
    Simulate(SimulateArgs),
    /// Analyses along a grid of one parameter.
    Sweep(SweepArgs),
    /// SVG phase diagram, or the atlas of all configurations.
    Phase(PhaseArgs),
    /// Comparative-statics signs, θ shapes and κ regime bounds.
    Statics(StaticsArgs),
    /// Empirical limit distribution over many seeded runs.
    Montecarlo(MonteCarloArgs),
    /// Runs the acceptance battery.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ParamsArg {
    /// Parameter JSON: a file path or an inline object such as
    /// '{"rho":20,"kappa":8,"theta":0.9,"mu":1,"beta":1,"delta":0.65,"lambda":0.55}'.
    #[arg(long)]
    pub params: String,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub params: ParamsArg,
    /// Output directory; without it the analysis is printed to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write phase.svg.
    #[arg(long, requires = "out")]
    pub svg: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub params: ParamsArg,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub steps: u64,
    /// Initial share of true stories.
    #[arg(long, default_value_t = 0.5)]
    pub y0: f64,
    /// Initial number of stories.
    #[arg(long, default_value_t = 100.0)]
    pub total: f64,
    /// optimal, hybrid, or fixed:N|I|M|S.
    #[arg(long, default_value = "optimal")]
    pub policy: String,
    /// Gzip the trajectory CSV.
    #[arg(long)]
    pub gzip: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub params: ParamsArg,
    #[arg(long)]
    pub param: Param,
    #[arg(long)]
    pub lo: f64,
    #[arg(long)]
    pub hi: f64,
    #[arg(long, default_value_t = 50)]
    pub points: usize,
    /// Log-spaced grid.
    #[arg(long)]
    pub log: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PhaseArgs {
    /// Parameters to draw; omit with --atlas.
    #[arg(long, required_unless_present = "atlas")]
    pub params: Option<String>,
    /// Draw the 40 schematic configurations.
    #[arg(long)]
    pub atlas: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct StaticsArgs {
    #[command(flatten)]
    pub params: ParamsArg,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 60)]
    pub theta_points: usize,
    /// Also compute the κ regime bounds over [lo, hi].
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    pub kappa_range: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct MonteCarloArgs {
    /// Parameters; not needed with --manifest.
    #[arg(long, required_unless_present = "manifest")]
    pub params: Option<String>,
    /// Experiment manifest JSON with a ladder of run lengths.
    #[arg(long, conflicts_with = "params")]
    pub manifest: Option<PathBuf>,
    #[arg(long, default_value_t = 200)]
    pub runs: usize,
    #[arg(long, default_value_t = 100_000)]
    pub steps: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.5)]
    pub y0: f64,
    #[arg(long, default_value_t = 100.0)]
    pub total: f64,
    #[arg(long, default_value_t = EPS_ASSIGN)]
    pub eps: f64,
    /// Also start runs at each unstable steady state.
    #[arg(long)]
    pub nonconvergence: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Comma-separated criterion ids or keys, e.g. "ordering" or "1,2,5".
    #[arg(long)]
    pub filter: Option<String>,
    /// Inject a known defect to exercise the failure path.
    #[arg(long, hide = true)]
    pub mutate: Option<String>,
    /// Write verify.json here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Reads parameters from a file or an inline JSON object and validates them.
pub fn load_params(source: &str) -> Result<ModelParams> {
    let text = if source.trim_start().starts_with('{') { source.to_string() } else { fs::read_to_string(source)? };
    let raw: ParamSet = serde_json::from_str(&text)?;
    ModelParams::new(raw)
}

fn parse_policy(s: &str, p: &ModelParams) -> Result<Policy> {
    match s {
        "optimal" => Ok(Policy::Optimal(analyze(p)?.thresholds)),
        "hybrid" => Policy::hybrid(&analyze(p)?),
        _ => {
            let code = s.strip_prefix("fixed:").and_then(|c| c.chars().next().filter(|_| c.len() == 1));
            code.and_then(Region::from_code)
                .map(Policy::Fixed)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown policy '{s}' (expected optimal, hybrid or fixed:N|I|M|S)")))
        }
    }
}

/// Exit status: 0 success, 1 failure, 2 knife-edge configuration.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::KnifeEdge { .. } => 2,
        _ => 1,
    }
}

fn report_error(e: &Error) {
    if let Error::InvalidParams(vs) = e {
        for v in vs {
            eprintln!("violation: {v}");
        }
    }
    eprintln!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            report_error(&e);
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Executes a parsed command line. `Ok(false)` means the command ran but
/// reported failures (verify).
pub fn run(cli: Cli) -> Result<bool> {
    if let Some(n) = cli.threads {
        // Fails only if a pool already exists, in which case it is kept.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Phase(a) => cmd_phase(a),
        Command::Statics(a) => cmd_statics(a),
        Command::Montecarlo(a) => cmd_montecarlo(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<bool> {
    let p = load_params(&a.params.params)?;
    let analysis = analyze(&p)?;
    let doc = AnalysisDocument::new(&analysis);
    match a.out {
        None => print!("{}", report::to_json("analysis", &doc)?),
        Some(dir) => {
            let mut out = OutputDir::create(&dir, "analyze", json!({ "params": p }))?;
            out.json("analysis.json", "analysis", &doc)?;
            if a.svg {
                out.text("phase.svg", &phase_svg(&analysis))?;
            }
            out.finish()?;
        }
    }
    Ok(true)
}

fn cmd_simulate(a: SimulateArgs) -> Result<bool> {
    let p = load_params(&a.params.params)?;
    let policy = parse_policy(&a.policy, &p)?;
    let initial = PlatformState::from_share(a.y0, a.total)?;
    let traj = simulate(initial, &policy, &p, a.steps, a.seed)?;
    let inputs = json!({ "params": p, "seed": a.seed, "steps": a.steps, "y0": a.y0, "total": a.total, "policy": a.policy });
    let mut out = OutputDir::create(&a.out, "simulate", inputs)?;
    let name = if a.gzip { "trajectory.csv.gz" } else { "trajectory.csv" };
    traj.save_csv(&out.path(name), a.gzip)?;
    out.record(name, &["n", "T", "F", "y", "region"]);
    let terminal = traj.terminal();
    out.json(
        "summary.json",
        "trajectory_summary",
        &json!({ "seed": a.seed, "steps": a.steps, "policy": policy, "initial": initial, "terminal": terminal, "terminal_share": terminal.share() }),
    )?;
    out.finish()?;
    Ok(true)
}

fn cmd_sweep(a: SweepArgs) -> Result<bool> {
    let p = load_params(&a.params.params)?;
    let spacing = if a.log { Spacing::Log } else { Spacing::Linear };
    let s = sweep(a.param, &grid(a.lo, a.hi, a.points, spacing), &p)?;
    let inputs = json!({ "params": p, "param": a.param, "lo": a.lo, "hi": a.hi, "points": a.points, "spacing": spacing });
    let mut out = OutputDir::create(&a.out, "sweep", inputs)?;
    out.csv("sweep.csv", &report::SWEEP_COLUMNS, |w| report::write_sweep_csv(&s, w))?;
    out.csv("transitions.csv", &report::TRANSITION_COLUMNS, |w| report::write_transitions_csv(&s, w))?;
    out.json("sweep.json", "sweep", &s)?;
    out.finish()?;
    Ok(true)
}

fn cmd_phase(a: PhaseArgs) -> Result<bool> {
    let mut params = None;
    if let Some(src) = &a.params {
        params = Some(load_params(src)?);
    }
    let mut out = OutputDir::create(&a.out, "phase", json!({ "params": params, "atlas": a.atlas }))?;
    if let Some(p) = params {
        let analysis = analyze(&p)?;
        out.text("phase.svg", &phase_svg(&analysis))?;
    }
    if a.atlas {
        out.text("atlas.svg", &atlas_svg())?;
    }
    out.finish()?;
    Ok(true)
}

fn cmd_statics(a: StaticsArgs) -> Result<bool> {
    let p = load_params(&a.params.params)?;
    let inputs = json!({ "params": p, "theta_points": a.theta_points, "kappa_range": a.kappa_range });
    let mut out = OutputDir::create(&a.out, "statics", inputs)?;
    // Cells whose stencil leaves the admissible parameter space are omitted.
    let signs: Vec<_> = SIGN_CELLS.iter().filter_map(|&(l, q)| sign_check(l, q, &p, None).ok()).collect();
    out.csv("signs.csv", &report::SIGN_COLUMNS, |w| report::write_signs_csv(&signs, w))?;
    let shapes = [Region::All, Region::MildOnly, Region::InterestingOnly]
        .into_iter()
        .map(|r| theta_shape(r, &p, a.theta_points))
        .collect::<Result<Vec<_>>>()?;
    out.json("theta_shape.json", "theta_shape", &json!({ "shapes": shapes }))?;
    if let Some(range) = &a.kappa_range {
        let b = kappa_bounds(&p, range[0], range[1])?;
        out.json("kappa_bounds.json", "kappa_bounds", &b)?;
    }
    out.finish()?;
    Ok(true)
}

fn cmd_montecarlo(a: MonteCarloArgs) -> Result<bool> {
    if let Some(path) = &a.manifest {
        let m: ExperimentManifest = serde_json::from_str(&fs::read_to_string(path)?)?;
        let ladder = m.run()?;
        let mut out = OutputDir::create(&a.out, "montecarlo", serde_json::to_value(&m)?)?;
        for d in &ladder {
            let name = format!("terminal_{}.csv", d.n_steps);
            out.csv(&name, &["run", "terminal_y", "assigned"], |w| d.write_csv(w))?;
        }
        out.json("ladder.json", "limit_distribution_ladder", &json!({ "distributions": summarize(&ladder) }))?;
        out.finish()?;
        return Ok(true);
    }
    let src = a.params.as_deref().ok_or_else(|| Error::InvalidArgument("--params or --manifest is required".into()))?;
    let p = load_params(src)?;
    let initial = PlatformState::from_share(a.y0, a.total)?;
    let inputs = json!({ "params": p, "runs": a.runs, "steps": a.steps, "seed": a.seed, "y0": a.y0, "total": a.total, "eps": a.eps });
    let mut out = OutputDir::create(&a.out, "montecarlo", inputs)?;
    let d = estimate_limit_distribution(&p, initial, a.runs, a.steps, a.seed, a.eps)?;
    out.csv("terminal.csv", &["run", "terminal_y", "assigned"], |w| d.write_csv(w))?;
    out.json("distribution.json", "limit_distribution", &summarize(std::slice::from_ref(&d))[0])?;
    let classes = path_dependence_report(&p, initial, a.runs, a.steps, a.seed)?;
    out.json("path_dependence.json", "path_dependence", &json!({ "classes": classes.classes, "degenerate": classes.degenerate }))?;
    if a.nonconvergence {
        let reports = match nonconvergence_check(&p, a.runs, a.steps, a.seed) {
            Err(Error::NoUnstableSteadyState) => Vec::new(),
            r => r?,
        };
        out.json("nonconvergence.json", "nonconvergence", &json!({ "reports": reports }))?;
    }
    out.finish()?;
    Ok(true)
}

fn summarize(ds: &[crate::montecarlo::LimitDistribution]) -> Vec<serde_json::Value> {
    ds.iter()
        .map(|d| {
            json!({
                "n_runs": d.n_runs,
                "n_steps": d.n_steps,
                "seed": d.seed,
                "eps_assign": d.eps_assign,
                "initial": d.initial,
                "assignment": d.assignment,
                "unassigned_count": d.unassigned_count,
            })
        })
        .collect()
}

fn cmd_verify(a: VerifyArgs) -> Result<bool> {
    let mutation = a.mutate.as_deref().map(str::parse).transpose()?;
    let chosen = verify::select(a.filter.as_deref())?;
    let results = verify::run(&chosen, &verify::Options { mutation }, |r| println!("{}", r.line()));
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{} passed, {failed} failed", results.len() - failed);
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir)?;
        // Timings vary between runs, so verify.json is the one output that
        // is not byte-stable.
        report::write_json(&Path::new(dir).join("verify.json"), "verify", &json!({ "results": results }))?;
    }
    Ok(failed == 0)
}
