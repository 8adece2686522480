//! Batches of independent seeded runs and their empirical limits.
//!
//! Run `i` of a batch draws from [`run_rng`]`(seed, i)`, so a batch is
//! reproducible and independent of the thread count.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{run_rng, run_summary, Policy, RunSummary, Shock};
use crate::error::{Error, Result};
use crate::limit::{analyze, Landmark, LimitAnalysis};
use crate::params::{ModelParams, PlatformState, Region};

/// Default assignment radius around a stable point.
pub const EPS_ASSIGN: f64 = 0.02;
/// Default initial story count.
pub const INITIAL_TOTAL: f64 = 100.0;
/// Radius used to decide that a run ended at a given point.
pub const NEAR_RADIUS: f64 = 0.01;

/// Runs `n_runs` independent copies of the urn and returns their summaries
/// in run order.
pub fn run_batch(
    initial: PlatformState,
    policy: &Policy,
    p: &ModelParams,
    n_runs: usize,
    n_steps: u64,
    seed: u64,
    shock: Option<Shock>,
) -> Result<Vec<RunSummary>> {
    (0..n_runs)
        .into_par_iter()
        .map(|i| run_summary(initial, policy, p, n_steps, shock, &mut run_rng(seed, i as u64)))
        .collect()
}

/// Runs of a batch that ended near one stable point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assignment {
    pub landmark: Landmark,
    pub location: f64,
    /// Sharing rules in force at the point.
    pub behavior: Vec<Region>,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitDistribution {
    pub params: ModelParams,
    pub initial: PlatformState,
    pub n_runs: usize,
    pub n_steps: u64,
    pub seed: u64,
    pub eps_assign: f64,
    /// Terminal-window mean share of each run, in run order.
    pub terminal_y: Vec<f64>,
    /// One entry per stable point, in location order.
    pub assignment: Vec<Assignment>,
    pub unassigned_count: usize,
}

impl LimitDistribution {
    pub fn fraction(&self, l: Landmark) -> f64 {
        if self.n_runs == 0 {
            return 0.0;
        }
        self.assignment.iter().find(|a| a.landmark == l).map_or(0, |a| a.count) as f64 / self.n_runs as f64
    }

    pub fn unassigned_fraction(&self) -> f64 {
        if self.n_runs == 0 {
            0.0
        } else {
            self.unassigned_count as f64 / self.n_runs as f64
        }
    }

    /// CSV with columns `run,terminal_y,assigned`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["run", "terminal_y", "assigned"])?;
        for (i, &y) in self.terminal_y.iter().enumerate() {
            let assigned = nearest(&self.assignment, y, self.eps_assign).map(|k| self.assignment[k].landmark.to_string());
            w.write_record([i.to_string(), y.to_string(), assigned.unwrap_or_default()])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn nearest(points: &[Assignment], y: f64, eps: f64) -> Option<usize> {
    points
        .iter()
        .enumerate()
        .map(|(k, a)| (k, (a.location - y).abs()))
        .filter(|&(_, d)| d <= eps)
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(k, _)| k)
}

fn assign(analysis: &LimitAnalysis, terminal_y: &[f64], eps: f64) -> (Vec<Assignment>, usize) {
    let mut assignment: Vec<Assignment> = analysis
        .stable_set
        .iter()
        .map(|s| Assignment {
            landmark: s.landmark,
            location: s.location,
            behavior: analysis.limit_behavior(s.landmark),
            count: 0,
        })
        .collect();
    let mut unassigned = 0;
    for &y in terminal_y {
        match nearest(&assignment, y, eps) {
            Some(k) => assignment[k].count += 1,
            None => unassigned += 1,
        }
    }
    (assignment, unassigned)
}

/// Runs the optimal-policy urn `n_runs` times and assigns each terminal
/// share to the nearest stable point within `eps_assign`.
pub fn estimate_limit_distribution(
    p: &ModelParams,
    initial: PlatformState,
    n_runs: usize,
    n_steps: u64,
    seed: u64,
    eps_assign: f64,
) -> Result<LimitDistribution> {
    estimate_with_shock(p, initial, n_runs, n_steps, seed, eps_assign, None)
}

fn estimate_with_shock(
    p: &ModelParams,
    initial: PlatformState,
    n_runs: usize,
    n_steps: u64,
    seed: u64,
    eps_assign: f64,
    shock: Option<Shock>,
) -> Result<LimitDistribution> {
    let analysis = analyze(p)?;
    let policy = Policy::Optimal(analysis.thresholds);
    let runs = run_batch(initial, &policy, p, n_runs, n_steps, seed, shock)?;
    let terminal_y: Vec<f64> = runs.iter().map(|r| r.window_mean).collect();
    let (assignment, unassigned_count) = assign(&analysis, &terminal_y, eps_assign);
    Ok(LimitDistribution {
        params: *p,
        initial,
        n_runs,
        n_steps,
        seed,
        eps_assign,
        terminal_y,
        assignment,
        unassigned_count,
    })
}

/// How many runs started at a point ended within [`NEAR_RADIUS`] of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProximityReport {
    pub landmark: Landmark,
    pub location: f64,
    pub n_runs: usize,
    pub n_steps: u64,
    pub radius: f64,
    pub near: usize,
}

impl ProximityReport {
    /// `None` for an empty batch.
    pub fn fraction(&self) -> Option<f64> {
        (self.n_runs > 0).then(|| self.near as f64 / self.n_runs as f64)
    }
}

/// Starts `n_runs` optimal-policy runs at `landmark` with
/// [`INITIAL_TOTAL`] stories and counts those whose terminal-window mean
/// lies within [`NEAR_RADIUS`] of it.
pub fn proximity(analysis: &LimitAnalysis, landmark: Landmark, n_runs: usize, n_steps: u64, seed: u64) -> Result<ProximityReport> {
    let location = analysis.location(landmark);
    let initial = PlatformState::from_share(location, INITIAL_TOTAL)?;
    let policy = Policy::Optimal(analysis.thresholds);
    let runs = run_batch(initial, &policy, &analysis.params, n_runs, n_steps, seed, None)?;
    let near = runs.iter().filter(|r| (r.window_mean - location).abs() <= NEAR_RADIUS).count();
    Ok(ProximityReport { landmark, location, n_runs, n_steps, radius: NEAR_RADIUS, near })
}

/// [`proximity`] at every unstable steady state. Runs should leave them
/// almost surely.
pub fn nonconvergence_check(p: &ModelParams, n_runs: usize, n_steps: u64, seed: u64) -> Result<Vec<ProximityReport>> {
    let analysis = analyze(p)?;
    if analysis.unstable_set.is_empty() {
        return Err(Error::NoUnstableSteadyState);
    }
    analysis.unstable_set.iter().map(|u| proximity(&analysis, u.landmark, n_runs, n_steps, seed)).collect()
}

/// Runs that ended at one stable point, with the sharing behavior there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BehaviorClass {
    pub landmark: Landmark,
    pub location: f64,
    pub behavior: Vec<Region>,
    pub description: String,
    pub runs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathDependence {
    pub distribution: LimitDistribution,
    /// Stable points reached by at least one run.
    pub classes: Vec<BehaviorClass>,
    /// Fewer than two distinct limits were reached.
    pub degenerate: bool,
}

fn describe(behavior: &[Region]) -> String {
    behavior.iter().map(|r| r.behavior()).collect::<Vec<_>>().join(" / ")
}

/// Limit behaviors reached from a single initial state.
pub fn path_dependence_report(
    p: &ModelParams,
    initial: PlatformState,
    n_runs: usize,
    n_steps: u64,
    seed: u64,
) -> Result<PathDependence> {
    let distribution = estimate_limit_distribution(p, initial, n_runs, n_steps, seed, EPS_ASSIGN)?;
    let classes: Vec<BehaviorClass> = distribution
        .assignment
        .iter()
        .filter(|a| a.count > 0)
        .map(|a| BehaviorClass {
            landmark: a.landmark,
            location: a.location,
            behavior: a.behavior.clone(),
            description: describe(&a.behavior),
            runs: a.count,
        })
        .collect();
    let degenerate = classes.len() < 2;
    Ok(PathDependence { distribution, classes, degenerate })
}

/// Effect of one shock at a given initial platform size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShockEffect {
    pub initial: PlatformState,
    pub shock: Shock,
    pub baseline: LimitDistribution,
    pub shocked: LimitDistribution,
    /// Total variation distance between the two assignment distributions,
    /// unassigned runs counted as one extra outcome.
    pub shift: f64,
}

/// Runs the same batch (same seeds) with and without `shock`.
pub fn shock_effect(
    p: &ModelParams,
    initial: PlatformState,
    shock: Shock,
    n_runs: usize,
    n_steps: u64,
    seed: u64,
) -> Result<ShockEffect> {
    let baseline = estimate_with_shock(p, initial, n_runs, n_steps, seed, EPS_ASSIGN, None)?;
    let shocked = estimate_with_shock(p, initial, n_runs, n_steps, seed, EPS_ASSIGN, Some(shock))?;
    let mut shift = (baseline.unassigned_fraction() - shocked.unassigned_fraction()).abs();
    for a in &baseline.assignment {
        shift += (baseline.fraction(a.landmark) - shocked.fraction(a.landmark)).abs();
    }
    Ok(ShockEffect { initial, shock, baseline, shocked, shift: 0.5 * shift })
}

pub const MANIFEST_SCHEMA_VERSION: u32 = 1;

/// A limit-distribution experiment over a ladder of run lengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentManifest {
    pub schema_version: u32,
    pub params: ModelParams,
    pub initial: PlatformState,
    pub seed: u64,
    pub n_runs: usize,
    pub ladder: Vec<u64>,
    #[serde(default = "default_eps")]
    pub eps_assign: f64,
}

fn default_eps() -> f64 {
    EPS_ASSIGN
}

impl ExperimentManifest {
    pub fn run(&self) -> Result<Vec<LimitDistribution>> {
        if self.schema_version != MANIFEST_SCHEMA_VERSION {
            return Err(Error::InvalidArgument(format!("unsupported manifest schema_version {}", self.schema_version)));
        }
        self.ladder
            .iter()
            .map(|&n| estimate_limit_distribution(&self.params, self.initial, self.n_runs, n, self.seed, self.eps_assign))
            .collect()
    }
}
