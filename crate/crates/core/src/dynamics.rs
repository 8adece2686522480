//! The story urn: sharing probabilities per region, the one-step transition
//! law and seeded trajectory simulation.
//!
//! Each period one true and `κ` false stories arrive. The current user
//! draws a story and, under the sharing rule of the region the platform is
//! in, shares it with the probabilities of [`sharing_probs`]; a shared story
//! adds `ρ` copies of itself. The state therefore moves by `(1+ρ, κ)`,
//! `(1, κ+ρ)` or `(1, κ)`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use flate2::write::GzEncoder;
use flate2::Compression;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::attention::{attention_level, Thresholds};
use crate::error::{Error, Result};
use crate::limit::{Landmark, LimitAnalysis, Stability};
use crate::params::{Evocativeness, ModelParams, PlatformState, Region};

/// Region containing share `y`. A share exactly on a threshold belongs to
/// the region on its right.
#[inline]
pub fn region_of(y: f64, th: &Thresholds) -> Region {
    if y < th.lower() {
        Region::NoSharing
    } else if y < th.upper() {
        th.intermediate_region
    } else {
        Region::All
    }
}

/// Probabilities that the current user shares a true or a false story.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SharingProbs {
    pub p_true: f64,
    pub p_false: f64,
}

/// Sharing probabilities at share `y` when users follow the rule of `region`.
#[inline]
pub fn sharing_probs(region: Region, y: f64, p: &ModelParams) -> SharingProbs {
    let (theta, delta) = (p.theta(), p.delta());
    match region {
        Region::NoSharing => SharingProbs { p_true: 0.0, p_false: 0.0 },
        Region::InterestingOnly => SharingProbs {
            p_true: 0.5 * y,
            p_false: (1.0 - y) * delta * theta * (1.0 - attention_level(y, Evocativeness::Interesting, p)),
        },
        Region::MildOnly => SharingProbs {
            p_true: 0.5 * y,
            p_false: (1.0 - y) * (1.0 - delta) * theta * (1.0 - attention_level(y, Evocativeness::Mild, p)),
        },
        Region::All => {
            let a_i = attention_level(y, Evocativeness::Interesting, p);
            let a_m = attention_level(y, Evocativeness::Mild, p);
            SharingProbs { p_true: y, p_false: (1.0 - y) * theta * (1.0 - delta * a_i - (1.0 - delta) * a_m) }
        }
    }
}

/// Law of motion in the region that does not touch the target threshold of
/// a [`Policy::Hybrid`] process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HybridRule {
    pub thresholds: Thresholds,
    /// The region not adjacent to the interesting-story threshold.
    pub outer: Region,
    /// `true` when the outer region lies right of the threshold, in which
    /// case the outer step adds one false story; otherwise one true story.
    pub outer_is_right: bool,
}

/// Which sharing rule drives the urn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Policy {
    /// Users follow the optimal rule for the current share.
    Optimal(Thresholds),
    /// Users follow one region's rule everywhere (a single generalized urn).
    Fixed(Region),
    /// Optimal rule in the two regions adjacent to a stable interesting
    /// threshold, deterministic monotone motion toward it in the third.
    Hybrid(HybridRule),
}

impl Policy {
    /// Hybrid process for an analysis in which the interesting-story
    /// threshold is a stable steady state.
    pub fn hybrid(analysis: &LimitAnalysis) -> Result<Policy> {
        let stable = analysis
            .stable_set
            .iter()
            .any(|s| s.landmark == Landmark::Threshold(Evocativeness::Interesting) && s.stability == Stability::Stable);
        if !stable {
            return Err(Error::HybridUnavailable);
        }
        let th = analysis.thresholds;
        let (outer, outer_is_right) =
            if th.interesting < th.mild { (Region::All, true) } else { (Region::NoSharing, false) };
        Ok(Policy::Hybrid(HybridRule { thresholds: th, outer, outer_is_right }))
    }

    /// Region whose rule applies at share `y`.
    #[inline]
    pub fn region_at(&self, y: f64) -> Region {
        match self {
            Policy::Optimal(th) => region_of(y, th),
            Policy::Fixed(r) => *r,
            Policy::Hybrid(rule) => region_of(y, &rule.thresholds),
        }
    }
}

/// Outcome of one period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Move {
    SharedTrue,
    SharedFalse,
    NotShared,
    /// Hybrid outer region: one true story, no false ones.
    ForcedTrue,
    /// Hybrid outer region: one false story, no true ones.
    ForcedFalse,
}

/// Draws the outcome of one period at share `y`.
#[inline]
pub fn draw_move<R: Rng + ?Sized>(y: f64, policy: &Policy, p: &ModelParams, rng: &mut R) -> (Region, Move) {
    let region = policy.region_at(y);
    if let Policy::Hybrid(rule) = policy {
        if region == rule.outer {
            return (region, if rule.outer_is_right { Move::ForcedFalse } else { Move::ForcedTrue });
        }
    }
    if region == Region::NoSharing {
        return (region, Move::NotShared);
    }
    let probs = sharing_probs(region, y, p);
    let u: f64 = rng.gen();
    let mv = if u < probs.p_true {
        Move::SharedTrue
    } else if u < probs.p_true + probs.p_false {
        Move::SharedFalse
    } else {
        Move::NotShared
    };
    (region, mv)
}

/// Increment `(ΔT, ΔF)` produced by a move.
#[inline]
pub fn increment(mv: Move, p: &ModelParams) -> (f64, f64) {
    match mv {
        Move::SharedTrue => (1.0 + p.rho(), p.kappa()),
        Move::SharedFalse => (1.0, p.kappa() + p.rho()),
        Move::NotShared => (1.0, p.kappa()),
        Move::ForcedTrue => (1.0, 0.0),
        Move::ForcedFalse => (0.0, 1.0),
    }
}

/// One period of the urn.
pub fn step<R: Rng + ?Sized>(state: &PlatformState, policy: &Policy, p: &ModelParams, rng: &mut R) -> Result<PlatformState> {
    if !(state.total() > 0.0) {
        return Err(Error::EmptyState);
    }
    let (_, mv) = draw_move(state.share(), policy, p, rng);
    let (dt, df) = increment(mv, p);
    Ok(PlatformState { t_count: state.t_count + dt, f_count: state.f_count + df })
}

/// Random stream for run `run_index` under `master_seed`.
///
/// Each run gets its own ChaCha stream, so results do not depend on how
/// runs are scheduled across threads.
pub fn run_rng(master_seed: u64, run_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(run_index);
    rng
}

/// Streaming simulator.
///
/// Counts are kept as integer tallies of each move type and the state is
/// rebuilt from them, so long runs accumulate no rounding drift and a
/// no-sharing run reproduces `(T₀ + n, F₀ + nκ)` exactly.
#[derive(Debug, Clone)]
pub struct Walker<'a> {
    policy: &'a Policy,
    params: &'a ModelParams,
    base_t: f64,
    base_f: f64,
    regular: u64,
    true_shares: u64,
    false_shares: u64,
    forced_true: u64,
    forced_false: u64,
    state: PlatformState,
}

impl<'a> Walker<'a> {
    pub fn new(initial: PlatformState, policy: &'a Policy, params: &'a ModelParams) -> Result<Self> {
        if !(initial.total() > 0.0) {
            return Err(Error::EmptyState);
        }
        Ok(Self {
            policy,
            params,
            base_t: initial.t_count,
            base_f: initial.f_count,
            regular: 0,
            true_shares: 0,
            false_shares: 0,
            forced_true: 0,
            forced_false: 0,
            state: initial,
        })
    }

    #[inline]
    pub fn state(&self) -> PlatformState {
        self.state
    }

    #[inline]
    pub fn share(&self) -> f64 {
        self.state.share()
    }

    /// Adds an exogenous mass of stories (a shock) to the platform.
    pub fn inject(&mut self, true_stories: f64, false_stories: f64) {
        self.base_t += true_stories;
        self.base_f += false_stories;
        self.rebuild();
    }

    #[inline]
    fn rebuild(&mut self) {
        let (rho, kappa) = (self.params.rho(), self.params.kappa());
        let t = self.base_t
            + self.regular as f64
            + self.forced_true as f64
            + rho * self.true_shares as f64;
        let f = self.base_f
            + kappa * self.regular as f64
            + self.forced_false as f64
            + rho * self.false_shares as f64;
        self.state = PlatformState { t_count: t, f_count: f };
    }

    /// Advances one period and returns the region whose rule was applied.
    #[inline]
    pub fn advance<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Region {
        let (region, mv) = draw_move(self.state.share(), self.policy, self.params, rng);
        match mv {
            Move::SharedTrue => {
                self.regular += 1;
                self.true_shares += 1;
            }
            Move::SharedFalse => {
                self.regular += 1;
                self.false_shares += 1;
            }
            Move::NotShared => self.regular += 1,
            Move::ForcedTrue => self.forced_true += 1,
            Move::ForcedFalse => self.forced_false += 1,
        }
        self.rebuild();
        region
    }
}

/// Summary of a run that does not keep its path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub terminal: PlatformState,
    /// Mean share over the last `window` states.
    pub window_mean: f64,
    pub window: u64,
}

/// An optional exogenous injection of stories at a given period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Shock {
    pub at_step: u64,
    pub true_stories: f64,
    pub false_stories: f64,
}

/// Length of the terminal averaging window: 1% of the run, at least one state.
pub fn terminal_window(n_steps: u64) -> u64 {
    (n_steps / 100).max(1)
}

/// Runs `n_steps` periods without recording the path.
pub fn run_summary<R: Rng + ?Sized>(
    initial: PlatformState,
    policy: &Policy,
    p: &ModelParams,
    n_steps: u64,
    shock: Option<Shock>,
    rng: &mut R,
) -> Result<RunSummary> {
    let mut walker = Walker::new(initial, policy, p)?;
    let window = terminal_window(n_steps).min(n_steps.max(1));
    let start_window = n_steps + 1 - window;
    let mut acc = 0.0;
    if n_steps == 0 {
        acc = walker.share();
    }
    for n in 1..=n_steps {
        if let Some(s) = shock {
            if s.at_step + 1 == n {
                walker.inject(s.true_stories, s.false_stories);
            }
        }
        walker.advance(rng);
        if n >= start_window {
            acc += walker.share();
        }
    }
    Ok(RunSummary { terminal: walker.state(), window_mean: acc / window as f64, window })
}

/// A recorded sample path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub seed: u64,
    pub params: ModelParams,
    pub policy: Policy,
    /// States `z₀, …, z_n`.
    pub states: Vec<PlatformState>,
    /// Region whose rule applies at each recorded state.
    pub regions_visited: Vec<Region>,
}

impl Trajectory {
    pub fn shares(&self) -> impl Iterator<Item = f64> + '_ {
        self.states.iter().map(PlatformState::share)
    }

    pub fn terminal(&self) -> PlatformState {
        *self.states.last().expect("trajectory always holds the initial state")
    }

    /// CSV with columns `n,T,F,y,region`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "T", "F", "y", "region"])?;
        for (n, (s, r)) in self.states.iter().zip(&self.regions_visited).enumerate() {
            w.write_record([
                n.to_string(),
                s.t_count.to_string(),
                s.f_count.to_string(),
                s.share().to_string(),
                r.code().to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes the CSV to `path`, gzip-compressed when `gzip` is set.
    pub fn save_csv(&self, path: &Path, gzip: bool) -> Result<()> {
        let file = BufWriter::new(File::create(path)?);
        if gzip {
            let mut enc = GzEncoder::new(file, Compression::default());
            self.write_csv(&mut enc)?;
            enc.finish()?.flush()?;
        } else {
            self.write_csv(file)?;
        }
        Ok(())
    }
}

/// Simulates `n_steps` periods from `initial`, reproducibly from `seed`.
pub fn simulate(initial: PlatformState, policy: &Policy, p: &ModelParams, n_steps: u64, seed: u64) -> Result<Trajectory> {
    let mut rng = run_rng(seed, 0);
    let mut walker = Walker::new(initial, policy, p)?;
    let capacity = usize::try_from(n_steps).unwrap_or(usize::MAX).saturating_add(1);
    let mut states = Vec::with_capacity(capacity);
    let mut regions = Vec::with_capacity(capacity);
    states.push(initial);
    for _ in 0..n_steps {
        regions.push(walker.advance(&mut rng));
        states.push(walker.state());
    }
    regions.push(policy.region_at(walker.share()));
    Ok(Trajectory { seed, params: *p, policy: *policy, states, regions_visited: regions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attention::thresholds;
    use crate::limit::drift;

    fn reference() -> ModelParams {
        ModelParams::from_tuple(1.0, 1.0, 0.75, 1.0, 1.0, 0.7, 0.75).unwrap()
    }

    #[test]
    fn regions_by_position() {
        let th = Thresholds::new(0.2, 0.6).unwrap();
        assert_eq!(region_of(0.01, &th), Region::NoSharing);
        assert_eq!(region_of(0.99, &th), Region::All);
        assert_eq!(region_of(0.4, &th), Region::InterestingOnly);
        assert_eq!(region_of(0.2, &th), Region::InterestingOnly);
        assert_eq!(region_of(0.6, &th), Region::All);
        let th = Thresholds::new(0.6, 0.2).unwrap();
        assert_eq!(region_of(0.4, &th), Region::MildOnly);
    }

    #[test]
    fn golden_intermediate_region() {
        let p = ModelParams::from_tuple(20.0, 8.0, 0.9, 1.0, 1.0, 0.65, 0.55).unwrap();
        let th = thresholds(&p).unwrap();
        let mid = 0.5 * (th.interesting + th.mild);
        assert_eq!(region_of(mid, &th), Region::InterestingOnly);
    }

    #[test]
    fn probabilities_by_region() {
        let p = reference();
        for y in [0.0, 0.3, 0.7, 1.0] {
            assert_eq!(sharing_probs(Region::NoSharing, y, &p), SharingProbs { p_true: 0.0, p_false: 0.0 });
        }
        for r in Region::ALL {
            let s = sharing_probs(r, 1.0, &p);
            assert_eq!(s.p_false, 0.0);
            for i in 0..=100 {
                let s = sharing_probs(r, i as f64 / 100.0, &p);
                assert!(s.p_true >= 0.0 && s.p_false >= 0.0 && s.p_true + s.p_false <= 1.0);
            }
        }
    }

    /// Simulates the signal model directly: a false story is very
    /// interesting with probability δ, and looks true with probability
    /// θ(1 − a) under attention a.
    #[test]
    fn all_region_false_share_matches_signal_model() {
        let p = reference();
        let a_i = attention_level(0.0, Evocativeness::Interesting, &p);
        let a_m = attention_level(0.0, Evocativeness::Mild, &p);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let draws = 1_000_000;
        let mut shared = 0u64;
        for _ in 0..draws {
            let interesting = rng.gen::<f64>() < p.delta();
            let a = if interesting { a_i } else { a_m };
            if rng.gen::<f64>() < p.theta() * (1.0 - a) {
                shared += 1;
            }
        }
        let freq = shared as f64 / draws as f64;
        let exact = sharing_probs(Region::All, 0.0, &p);
        assert_eq!(exact.p_true, 0.0);
        let se = (exact.p_false * (1.0 - exact.p_false) / draws as f64).sqrt();
        assert!((freq - exact.p_false).abs() < 4.0 * se, "{freq} vs {}", exact.p_false);
    }

    #[test]
    fn no_sharing_step_is_deterministic() {
        let p = reference();
        let s = PlatformState::new(3.0, 5.0).unwrap();
        let mut rng = run_rng(1, 0);
        for _ in 0..10 {
            let next = step(&s, &Policy::Fixed(Region::NoSharing), &p, &mut rng).unwrap();
            assert_eq!(next, PlatformState { t_count: 4.0, f_count: 6.0 });
        }
    }

    #[test]
    fn step_is_reproducible() {
        let p = reference();
        let th = thresholds(&p).unwrap();
        let s = PlatformState::new(40.0, 60.0).unwrap();
        for seed in 0..20 {
            let a = step(&s, &Policy::Optimal(th), &p, &mut run_rng(seed, 7)).unwrap();
            let b = step(&s, &Policy::Optimal(th), &p, &mut run_rng(seed, 7)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn empty_state_is_rejected() {
        let p = reference();
        let empty = PlatformState { t_count: 0.0, f_count: 0.0 };
        assert!(matches!(step(&empty, &Policy::Fixed(Region::All), &p, &mut run_rng(0, 0)), Err(Error::EmptyState)));
    }

    #[test]
    fn expected_drift_at_large_platform() {
        // E[Δy]·|z| → g_R(y) as |z| → ∞; estimated by Monte Carlo at |z| = 10⁶.
        let p = ModelParams::from_tuple(2.0, 1.5, 0.8, 1.2, 1.0, 0.7, 0.7).unwrap();
        let total = 1e6;
        for region in [Region::All, Region::InterestingOnly, Region::MildOnly] {
            let y = 0.45;
            let s = PlatformState::from_share(y, total).unwrap();
            let mut rng = run_rng(99, region as u64);
            let draws = 100_000;
            let policy = Policy::Fixed(region);
            let mean: f64 = (0..draws)
                .map(|_| (step(&s, &policy, &p, &mut rng).unwrap().share() - y) * total)
                .sum::<f64>()
                / draws as f64;
            assert!((mean - drift(region, y, &p)).abs() < 1e-2, "{region:?}: {mean} vs {}", drift(region, y, &p));
        }
    }

    #[test]
    fn simulate_zero_steps() {
        let p = reference();
        let init = PlatformState::new(1.0, 9.0).unwrap();
        let tr = simulate(init, &Policy::Fixed(Region::All), &p, 0, 4).unwrap();
        assert_eq!(tr.states, vec![init]);
        assert_eq!(tr.regions_visited.len(), 1);
    }

    #[test]
    fn increments_follow_law_of_motion() {
        let p = reference();
        let th = thresholds(&p).unwrap();
        let tr = simulate(PlatformState::new(30.0, 70.0).unwrap(), &Policy::Optimal(th), &p, 5000, 17).unwrap();
        let allowed = [(1.0 + p.rho(), p.kappa()), (1.0, p.kappa() + p.rho()), (1.0, p.kappa())];
        for w in tr.states.windows(2) {
            let d = (w[1].t_count - w[0].t_count, w[1].f_count - w[0].f_count);
            assert!(allowed.iter().any(|a| (a.0 - d.0).abs() < 1e-9 && (a.1 - d.1).abs() < 1e-9), "{d:?}");
        }
    }

    #[test]
    fn fixed_no_sharing_matches_closed_form() {
        let p = ModelParams::from_tuple(1.0, 2.4, 0.9, 1.0, 1.0, 0.9, 0.65).unwrap();
        let (t0, f0) = (1.0, 9.0);
        let tr = simulate(PlatformState::new(t0, f0).unwrap(), &Policy::Fixed(Region::NoSharing), &p, 1000, 0).unwrap();
        for (n, s) in tr.states.iter().enumerate() {
            let n = n as f64;
            assert_eq!(s.t_count, t0 + n);
            assert_eq!(s.f_count, f0 + n * p.kappa());
        }
    }

    #[test]
    fn csv_export() {
        let p = reference();
        let tr = simulate(PlatformState::new(5.0, 5.0).unwrap(), &Policy::Fixed(Region::All), &p, 3, 1).unwrap();
        let mut buf = Vec::new();
        tr.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "n,T,F,y,region");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("0,5,5,0.5,"));
    }
}
