//! Limit dynamics of the urn.
//!
//! Under a fixed sharing rule the true-story share follows, asymptotically,
//! the ODE `dy/dt = g_R(y)` with
//!
//! ```text
//! g_R(y) = 1 + ρ·p_T(y) − y·(1 + κ + ρ·(p_T(y) + p_F(y)))
//! ```
//!
//! (expected incoming true stories minus `y` times expected incoming
//! stories). Each `g_R` has a unique, globally stable root in (0, 1), the
//! quasi steady state of region `R`. Pasting the three live regions
//! together gives a differential inclusion that is interval-valued at the
//! thresholds; its stable steady states are the possible limits of the
//! share.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::attention::{thresholds, Thresholds};
use crate::dynamics::{region_of, sharing_probs};
use crate::error::{Error, Result};
use crate::params::{Evocativeness, ModelParams, Region, KNIFE_EDGE_TOL};
use crate::roots::bisect;

/// Right-hand side of the limit ODE for region `region`.
#[inline]
pub fn drift(region: Region, y: f64, p: &ModelParams) -> f64 {
    let s = sharing_probs(region, y, p);
    1.0 + s.p_true * p.rho() - y * (1.0 + p.kappa() + p.rho() * (s.p_true + s.p_false))
}

/// Unique root of [`drift`] in (0, 1). The no-sharing root is `1/(1+κ)`.
pub fn quasi_steady_state(region: Region, p: &ModelParams) -> f64 {
    match region {
        Region::NoSharing => 1.0 / (1.0 + p.kappa()),
        // g_R(0) = 1 > 0 > −κ = g_R(1), so the bracket always holds.
        _ => bisect(|y| drift(region, y, p), 0.0, 1.0).expect("drift changes sign on [0, 1]"),
    }
}

/// Quasi steady states of all four rules, including the intermediate rule
/// that is not live for the given parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuasiSteadyStates {
    pub no_sharing: f64,
    pub interesting: f64,
    pub mild: f64,
    pub all: f64,
}

impl QuasiSteadyStates {
    pub fn compute(p: &ModelParams) -> Self {
        Self {
            no_sharing: quasi_steady_state(Region::NoSharing, p),
            interesting: quasi_steady_state(Region::InterestingOnly, p),
            mild: quasi_steady_state(Region::MildOnly, p),
            all: quasi_steady_state(Region::All, p),
        }
    }

    pub fn get(&self, r: Region) -> f64 {
        match r {
            Region::NoSharing => self.no_sharing,
            Region::InterestingOnly => self.interesting,
            Region::MildOnly => self.mild,
            Region::All => self.all,
        }
    }
}

/// A named point of the phase line: a quasi steady state or a threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Landmark {
    Qss(Region),
    Threshold(Evocativeness),
}

impl Landmark {
    pub const ALL: [Landmark; 6] = [
        Landmark::Qss(Region::NoSharing),
        Landmark::Qss(Region::InterestingOnly),
        Landmark::Qss(Region::MildOnly),
        Landmark::Qss(Region::All),
        Landmark::Threshold(Evocativeness::Interesting),
        Landmark::Threshold(Evocativeness::Mild),
    ];
}

impl fmt::Display for Landmark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Landmark::Qss(r) => write!(f, "qss_{}", r.code()),
            Landmark::Threshold(e) => write!(f, "threshold_{}", e.code()),
        }
    }
}

impl FromStr for Landmark {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown landmark '{s}' (expected qss_N|qss_I|qss_M|qss_S|threshold_I|threshold_M)"));
        let (kind, code) = s.split_once('_').ok_or_else(bad)?;
        let c = code.chars().next().filter(|_| code.len() == 1).ok_or_else(bad)?;
        match kind {
            "qss" => Region::from_code(c).map(Landmark::Qss).ok_or_else(bad),
            "threshold" => match c.to_ascii_uppercase() {
                'I' => Ok(Landmark::Threshold(Evocativeness::Interesting)),
                'M' => Ok(Landmark::Threshold(Evocativeness::Mild)),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

impl From<Landmark> for String {
    fn from(l: Landmark) -> String {
        l.to_string()
    }
}

impl TryFrom<String> for Landmark {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn point(v: f64) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn spanning(a: f64, b: f64) -> Self {
        Self { lo: a.min(b), hi: a.max(b) }
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

/// Value of the limit inclusion at `y`: the region's drift inside a region,
/// the interval between the two adjacent drifts on a threshold.
pub fn ldi_value(y: f64, th: &Thresholds, p: &ModelParams) -> Interval {
    for e in Evocativeness::ALL {
        if y == th.get(e) {
            let (left, right) = th.neighbors(e);
            return Interval::spanning(drift(left, y, p), drift(right, y, p));
        }
    }
    Interval::point(drift(region_of(y, th), y, p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    Stable,
    Unstable,
}

/// A steady state of the limit inclusion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LdiSteadyState {
    pub location: f64,
    pub landmark: Landmark,
    pub stability: Stability,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdOrder {
    InterestingBelowMild,
    MildBelowInteresting,
}

/// Which of the 40 strict orderings of the five live landmarks (two
/// thresholds, the no-sharing, intermediate and share-all quasi steady
/// states) holds.
///
/// The quasi steady states of the share-all and mild-only rules always lie
/// above those of the interesting-only and no-sharing rules, so once the
/// threshold order and the two threshold positions (1-based, among the five
/// sorted landmarks) are fixed, a single pair remains free: interesting vs
/// no-sharing when the intermediate region is interesting-only, mild vs
/// share-all when it is mild-only. `free_pair_low` names the lower member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConfigIndex {
    pub threshold_order: ThresholdOrder,
    pub threshold_positions: (u8, u8),
    pub free_pair_low: Region,
}

impl ConfigIndex {
    pub const COUNT: usize = 40;

    /// Builds the index from the five live landmarks sorted by location.
    pub fn from_sorted(sorted: &[Landmark; 5]) -> Result<Self> {
        let pos = |l: Landmark| sorted.iter().position(|&x| x == l).map(|i| i as u8 + 1);
        let ti = pos(Landmark::Threshold(Evocativeness::Interesting));
        let tm = pos(Landmark::Threshold(Evocativeness::Mild));
        let (ti, tm) = match (ti, tm) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::Inconsistent("thresholds missing from landmark list".into())),
        };
        let threshold_order =
            if ti < tm { ThresholdOrder::InterestingBelowMild } else { ThresholdOrder::MildBelowInteresting };
        let (a, b) = match threshold_order {
            ThresholdOrder::InterestingBelowMild => (Region::InterestingOnly, Region::NoSharing),
            ThresholdOrder::MildBelowInteresting => (Region::MildOnly, Region::All),
        };
        let (pa, pb) = match (pos(Landmark::Qss(a)), pos(Landmark::Qss(b))) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(Error::Inconsistent("free pair missing from landmark list".into())),
        };
        let cfg = Self {
            threshold_order,
            threshold_positions: (ti.min(tm), ti.max(tm)),
            free_pair_low: if pa < pb { a } else { b },
        };
        if cfg.ordering() != *sorted {
            return Err(Error::Inconsistent(format!("landmark order {sorted:?} violates the quasi steady state ordering")));
        }
        Ok(cfg)
    }

    /// The landmark order this configuration encodes, lowest first.
    pub fn ordering(&self) -> [Landmark; 5] {
        use Landmark::{Qss, Threshold};
        let (first, second, qss) = match self.threshold_order {
            ThresholdOrder::InterestingBelowMild => {
                let low_pair = if self.free_pair_low == Region::InterestingOnly {
                    [Region::InterestingOnly, Region::NoSharing]
                } else {
                    [Region::NoSharing, Region::InterestingOnly]
                };
                (Evocativeness::Interesting, Evocativeness::Mild, [low_pair[0], low_pair[1], Region::All])
            }
            ThresholdOrder::MildBelowInteresting => {
                let high_pair = if self.free_pair_low == Region::MildOnly {
                    [Region::MildOnly, Region::All]
                } else {
                    [Region::All, Region::MildOnly]
                };
                (Evocativeness::Mild, Evocativeness::Interesting, [Region::NoSharing, high_pair[0], high_pair[1]])
            }
        };
        let (i, j) = (self.threshold_positions.0 as usize, self.threshold_positions.1 as usize);
        let mut out = [Qss(Region::NoSharing); 5];
        let mut q = qss.iter();
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = if k + 1 == i {
                Threshold(first)
            } else if k + 1 == j {
                Threshold(second)
            } else {
                Qss(*q.next().expect("three quasi steady states"))
            };
        }
        out
    }

    /// Position in `0..40`.
    pub fn ordinal(&self) -> usize {
        let (i, j) = (self.threshold_positions.0 as usize, self.threshold_positions.1 as usize);
        let pair = PAIRS.iter().position(|&(a, b)| a == i && b == j).expect("valid threshold positions");
        let order = match self.threshold_order {
            ThresholdOrder::InterestingBelowMild => 0,
            ThresholdOrder::MildBelowInteresting => 1,
        };
        let free = match self.free_pair_low {
            Region::InterestingOnly | Region::MildOnly => 0,
            _ => 1,
        };
        order * 20 + pair * 2 + free
    }

    /// All 40 configurations in ordinal order.
    pub fn all() -> Vec<ConfigIndex> {
        let mut out = Vec::with_capacity(Self::COUNT);
        for order in [ThresholdOrder::InterestingBelowMild, ThresholdOrder::MildBelowInteresting] {
            for &(i, j) in PAIRS.iter() {
                let lows = match order {
                    ThresholdOrder::InterestingBelowMild => [Region::InterestingOnly, Region::NoSharing],
                    ThresholdOrder::MildBelowInteresting => [Region::MildOnly, Region::All],
                };
                for low in lows {
                    out.push(ConfigIndex { threshold_order: order, threshold_positions: (i as u8, j as u8), free_pair_low: low });
                }
            }
        }
        out
    }

    /// Short label, e.g. `I<M (2,3) qss_I<qss_N`.
    pub fn label(&self) -> String {
        let order = match self.threshold_order {
            ThresholdOrder::InterestingBelowMild => "I<M",
            ThresholdOrder::MildBelowInteresting => "M<I",
        };
        let other = match self.free_pair_low {
            Region::InterestingOnly => Region::NoSharing,
            Region::NoSharing => Region::InterestingOnly,
            Region::MildOnly => Region::All,
            Region::All => Region::MildOnly,
        };
        format!(
            "{order} ({},{}) qss_{}<qss_{}",
            self.threshold_positions.0,
            self.threshold_positions.1,
            self.free_pair_low.code(),
            other.code()
        )
    }
}

const PAIRS: [(usize, usize); 10] = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)];

/// Everything needed to draw the phase line and predict limits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitAnalysis {
    pub params: ModelParams,
    pub thresholds: Thresholds,
    pub qss: QuasiSteadyStates,
    /// Stable steady states of the inclusion, sorted by location.
    pub stable_set: Vec<LdiSteadyState>,
    /// Thresholds that are steady states but repel.
    pub unstable_set: Vec<LdiSteadyState>,
    pub configuration: ConfigIndex,
}

impl LimitAnalysis {
    pub fn location(&self, l: Landmark) -> f64 {
        match l {
            Landmark::Qss(r) => self.qss.get(r),
            Landmark::Threshold(e) => self.thresholds.get(e),
        }
    }

    /// The five live landmarks with locations, sorted ascending.
    pub fn live_landmarks(&self) -> [(Landmark, f64); 5] {
        live_landmarks(&self.thresholds, &self.qss)
    }

    /// Quasi steady states lying inside their own region.
    pub fn in_region_qss(&self) -> Vec<Region> {
        self.thresholds.regions().into_iter().filter(|&r| region_of(self.qss.get(r), &self.thresholds) == r).collect()
    }

    pub fn is_limit_point(&self, l: Landmark) -> bool {
        self.stable_set.iter().any(|s| s.landmark == l)
    }

    /// Landmarks of the stable set, in location order.
    pub fn composition(&self) -> Vec<Landmark> {
        self.stable_set.iter().map(|s| s.landmark).collect()
    }

    /// Sharing behavior at a stable steady state: the region's rule for a
    /// quasi steady state, the two adjacent rules for a threshold.
    pub fn limit_behavior(&self, l: Landmark) -> Vec<Region> {
        match l {
            Landmark::Qss(r) => vec![r],
            Landmark::Threshold(e) => {
                let (a, b) = self.thresholds.neighbors(e);
                vec![a, b]
            }
        }
    }
}

fn live_landmarks(th: &Thresholds, q: &QuasiSteadyStates) -> [(Landmark, f64); 5] {
    let inter = th.intermediate_region;
    let mut v = [
        (Landmark::Threshold(Evocativeness::Interesting), th.interesting),
        (Landmark::Threshold(Evocativeness::Mild), th.mild),
        (Landmark::Qss(Region::NoSharing), q.no_sharing),
        (Landmark::Qss(inter), q.get(inter)),
        (Landmark::Qss(Region::All), q.all),
    ];
    v.sort_by(|a, b| a.1.total_cmp(&b.1));
    v
}

/// Computes thresholds, quasi steady states, the stable and unstable steady
/// states of the limit inclusion and the configuration index.
///
/// A threshold between a left region `W` and a right region `Z` is stable
/// exactly when the quasi steady states straddle it inward
/// (`y*_Z < ŷ < y*_W`), and a repelling steady state when they straddle it
/// outward.
pub fn analyze(p: &ModelParams) -> Result<LimitAnalysis> {
    let th = thresholds(p)?;
    let qss = QuasiSteadyStates::compute(p);
    let live = live_landmarks(&th, &qss);
    for w in live.windows(2) {
        let gap = w[1].1 - w[0].1;
        if gap < KNIFE_EDGE_TOL {
            return Err(Error::KnifeEdge { first: w[0].0.to_string(), second: w[1].0.to_string(), gap });
        }
    }

    let mut stable_set = Vec::new();
    let mut unstable_set = Vec::new();
    for r in th.regions() {
        let y = qss.get(r);
        if region_of(y, &th) == r {
            stable_set.push(LdiSteadyState { location: y, landmark: Landmark::Qss(r), stability: Stability::Stable });
        }
    }
    for e in Evocativeness::ALL {
        let t = th.get(e);
        let (left, right) = th.neighbors(e);
        let (q_left, q_right) = (qss.get(left), qss.get(right));
        let landmark = Landmark::Threshold(e);
        if q_right < t && t < q_left {
            stable_set.push(LdiSteadyState { location: t, landmark, stability: Stability::Stable });
        } else if q_left < t && t < q_right {
            unstable_set.push(LdiSteadyState { location: t, landmark, stability: Stability::Unstable });
        }
    }
    if stable_set.iter().any(|s| s.landmark == Landmark::Threshold(Evocativeness::Mild)) {
        return Err(Error::Inconsistent(format!("mild threshold classified as stable for {p}")));
    }
    stable_set.sort_by(|a, b| a.location.total_cmp(&b.location));
    unstable_set.sort_by(|a, b| a.location.total_cmp(&b.location));

    let sorted: [Landmark; 5] = live.map(|(l, _)| l);
    let configuration = ConfigIndex::from_sorted(&sorted)?;
    Ok(LimitAnalysis { params: *p, thresholds: th, qss, stable_set, unstable_set, configuration })
}

/// Stability verdict from sampling the inclusion around a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanVerdict {
    Stable,
    Unstable,
    /// The flow has the same sign on both sides: not a steady state.
    NotSteady,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanLabel {
    pub landmark: Landmark,
    pub location: f64,
    pub verdict: ScanVerdict,
    pub half_width: f64,
}

/// Default one-sided scan width.
pub const SCAN_HALF_WIDTH: f64 = 1e-4;
/// Grid points per side.
pub const SCAN_POINTS: usize = 64;
/// Drift magnitudes below this make a scan inconclusive.
pub const SCAN_DEGENERATE: f64 = 1e-14;

/// Labels each live landmark by evaluating the sign of the inclusion on
/// dense grids just left and right of it.
///
/// This uses only drift signs, not the quasi-steady-state comparisons of
/// [`analyze`], and serves as an independent check on it. The half width
/// is [`SCAN_HALF_WIDTH`], shrunk to a quarter of the distance to the
/// nearest other landmark when they are closer, so the grid never crosses
/// another threshold.
pub fn classify_stability_by_scan(analysis: &LimitAnalysis, p: &ModelParams) -> Result<Vec<ScanLabel>> {
    let live = analysis.live_landmarks();
    let th = &analysis.thresholds;
    let mut out = Vec::with_capacity(live.len());
    for (k, &(landmark, y0)) in live.iter().enumerate() {
        let nearest = live
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &(_, y))| (y - y0).abs())
            .fold(f64::INFINITY, f64::min);
        let half_width = SCAN_HALF_WIDTH.min(0.25 * nearest);
        let side = |sign: f64| -> Result<(bool, bool)> {
            let (mut all_pos, mut all_neg) = (true, true);
            for i in 1..=SCAN_POINTS {
                let y = y0 + sign * half_width * i as f64 / SCAN_POINTS as f64;
                let g = drift(region_of(y, th), y, p);
                if g.abs() < SCAN_DEGENERATE {
                    return Err(Error::ScanInconclusive { location: y, drift: g });
                }
                all_pos &= g > 0.0;
                all_neg &= g < 0.0;
            }
            Ok((all_pos, all_neg))
        };
        let (left_pos, left_neg) = side(-1.0)?;
        let (right_pos, right_neg) = side(1.0)?;
        let verdict = if left_pos && right_neg {
            ScanVerdict::Stable
        } else if left_neg && right_pos {
            ScanVerdict::Unstable
        } else if (left_pos && right_pos) || (left_neg && right_neg) {
            ScanVerdict::NotSteady
        } else {
            return Err(Error::ScanInconclusive { location: y0, drift: f64::NAN });
        };
        out.push(ScanLabel { landmark, location: y0, verdict, half_width });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::random_params;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn golden_a() -> ModelParams {
        ModelParams::from_tuple(20.0, 8.0, 0.9, 1.0, 1.0, 0.65, 0.55).unwrap()
    }

    fn golden_b() -> ModelParams {
        ModelParams::from_tuple(1.0, 2.4, 0.9, 1.0, 1.0, 0.9, 0.65).unwrap()
    }

    #[test]
    fn drift_endpoints() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let p = random_params(&mut rng);
            for r in Region::ALL {
                assert!((drift(r, 0.0, &p) - 1.0).abs() <= 1e-12);
                assert!((drift(r, 1.0, &p) + p.kappa()).abs() <= 1e-12);
            }
            for i in 0..=10 {
                let y = i as f64 / 10.0;
                assert!((drift(Region::NoSharing, y, &p) - (1.0 - (1.0 + p.kappa()) * y)).abs() < 1e-14);
            }
        }
    }

    /// g = E[incoming true] − y·E[incoming total], computed from the move
    /// probabilities and increments rather than the closed form.
    #[test]
    fn drift_is_expected_inflow_balance() {
        use crate::dynamics::{increment, Move};
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let p = random_params(&mut rng);
            for r in Region::ALL {
                for i in 0..=20 {
                    let y = i as f64 / 20.0;
                    let s = sharing_probs(r, y, &p);
                    let moves = [
                        (s.p_true, Move::SharedTrue),
                        (s.p_false, Move::SharedFalse),
                        (1.0 - s.p_true - s.p_false, Move::NotShared),
                    ];
                    let (mut e_true, mut e_total) = (0.0, 0.0);
                    for (prob, mv) in moves {
                        let (dt, df) = increment(mv, &p);
                        e_true += prob * dt;
                        e_total += prob * (dt + df);
                    }
                    assert!((drift(r, y, &p) - (e_true - y * e_total)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn no_sharing_closed_form() {
        let p = ModelParams::from_tuple(1.0, 1.0, 0.75, 1.0, 1.0, 0.7, 0.75).unwrap();
        assert_eq!(quasi_steady_state(Region::NoSharing, &p), 0.5);
    }

    #[test]
    fn root_residuals() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..1000 {
            let p = random_params(&mut rng);
            for r in Region::ALL {
                let y = quasi_steady_state(r, &p);
                assert!(y > 0.0 && y < 1.0);
                assert!(drift(r, y, &p).abs() <= 1e-12, "{r:?} {p}");
            }
        }
    }

    #[test]
    fn mild_versus_all_crossover() {
        let at = |d: f64| ModelParams::from_tuple(1.0, 1.0, 0.75, 1.0, 1.0, d, 0.75).unwrap();
        let q = QuasiSteadyStates::compute(&at(0.70));
        assert!(q.mild < q.all);
        let q = QuasiSteadyStates::compute(&at(0.78));
        assert!(q.mild > q.all);
    }

    #[test]
    fn third_derivative_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let h = 1e-3;
        for _ in 0..200 {
            let p = random_params(&mut rng);
            for r in [Region::All, Region::InterestingOnly, Region::MildOnly] {
                for i in 1..40 {
                    let y = 0.05 + 0.9 * i as f64 / 40.0;
                    let g = |x: f64| drift(r, x, &p);
                    let d3 = (g(y + 2.0 * h) - 2.0 * g(y + h) + 2.0 * g(y - h) - g(y - 2.0 * h)) / (2.0 * h * h * h);
                    assert!(d3 > 0.0, "{r:?} y={y} d3={d3} {p}");
                }
            }
        }
    }

    #[test]
    fn inclusion_values() {
        let p = golden_a();
        let a = analyze(&p).unwrap();
        let th = a.thresholds;
        let y = 0.5 * (th.upper() + 1.0);
        assert_eq!(ldi_value(y, &th, &p), Interval::point(drift(Region::All, y, &p)));
        let v = ldi_value(th.interesting, &th, &p);
        assert!(v.lo < v.hi);
        assert_eq!(v, Interval::spanning(drift(Region::NoSharing, th.interesting, &p), drift(Region::InterestingOnly, th.interesting, &p)));
        // The stable threshold traps the flow: 0 lies inside the interval.
        assert!(v.contains(0.0));
        assert_eq!(Interval::spanning(0.2, -0.1), Interval { lo: -0.1, hi: 0.2 });
        for r in a.in_region_qss() {
            assert!(ldi_value(a.qss.get(r), &th, &p).lo.abs() < 1e-12);
        }
    }

    #[test]
    fn golden_flip_configurations() {
        let a = analyze(&golden_a()).unwrap();
        assert!(a.thresholds.interesting < a.thresholds.mild);
        assert!(a.qss.interesting < a.thresholds.interesting && a.thresholds.interesting < a.qss.no_sharing);
        assert_eq!(a.composition(), vec![Landmark::Threshold(Evocativeness::Interesting)]);

        let b = analyze(&golden_b()).unwrap();
        assert!(b.thresholds.interesting > b.thresholds.mild);
        assert!(b.qss.all < b.thresholds.interesting && b.thresholds.interesting < b.qss.mild);
        assert_eq!(b.composition(), vec![Landmark::Threshold(Evocativeness::Interesting)]);
    }

    #[test]
    fn scan_agrees_with_flip_test() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for p in (0..500).map(|_| random_params(&mut rng)).chain([golden_a(), golden_b()]) {
            let Ok(a) = analyze(&p) else { continue };
            let labels = classify_stability_by_scan(&a, &p).unwrap();
            for l in labels {
                let expected = if a.stable_set.iter().any(|s| s.landmark == l.landmark) {
                    ScanVerdict::Stable
                } else if a.unstable_set.iter().any(|s| s.landmark == l.landmark) {
                    ScanVerdict::Unstable
                } else {
                    ScanVerdict::NotSteady
                };
                assert_eq!(l.verdict, expected, "{:?} in {p}", l.landmark);
            }
        }
    }

    #[test]
    fn configurations_are_forty() {
        let all = ConfigIndex::all();
        assert_eq!(all.len(), 40);
        for (k, c) in all.iter().enumerate() {
            assert_eq!(c.ordinal(), k);
            assert_eq!(ConfigIndex::from_sorted(&c.ordering()).unwrap(), *c);
        }
        let labels: std::collections::HashSet<_> = all.iter().map(|c| c.label()).collect();
        assert_eq!(labels.len(), 40);
    }

    #[test]
    fn ordering_against_quasi_steady_states() {
        let bad = [
            Landmark::Qss(Region::All),
            Landmark::Threshold(Evocativeness::Interesting),
            Landmark::Threshold(Evocativeness::Mild),
            Landmark::Qss(Region::NoSharing),
            Landmark::Qss(Region::InterestingOnly),
        ];
        assert!(ConfigIndex::from_sorted(&bad).is_err());
    }

    #[test]
    fn landmark_names_round_trip() {
        for l in Landmark::ALL {
            assert_eq!(l.to_string().parse::<Landmark>().unwrap(), l);
        }
        assert!("qss_X".parse::<Landmark>().is_err());
    }
}
