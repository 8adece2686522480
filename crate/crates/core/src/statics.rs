//! Parameter sweeps and comparative statics of the limit points.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::attention::{attention_level, threshold};
use crate::error::{Error, Result};
use crate::limit::{analyze, quasi_steady_state, Landmark, LimitAnalysis};
use crate::params::{Evocativeness, ModelParams, ParamSet, Region};
use crate::roots::{bisect, bisect_predicate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    Rho,
    Kappa,
    Theta,
    Mu,
    Beta,
    Delta,
    Lambda,
}

impl Param {
    pub const ALL: [Param; 7] = [Param::Rho, Param::Kappa, Param::Theta, Param::Mu, Param::Beta, Param::Delta, Param::Lambda];

    pub fn name(self) -> &'static str {
        match self {
            Param::Rho => "rho",
            Param::Kappa => "kappa",
            Param::Theta => "theta",
            Param::Mu => "mu",
            Param::Beta => "beta",
            Param::Delta => "delta",
            Param::Lambda => "lambda",
        }
    }

    pub fn get(self, p: &ModelParams) -> f64 {
        match self {
            Param::Rho => p.rho(),
            Param::Kappa => p.kappa(),
            Param::Theta => p.theta(),
            Param::Mu => p.mu(),
            Param::Beta => p.beta(),
            Param::Delta => p.delta(),
            Param::Lambda => p.lambda(),
        }
    }

    /// `p` with this parameter replaced by `v`, revalidated.
    pub fn with(self, p: &ModelParams, v: f64) -> Result<ModelParams> {
        let mut raw: ParamSet = p.raw();
        match self {
            Param::Rho => raw.rho = v,
            Param::Kappa => raw.kappa = v,
            Param::Theta => raw.theta = v,
            Param::Mu => raw.mu = v,
            Param::Beta => raw.beta = v,
            Param::Delta => raw.delta = v,
            Param::Lambda => raw.lambda = v,
        }
        ModelParams::new(raw)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Param::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown parameter '{s}' (expected rho|kappa|theta|mu|beta|delta|lambda)")))
    }
}

/// Location of a landmark computed directly, without the knife-edge checks
/// of [`analyze`]. Thresholds are computed one at a time so that their
/// crossing can be located.
pub fn landmark_value(l: Landmark, p: &ModelParams) -> Result<f64> {
    match l {
        Landmark::Qss(r) => Ok(quasi_steady_state(r, p)),
        Landmark::Threshold(e) => threshold(e, p),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Log,
}

/// `n` points from `lo` to `hi` inclusive.
pub fn grid(lo: f64, hi: f64, n: usize, spacing: Spacing) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match spacing {
                    Spacing::Linear => lo + t * (hi - lo),
                    Spacing::Log => (lo.ln() + t * (hi.ln() - lo.ln())).exp(),
                }
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub value: f64,
    pub analysis: LimitAnalysis,
}

/// A grid value that could not be analyzed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedPoint {
    pub value: f64,
    pub reason: String,
    pub kind: String,
}

/// Interval between adjacent analyzed grid points across which the stable
/// set changes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transition {
    pub lo: f64,
    pub hi: f64,
    pub before: Vec<Landmark>,
    pub after: Vec<Landmark>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub parameter: Param,
    pub base: ModelParams,
    pub points: Vec<SweepPoint>,
    pub skipped: Vec<SkippedPoint>,
    pub transitions: Vec<Transition>,
}

/// Analyzes every grid value of `param` with the other parameters held at
/// `base`. Invalid and knife-edge grid values are recorded and skipped.
pub fn sweep(param: Param, values: &[f64], base: &ModelParams) -> Result<SweepResult> {
    let outcomes: Vec<(f64, Result<LimitAnalysis>)> =
        values.par_iter().map(|&v| (v, param.with(base, v).and_then(|p| analyze(&p)))).collect();
    let mut points = Vec::new();
    let mut skipped = Vec::new();
    for (value, outcome) in outcomes {
        match outcome {
            Ok(analysis) => points.push(SweepPoint { value, analysis }),
            Err(e @ (Error::InvalidParams(_) | Error::KnifeEdge { .. })) => {
                skipped.push(SkippedPoint { value, reason: e.to_string(), kind: e.kind().into() })
            }
            Err(e) => return Err(e),
        }
    }
    if points.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if points.windows(2).any(|w| !(w[0].value < w[1].value)) {
        return Err(Error::InvalidArgument("sweep grid must be strictly increasing".into()));
    }
    let transitions = points
        .windows(2)
        .filter_map(|w| {
            let (a, b) = (w[0].analysis.composition(), w[1].analysis.composition());
            (a != b).then(|| Transition { lo: w[0].value, hi: w[1].value, before: a, after: b })
        })
        .collect();
    Ok(SweepResult { parameter: param, base: *base, points, skipped, transitions })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictedSign {
    Positive,
    Negative,
    Zero,
}

impl PredictedSign {
    pub fn symbol(self) -> char {
        match self {
            PredictedSign::Positive => '+',
            PredictedSign::Negative => '-',
            PredictedSign::Zero => '0',
        }
    }
}

/// Largest change tolerated for a landmark predicted to be constant.
pub const CONSTANT_TOL: f64 = 1e-9;

/// The comparative-statics cells with a definite prediction. The θ
/// dependence of the quasi steady states and the δ dependence of `y*_S` are
/// non-monotone and covered by [`theta_shape`] and [`derivative`] instead.
pub const SIGN_CELLS: [(Landmark, Param); 38] = {
    use Evocativeness::{Interesting, Mild};
    use Landmark::{Qss, Threshold};
    use Param::*;
    use Region::*;
    [
        (Qss(All), Rho),
        (Qss(All), Kappa),
        (Qss(All), Mu),
        (Qss(All), Beta),
        (Qss(All), Lambda),
        (Qss(MildOnly), Rho),
        (Qss(MildOnly), Kappa),
        (Qss(MildOnly), Mu),
        (Qss(MildOnly), Beta),
        (Qss(MildOnly), Delta),
        (Qss(MildOnly), Lambda),
        (Qss(InterestingOnly), Rho),
        (Qss(InterestingOnly), Kappa),
        (Qss(InterestingOnly), Mu),
        (Qss(InterestingOnly), Beta),
        (Qss(InterestingOnly), Delta),
        (Qss(InterestingOnly), Lambda),
        (Qss(NoSharing), Rho),
        (Qss(NoSharing), Kappa),
        (Qss(NoSharing), Theta),
        (Qss(NoSharing), Mu),
        (Qss(NoSharing), Beta),
        (Qss(NoSharing), Delta),
        (Qss(NoSharing), Lambda),
        (Threshold(Interesting), Rho),
        (Threshold(Interesting), Kappa),
        (Threshold(Interesting), Theta),
        (Threshold(Interesting), Mu),
        (Threshold(Interesting), Beta),
        (Threshold(Interesting), Delta),
        (Threshold(Interesting), Lambda),
        (Threshold(Mild), Rho),
        (Threshold(Mild), Kappa),
        (Threshold(Mild), Theta),
        (Threshold(Mild), Mu),
        (Threshold(Mild), Beta),
        (Threshold(Mild), Delta),
        (Threshold(Mild), Lambda),
    ]
};

/// Predicted sign of `d target / d param` at `base`, if the cell has a
/// definite prediction.
///
/// The ρ dependence of `y*_I` is conditional: increasing when users share a
/// larger fraction of true than of false stories, `½ > δθ(1 − a(y*_I, I))`,
/// decreasing when the inequality is reversed.
pub fn predicted_sign(target: Landmark, param: Param, base: &ModelParams) -> Option<PredictedSign> {
    use Evocativeness::{Interesting, Mild};
    use Landmark::{Qss, Threshold};
    use PredictedSign::{Negative, Positive, Zero};
    let s = match (target, param) {
        (Qss(Region::NoSharing), Param::Kappa) => Negative,
        (Qss(Region::NoSharing), _) => Zero,
        (Qss(Region::InterestingOnly), Param::Rho) => {
            let y = quasi_steady_state(Region::InterestingOnly, base);
            let shared_false = base.delta() * base.theta() * (1.0 - attention_level(y, Interesting, base));
            if 0.5 > shared_false {
                Positive
            } else {
                Negative
            }
        }
        (Qss(_), Param::Theta) => return None,
        (Qss(Region::All), Param::Delta) => return None,
        (Qss(Region::InterestingOnly), Param::Delta) => Negative,
        (Qss(_), Param::Kappa | Param::Beta) => Negative,
        (Qss(_), _) => Positive,
        (Threshold(_), Param::Kappa | Param::Rho) => Zero,
        (Threshold(Mild), Param::Delta | Param::Lambda) => Negative,
        (Threshold(_), _) => Positive,
    };
    Some(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignVerdict {
    Pass,
    Fail,
    /// The landmark's role in the stable set changes within the stencil.
    NotComparable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignReport {
    pub target: Landmark,
    pub parameter: Param,
    pub base: ModelParams,
    pub predicted: PredictedSign,
    pub h: f64,
    pub value_minus: f64,
    pub value_plus: f64,
    /// Central difference quotient.
    pub derivative: f64,
    /// Whether the landmark is a limit point at the base.
    pub limit_point: bool,
    pub verdict: SignVerdict,
}

/// Default finite-difference step for a parameter currently at `v`.
pub fn default_step(v: f64) -> f64 {
    1e-5 * v.abs().max(1.0)
}

/// Stencil values `(f(base − h), f(base + h))` of a landmark.
fn stencil(target: Landmark, param: Param, base: &ModelParams, h: f64) -> Result<(ModelParams, ModelParams, f64, f64)> {
    let v = param.get(base);
    let lo = param.with(base, v - h)?;
    let hi = param.with(base, v + h)?;
    Ok((lo, hi, landmark_value(target, &lo)?, landmark_value(target, &hi)?))
}

/// Central difference of a landmark with respect to a parameter.
pub fn derivative(target: Landmark, param: Param, base: &ModelParams) -> Result<f64> {
    let h = default_step(param.get(base));
    let (_, _, a, b) = stencil(target, param, base, h)?;
    Ok((b - a) / (2.0 * h))
}

/// Checks the sign of `d target / d param` at `base` against the prediction.
///
/// The stencil is comparable only if the landmark's membership in the
/// stable set is the same at `base − h`, `base` and `base + h`.
pub fn sign_check(target: Landmark, param: Param, base: &ModelParams, h: Option<f64>) -> Result<SignReport> {
    let predicted = predicted_sign(target, param, base)
        .ok_or_else(|| Error::InvalidArgument(format!("no definite sign predicted for {target} in {param}")))?;
    let h = h.unwrap_or_else(|| default_step(param.get(base)));
    let (lo, hi, value_minus, value_plus) = stencil(target, param, base, h)?;
    let membership = |p: &ModelParams| analyze(p).map(|a| a.is_limit_point(target)).ok();
    let at_base = membership(base);
    let comparable = at_base.is_some() && at_base == membership(&lo) && at_base == membership(&hi);
    let diff = value_plus - value_minus;
    let verdict = if !comparable {
        SignVerdict::NotComparable
    } else {
        let ok = match predicted {
            PredictedSign::Positive => diff > 0.0,
            PredictedSign::Negative => diff < 0.0,
            PredictedSign::Zero => diff.abs() <= CONSTANT_TOL,
        };
        if ok {
            SignVerdict::Pass
        } else {
            SignVerdict::Fail
        }
    };
    Ok(SignReport {
        target,
        parameter: param,
        base: *base,
        predicted,
        h,
        value_minus,
        value_plus,
        derivative: diff / (2.0 * h),
        limit_point: at_base.unwrap_or(false),
        verdict,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    DecreasingThenIncreasing,
    MonotoneDecreasing,
    MonotoneIncreasing,
    Other,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaShape {
    pub target: Region,
    pub base: ModelParams,
    pub grid: Vec<f64>,
    pub derivative: Vec<f64>,
    pub shape: Shape,
    /// Location of the sign change of the derivative, refined by bisection.
    pub turning_point: Option<f64>,
}

/// Lowest credibility examined by [`theta_shape`].
pub const THETA_MIN: f64 = 0.01;

/// Admissible credibility range `(THETA_MIN, min(1, 2β/μ) − 1e-6)`.
pub fn theta_range(base: &ModelParams) -> (f64, f64) {
    (THETA_MIN, 1f64.min(2.0 * base.beta() / base.mu()) - 1e-6)
}

/// Shape of `y*_target` as a function of θ on the admissible range.
pub fn theta_shape(target: Region, base: &ModelParams, n_points: usize) -> Result<ThetaShape> {
    if n_points < 2 {
        return Err(Error::InvalidArgument("theta_shape needs at least two grid points".into()));
    }
    let (lo, hi) = theta_range(base);
    let margin = 2.0 * default_step(hi);
    let thetas = grid(lo + margin, hi - margin, n_points, Spacing::Linear);
    let d = |t: f64| -> Result<f64> { derivative(Landmark::Qss(target), Param::Theta, &Param::Theta.with(base, t)?) };
    let derivs = thetas.iter().map(|&t| d(t)).collect::<Result<Vec<_>>>()?;
    let changes: Vec<usize> = (1..derivs.len()).filter(|&i| (derivs[i - 1] < 0.0) != (derivs[i] < 0.0)).collect();
    let (shape, turning_point) = match changes.as_slice() {
        [] if derivs[0] < 0.0 => (Shape::MonotoneDecreasing, None),
        [] => (Shape::MonotoneIncreasing, None),
        [i] if derivs[*i - 1] < 0.0 => {
            let (a, b) = (thetas[*i - 1], thetas[*i]);
            let (t, _) = bisect_predicate(|t| d(t).map(|v| v < 0.0).unwrap_or(false), a, b, 1e-7);
            (Shape::DecreasingThenIncreasing, Some(t))
        }
        _ => (Shape::Other, None),
    };
    Ok(ThetaShape { target, base: *base, grid: thetas, derivative: derivs, shape, turning_point })
}

/// Root in `[lo, hi]` of `f` applied to the base with `param` varied.
pub fn crossover<F>(param: Param, base: &ModelParams, lo: f64, hi: f64, f: F) -> Result<f64>
where
    F: Fn(&ModelParams) -> Result<f64>,
{
    let eval = |v: f64| param.with(base, v).and_then(|p| f(&p)).unwrap_or(f64::NAN);
    let (f_lo, f_hi) = (eval(lo), eval(hi));
    if !(f_lo * f_hi < 0.0) {
        return Err(Error::NoBracket { lo, hi, f_lo, f_hi });
    }
    bisect(eval, lo, hi)
}

/// Difference of two landmark locations, `a − b`.
pub fn landmark_gap(a: Landmark, b: Landmark) -> impl Fn(&ModelParams) -> Result<f64> {
    move |p| Ok(landmark_value(a, p)? - landmark_value(b, p)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KappaBounds {
    pub base: ModelParams,
    /// Largest κ with only the share-all quasi steady state stable.
    pub kappa1: f64,
    /// Smallest κ with only the no-sharing quasi steady state stable.
    pub kappa2: f64,
    pub tol: f64,
}

/// Bisection tolerance for [`kappa_bounds`].
pub const KAPPA_TOL: f64 = 1e-6;

fn only(l: Landmark, base: &ModelParams, kappa: f64) -> bool {
    Param::Kappa
        .with(base, kappa)
        .and_then(|p| analyze(&p))
        .map(|a| a.composition() == [l])
        .unwrap_or(false)
}

/// The κ regimes: for small κ every quasi steady state is pushed toward 1
/// and only `y*_S` is stable; for large κ toward 0 and only `y*_N` is.
///
/// A 400-point log grid over `[lo, hi]` locates the last share-all point of
/// the initial run and the first point of the final no-sharing run; each is
/// then refined by bisection to [`KAPPA_TOL`].
pub fn kappa_bounds(base: &ModelParams, lo: f64, hi: f64) -> Result<KappaBounds> {
    let all = Landmark::Qss(Region::All);
    let none = Landmark::Qss(Region::NoSharing);
    if !(0.0 < lo && lo < hi) {
        return Err(Error::InvalidArgument(format!("kappa search range [{lo}, {hi}] is empty")));
    }
    if !only(all, base, lo) {
        return Err(Error::BoundsNotBracketed(format!("stable set at kappa = {lo} is not share-all only")));
    }
    if !only(none, base, hi) {
        return Err(Error::BoundsNotBracketed(format!("stable set at kappa = {hi} is not no-sharing only")));
    }
    let ks = grid(lo, hi, 400, Spacing::Log);
    let first_fail = ks.iter().position(|&k| !only(all, base, k)).expect("hi is not share-all only");
    let (kappa1, _) = bisect_predicate(|k| only(all, base, k), ks[first_fail - 1], ks[first_fail], KAPPA_TOL);
    let last_fail = ks.iter().rposition(|&k| !only(none, base, k)).expect("lo is not no-sharing only");
    let (_, kappa2) = bisect_predicate(|k| !only(none, base, k), ks[last_fail], ks[last_fail + 1], KAPPA_TOL);
    if !(kappa1 < kappa2) {
        return Err(Error::Inconsistent(format!("kappa bounds out of order: {kappa1} >= {kappa2}")));
    }
    Ok(KappaBounds { base: *base, kappa1, kappa2, tol: KAPPA_TOL })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::random_params;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn base(delta: f64) -> ModelParams {
        ModelParams::from_tuple(1.0, 1.0, 0.75, 1.0, 1.0, delta, 0.75).unwrap()
    }

    #[test]
    fn param_round_trip() {
        let p = base(0.7);
        for q in Param::ALL {
            assert_eq!(q.name().parse::<Param>().unwrap(), q);
            assert_eq!(q.get(&q.with(&p, q.get(&p)).unwrap()), q.get(&p));
        }
        assert!(Param::Delta.with(&p, 0.4).is_err());
        assert!("gamma".parse::<Param>().is_err());
    }

    #[test]
    fn single_point_sweep() {
        let p = base(0.7);
        let s = sweep(Param::Kappa, &[1.0], &p).unwrap();
        assert_eq!(s.points.len(), 1);
        assert!(s.transitions.is_empty());
        assert_eq!(s.points[0].analysis, analyze(&p).unwrap());
    }

    #[test]
    fn sweep_skips_invalid_points() {
        let s = sweep(Param::Delta, &[0.3, 0.7, 1.2], &base(0.7)).unwrap();
        assert_eq!(s.points.len(), 1);
        assert_eq!(s.skipped.len(), 2);
        assert!(matches!(sweep(Param::Delta, &[0.3], &base(0.7)), Err(Error::EmptyGrid)));
    }

    #[test]
    fn kappa_sweep_ends() {
        let s = sweep(Param::Kappa, &grid(0.05, 30.0, 60, Spacing::Log), &base(0.7)).unwrap();
        assert_eq!(s.points.first().unwrap().analysis.composition(), [Landmark::Qss(Region::All)]);
        assert_eq!(s.points.last().unwrap().analysis.composition(), [Landmark::Qss(Region::NoSharing)]);
        assert!(!s.transitions.is_empty());
    }

    #[test]
    fn delta_sweep_flips_threshold_order() {
        let s = sweep(Param::Delta, &grid(0.51, 0.99, 97, Spacing::Linear), &base(0.7)).unwrap();
        let flips: Vec<_> = s
            .points
            .windows(2)
            .filter(|w| w[0].analysis.thresholds.intermediate_region != w[1].analysis.thresholds.intermediate_region)
            .collect();
        assert_eq!(flips.len(), 1);
        assert!(flips[0][0].value < 0.664 && 0.664 < flips[0][1].value);
    }

    #[test]
    fn threshold_order_crossover() {
        let ti = Landmark::Threshold(Evocativeness::Interesting);
        let tm = Landmark::Threshold(Evocativeness::Mild);
        let d = crossover(Param::Delta, &base(0.7), 0.51, 0.99, landmark_gap(ti, tm)).unwrap();
        assert!((d - 0.664).abs() < 0.005, "{d}");
    }

    #[test]
    fn spec_sign_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let cells = [
            (Landmark::Qss(Region::All), Param::Kappa, PredictedSign::Negative),
            (Landmark::Threshold(Evocativeness::Interesting), Param::Rho, PredictedSign::Zero),
            (Landmark::Threshold(Evocativeness::Interesting), Param::Beta, PredictedSign::Positive),
        ];
        for (l, q, s) in cells {
            let p = random_params(&mut rng);
            assert_eq!(predicted_sign(l, q, &p), Some(s));
        }
    }

    /// Signs of the landmark derivatives hold wherever the landmark is
    /// defined, not only where it is a limit point; this also covers the
    /// mild threshold, which never is one.
    #[test]
    fn signs_hold_off_the_stable_set() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..150 {
            let p = random_params(&mut rng);
            for (l, q) in SIGN_CELLS {
                let Ok(d) = derivative(l, q, &p) else { continue };
                match predicted_sign(l, q, &p).unwrap() {
                    PredictedSign::Positive => assert!(d > 0.0, "{l} {q} {p} {d}"),
                    PredictedSign::Negative => assert!(d < 0.0, "{l} {q} {p} {d}"),
                    PredictedSign::Zero => assert!(d.abs() * 2.0 * default_step(q.get(&p)) <= CONSTANT_TOL),
                }
            }
        }
    }

    #[test]
    fn sign_without_prediction_is_rejected() {
        let r = sign_check(Landmark::Qss(Region::All), Param::Theta, &base(0.7), None);
        assert!(matches!(r, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn all_qss_delta_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let l = Landmark::Qss(Region::All);
        for _ in 0..200 {
            let p = random_params(&mut rng);
            let lo = derivative(l, Param::Delta, &Param::Delta.with(&p, 0.5 + 1e-4).unwrap()).unwrap();
            let hi = derivative(l, Param::Delta, &Param::Delta.with(&p, 1.0 - 1e-4).unwrap()).unwrap();
            assert!(lo < 0.0 && hi > 0.0, "{p}: {lo} {hi}");
        }
    }

    #[test]
    fn theta_goldens() {
        let cases = [
            (Region::All, (0.3, 1.5, 0.5, 0.6, 0.3, 0.55, 0.95), 0.95),
            (Region::MildOnly, (1.0, 8.0, 0.5, 0.6, 0.3, 0.9, 0.95), 0.87),
            (Region::InterestingOnly, (0.45, 3.0, 0.5, 0.6, 0.3, 0.53, 0.9), 0.9),
        ];
        for (r, t, quoted) in cases {
            let p = ModelParams::from_tuple(t.0, t.1, t.2, t.3, t.4, t.5, t.6).unwrap();
            let s = theta_shape(r, &p, 60).unwrap();
            assert_eq!(s.shape, Shape::DecreasingThenIncreasing, "{r:?}");
            assert!((s.turning_point.unwrap() - quoted).abs() < 0.03, "{r:?} {:?}", s.turning_point);
        }
    }

    #[test]
    fn kappa_regimes() {
        let p = base(0.7);
        let b = kappa_bounds(&p, 0.05, 30.0).unwrap();
        assert!(0.0 < b.kappa1 && b.kappa1 < b.kappa2);
        assert!(only(Landmark::Qss(Region::All), &p, b.kappa1));
        assert!(!only(Landmark::Qss(Region::All), &p, b.kappa1 + 2.0 * KAPPA_TOL));
        assert!(only(Landmark::Qss(Region::NoSharing), &p, b.kappa2));
        assert!(!only(Landmark::Qss(Region::NoSharing), &p, b.kappa2 - 2.0 * KAPPA_TOL));
        // Cross-check against a coarse sweep.
        let s = sweep(Param::Kappa, &grid(0.05, 30.0, 50, Spacing::Log), &p).unwrap();
        for pt in &s.points {
            let c = pt.analysis.composition();
            if pt.value < b.kappa1 {
                assert_eq!(c, [Landmark::Qss(Region::All)]);
            }
            if pt.value > b.kappa2 {
                assert_eq!(c, [Landmark::Qss(Region::NoSharing)]);
            }
        }
        assert!(matches!(kappa_bounds(&p, 5.0, 30.0), Err(Error::BoundsNotBracketed(_))));
    }
}
