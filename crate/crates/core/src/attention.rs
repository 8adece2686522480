//! Optimal attention, the payoff from sharing on a "looks true" signal, the
//! value of sharing, and the two indifference thresholds.
//!
//! A user who shares a story of evocativeness `e` whenever it looks true
//! earns
//!
//! ```text
//! U(a, y, M) = λ(y − 2μ(1−y)(1−δ)θ)/D_M + 2λμ(1−y)(1−δ)θ·a/D_M − βa²
//! U(a, y, I) = (y + 2(1−y)δθ((1−λ) − λμ))/D_I + 2(1−y)δθ(λμ − (1−λ))·a/D_I − βa²
//! ```
//!
//! with `D_M = y + 2(1−y)(1−δ)` and `D_I = y + 2(1−y)δ`. Both are strictly
//! concave in `a`; the maximizer is [`attention_level`] and the maximum is
//! [`value`]. The value is strictly increasing in `y`, negative at `y = 0`
//! and positive at `y = 1`, so each evocativeness level has a unique
//! threshold share below which users stop sharing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{Evocativeness, ModelParams, Region, KNIFE_EDGE_TOL};
use crate::roots::bisect;

#[inline]
fn mild_denominator(y: f64, p: &ModelParams) -> f64 {
    y + 2.0 * (1.0 - y) * (1.0 - p.delta())
}

#[inline]
fn interesting_denominator(y: f64, p: &ModelParams) -> f64 {
    y + 2.0 * (1.0 - y) * p.delta()
}

/// Optimal attention for a user who will share `e`-stories that look true,
/// at true-story share `y`.
///
/// The closed form lies in `[0, 1]` for every valid parameter set; a value
/// outside that range means the parameter check is broken, so it panics
/// rather than clamping.
#[inline]
pub fn attention_level(y: f64, e: Evocativeness, p: &ModelParams) -> f64 {
    let a = match e {
        Evocativeness::Mild => {
            p.lambda() * p.mu() * (1.0 - y) * (1.0 - p.delta()) * p.theta() / (p.beta() * mild_denominator(y, p))
        }
        Evocativeness::Interesting => {
            (1.0 - y) * p.delta() * p.theta() * p.net_interesting_penalty() / (p.beta() * interesting_denominator(y, p))
        }
    };
    assert!((0.0..=1.0).contains(&a), "attention {a} outside [0, 1] at y = {y} for {p}");
    a
}

/// Expected payoff from sharing `e`-stories on the "looks true" signal with
/// attention `a`, net of the attention cost `β·a²`.
pub fn sharing_utility(a: f64, y: f64, e: Evocativeness, p: &ModelParams) -> f64 {
    let cost = p.beta() * a * a;
    match e {
        Evocativeness::Mild => {
            let d = mild_denominator(y, p);
            let false_mass = (1.0 - y) * (1.0 - p.delta()) * p.theta();
            p.lambda() * (y - 2.0 * p.mu() * false_mass) / d + 2.0 * p.lambda() * p.mu() * false_mass * a / d - cost
        }
        Evocativeness::Interesting => {
            let d = interesting_denominator(y, p);
            let false_mass = (1.0 - y) * p.delta() * p.theta();
            let net = p.net_interesting_penalty();
            (y - 2.0 * false_mass * net) / d + 2.0 * false_mass * net * a / d - cost
        }
    }
}

/// Value of sharing `e`-stories at share `y`: [`sharing_utility`] at the
/// optimal attention level, evaluated in closed form.
pub fn value(y: f64, e: Evocativeness, p: &ModelParams) -> f64 {
    match e {
        Evocativeness::Mild => {
            let d = mild_denominator(y, p);
            let false_mass = (1.0 - y) * (1.0 - p.delta()) * p.theta();
            let gain = p.lambda() * p.mu() * false_mass / d;
            p.lambda() * (y - 2.0 * p.mu() * false_mass) / d + gain * gain / p.beta()
        }
        Evocativeness::Interesting => {
            let d = interesting_denominator(y, p);
            let false_mass = (1.0 - y) * p.delta() * p.theta();
            let net = p.net_interesting_penalty();
            let gain = false_mass * net / d;
            (y - 2.0 * false_mass * net) / d + gain * gain / p.beta()
        }
    }
}

/// The two indifference thresholds.
///
/// Below `min(interesting, mild)` nobody shares; above the max everybody
/// shares every story that looks true; in between only the evocativeness
/// level with the lower threshold is shared.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Share at which users are indifferent about very interesting stories.
    pub interesting: f64,
    /// Share at which users are indifferent about mildly interesting stories.
    pub mild: f64,
    pub intermediate_region: Region,
}

impl Thresholds {
    /// Builds the region map from two threshold values, rejecting
    /// coincident thresholds.
    pub fn new(interesting: f64, mild: f64) -> Result<Self> {
        let gap = (interesting - mild).abs();
        if gap < KNIFE_EDGE_TOL {
            return Err(Error::KnifeEdge { first: "interesting threshold".into(), second: "mild threshold".into(), gap });
        }
        let intermediate_region = if interesting < mild { Region::InterestingOnly } else { Region::MildOnly };
        Ok(Self { interesting, mild, intermediate_region })
    }

    #[inline]
    pub fn lower(&self) -> f64 {
        self.interesting.min(self.mild)
    }

    #[inline]
    pub fn upper(&self) -> f64 {
        self.interesting.max(self.mild)
    }

    pub fn get(&self, e: Evocativeness) -> f64 {
        match e {
            Evocativeness::Mild => self.mild,
            Evocativeness::Interesting => self.interesting,
        }
    }

    /// Regions immediately left and right of the threshold for `e`.
    pub fn neighbors(&self, e: Evocativeness) -> (Region, Region) {
        let inter = self.intermediate_region;
        if self.get(e) == self.lower() {
            (Region::NoSharing, inter)
        } else {
            (inter, Region::All)
        }
    }

    /// The three regions present, left to right.
    pub fn regions(&self) -> [Region; 3] {
        [Region::NoSharing, self.intermediate_region, Region::All]
    }
}

/// Root of `V(·, e)` on `[0, 1]`.
pub fn threshold(e: Evocativeness, p: &ModelParams) -> Result<f64> {
    bisect(|y| value(y, e, p), 0.0, 1.0)
}

/// Both thresholds and the induced region partition.
pub fn thresholds(p: &ModelParams) -> Result<Thresholds> {
    Thresholds::new(threshold(Evocativeness::Interesting, p)?, threshold(Evocativeness::Mild, p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ROOT_TOL;
    use crate::sampling::random_params;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn reference() -> ModelParams {
        ModelParams::from_tuple(1.0, 1.0, 0.75, 1.0, 1.0, 0.7, 0.75).unwrap()
    }

    /// Brute-force maximizer of `U(·, y, e)` on the grid {0, 1e-4, ..., 1}.
    fn grid_argmax(y: f64, e: Evocativeness, p: &ModelParams) -> f64 {
        (0..=10_000)
            .map(|i| i as f64 * 1e-4)
            .map(|a| (a, sharing_utility(a, y, e, p)))
            .fold((0.0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best })
            .0
    }

    #[test]
    fn no_attention_when_everything_is_true() {
        let p = reference();
        assert_eq!(attention_level(1.0, Evocativeness::Mild, &p), 0.0);
        assert_eq!(attention_level(1.0, Evocativeness::Interesting, &p), 0.0);
    }

    #[test]
    fn closed_form_matches_grid_search() {
        let p = reference();
        for e in Evocativeness::ALL {
            let a = attention_level(0.5, e, &p);
            assert!((a - grid_argmax(0.5, e, &p)).abs() <= 1e-4, "{e:?}: {a}");
        }
    }

    #[test]
    fn attention_falls_with_share() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let p = random_params(&mut rng);
            for e in Evocativeness::ALL {
                assert!(attention_level(0.2, e, &p) > attention_level(0.8, e, &p));
            }
        }
    }

    #[test]
    fn utility_at_full_share() {
        let p = reference();
        for a in [0.0, 0.3, 0.9] {
            let u_m = sharing_utility(a, 1.0, Evocativeness::Mild, &p);
            let u_i = sharing_utility(a, 1.0, Evocativeness::Interesting, &p);
            assert!((u_m - (p.lambda() - p.beta() * a * a)).abs() < 1e-15);
            assert!((u_i - (1.0 - p.beta() * a * a)).abs() < 1e-15);
        }
    }

    #[test]
    fn value_endpoints() {
        let p = reference();
        assert!((value(1.0, Evocativeness::Interesting, &p) - 1.0).abs() < 1e-15);
        assert!((value(1.0, Evocativeness::Mild, &p) - p.lambda()).abs() < 1e-15);
        let lmt = p.lambda() * p.mu() * p.theta();
        let expected = lmt * (lmt - 4.0 * p.beta()) / (4.0 * p.beta());
        assert!(expected < 0.0);
        assert!((value(0.0, Evocativeness::Mild, &p) - expected).abs() < 1e-15);
    }

    #[test]
    fn value_is_utility_at_optimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let p = random_params(&mut rng);
            for i in 0..1000 {
                let y = i as f64 / 999.0;
                for e in Evocativeness::ALL {
                    let direct = sharing_utility(attention_level(y, e, &p), y, e, &p);
                    assert!((value(y, e, &p) - direct).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn value_strictly_increasing() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let p = random_params(&mut rng);
            for e in Evocativeness::ALL {
                let vals: Vec<f64> = (0..=400).map(|i| value(i as f64 / 400.0, e, &p)).collect();
                assert!(vals.windows(2).all(|w| w[1] > w[0]));
            }
        }
    }

    #[test]
    fn threshold_residuals_and_regions() {
        let p = ModelParams::from_tuple(20.0, 8.0, 0.9, 1.0, 1.0, 0.65, 0.55).unwrap();
        let th = thresholds(&p).unwrap();
        assert!(th.interesting < th.mild);
        assert_eq!(th.intermediate_region, Region::InterestingOnly);
        assert!(value(th.interesting, Evocativeness::Interesting, &p).abs() <= ROOT_TOL);
        assert!(value(th.mild, Evocativeness::Mild, &p).abs() <= ROOT_TOL);

        let p = ModelParams::from_tuple(1.0, 2.4, 0.9, 1.0, 1.0, 0.9, 0.65).unwrap();
        let th = thresholds(&p).unwrap();
        assert!(th.interesting > th.mild);
        assert_eq!(th.intermediate_region, Region::MildOnly);

        let p = ModelParams::from_tuple(1.0, 1.0, 0.75, 1.0, 1.0, 0.9, 0.75).unwrap();
        assert!(thresholds(&p).unwrap().interesting > thresholds(&p).unwrap().mild);
    }

    #[test]
    fn threshold_independent_of_bracket() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = reference();
        for e in Evocativeness::ALL {
            let root = threshold(e, &p).unwrap();
            for _ in 0..100 {
                let lo = root * rng.gen::<f64>();
                let hi = root + (1.0 - root) * rng.gen::<f64>().max(1e-6);
                let r = bisect(|y| value(y, e, &p), lo, hi).unwrap();
                assert!((r - root).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn coincident_thresholds_are_knife_edge() {
        assert!(matches!(Thresholds::new(0.3, 0.3 + 1e-10), Err(Error::KnifeEdge { .. })));
        let th = Thresholds::new(0.2, 0.6).unwrap();
        assert_eq!(th.neighbors(Evocativeness::Interesting), (Region::NoSharing, Region::InterestingOnly));
        assert_eq!(th.neighbors(Evocativeness::Mild), (Region::InterestingOnly, Region::All));
    }

    fn central(f: impl Fn(f64) -> f64, x: f64) -> f64 {
        let h = 1e-6 * x.abs().max(1.0);
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    #[test]
    fn attention_derivative_signs() {
        use crate::params::ParamSet;
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let at = |raw: ParamSet, y: f64, e| ModelParams::new(raw).ok().map(|p| attention_level(y, e, &p));
        for _ in 0..200 {
            let p = random_params(&mut rng);
            let raw = p.raw();
            for i in 1..20 {
                let y = i as f64 / 20.0;
                for e in Evocativeness::ALL {
                    assert!(central(|v| attention_level(v, e, &p), y) < 0.0);
                    let d = |f: &dyn Fn(f64) -> ParamSet, x: f64| {
                        let h = 1e-7;
                        match (at(f(x + h), y, e), at(f(x - h), y, e)) {
                            (Some(a), Some(b)) => Some((a - b) / (2.0 * h)),
                            _ => None,
                        }
                    };
                    let checks: [(&dyn Fn(f64) -> ParamSet, f64, f64); 5] = [
                        (&|v| ParamSet { theta: v, ..raw }, raw.theta, 1.0),
                        (&|v| ParamSet { beta: v, ..raw }, raw.beta, -1.0),
                        (&|v| ParamSet { lambda: v, ..raw }, raw.lambda, 1.0),
                        (&|v| ParamSet { mu: v, ..raw }, raw.mu, 1.0),
                        (
                            &|v| ParamSet { delta: v, ..raw },
                            raw.delta,
                            if e == Evocativeness::Interesting { 1.0 } else { -1.0 },
                        ),
                    ];
                    for (f, x, sign) in checks {
                        if let Some(slope) = d(f, x) {
                            assert!(slope * sign > 0.0, "{e:?} y={y} slope={slope} {p}");
                        }
                    }
                }
            }
        }
    }
}
