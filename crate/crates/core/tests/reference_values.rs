//! Reference values for the bundled parameter examples, recomputed from
//! closed forms independent of the library's analysis pipeline.

use attention_urn::attention::thresholds;
use attention_urn::limit::{analyze, quasi_steady_state, Landmark};
use attention_urn::statics::{crossover, landmark_gap, theta_shape, Param};
use attention_urn::{presets, Evocativeness, ModelParams, Region};

fn p(t: (f64, f64, f64, f64, f64, f64, f64)) -> ModelParams {
    ModelParams::from_tuple(t.0, t.1, t.2, t.3, t.4, t.5, t.6).unwrap()
}

/// Root of `1 + ρ p_T − y(1 + κ + ρ(p_T + p_F))` with the sharing
/// probabilities transcribed directly, solved by plain bisection.
fn qss_oracle(r: Region, q: &ModelParams) -> f64 {
    let (rho, kappa, theta, delta) = (q.rho(), q.kappa(), q.theta(), q.delta());
    let a = |y: f64, e: Evocativeness| attention_urn::attention::attention_level(y, e, q);
    let probs = |y: f64| -> (f64, f64) {
        let (ai, am) = (a(y, Evocativeness::Interesting), a(y, Evocativeness::Mild));
        match r {
            Region::All => (y, (1.0 - y) * theta * (1.0 - delta * ai - (1.0 - delta) * am)),
            Region::InterestingOnly => (y / 2.0, (1.0 - y) * delta * theta * (1.0 - ai)),
            Region::MildOnly => (y / 2.0, (1.0 - y) * (1.0 - delta) * theta * (1.0 - am)),
            Region::NoSharing => (0.0, 0.0),
        }
    };
    let g = |y: f64| {
        let (pt, pf) = probs(y);
        1.0 + rho * pt - y * (1.0 + kappa + rho * (pt + pf))
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid
        } else {
            hi = mid
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn qss_matches_an_independent_root_finder() {
    for q in [presets::FLIP_NI, presets::FLIP_MS, presets::THREE_LIMITS, presets::BISTABLE_MILD] {
        let q = presets::params(q);
        for r in Region::ALL {
            let (lib, oracle) = (quasi_steady_state(r, &q), qss_oracle(r, &q));
            assert!((lib - oracle).abs() < 1e-10, "{r:?}: {lib} vs {oracle}");
        }
    }
}

#[test]
fn golden_flip_configurations() {
    let ti = Landmark::Threshold(Evocativeness::Interesting);
    let a = analyze(&p((20.0, 8.0, 0.9, 1.0, 1.0, 0.65, 0.55))).unwrap();
    let (th, q) = (a.thresholds, a.qss);
    assert!(th.interesting < th.mild);
    assert!(q.interesting < th.interesting && th.interesting < q.no_sharing);
    assert_eq!(a.composition(), vec![ti]);

    let a = analyze(&p((1.0, 2.4, 0.9, 1.0, 1.0, 0.9, 0.65))).unwrap();
    let (th, q) = (a.thresholds, a.qss);
    assert!(th.interesting > th.mild);
    assert!(q.all < th.interesting && th.interesting < q.mild);
    assert_eq!(a.composition(), vec![ti]);
}

#[test]
fn skew_crossovers_near_quoted_values() {
    let base = presets::skew_base(0.7);
    let qs = |r| Landmark::Qss(r);
    let ms = crossover(Param::Delta, &base, 0.6, 0.9, landmark_gap(qs(Region::MildOnly), qs(Region::All))).unwrap();
    let ni = crossover(Param::Delta, &base, 0.6, 0.9, landmark_gap(qs(Region::NoSharing), qs(Region::InterestingOnly))).unwrap();
    let th = crossover(
        Param::Delta,
        &base,
        0.55,
        0.9,
        landmark_gap(Landmark::Threshold(Evocativeness::Interesting), Landmark::Threshold(Evocativeness::Mild)),
    )
    .unwrap();
    // Quoted to three digits.
    assert!((ms - 0.745).abs() < 2e-3, "{ms}");
    assert!((ni - 0.751).abs() < 2e-3, "{ni}");
    assert!((th - 0.664).abs() < 2e-3, "{th}");
    // Below each crossover the first landmark is the lower one.
    let at = |d: f64| presets::skew_base(d);
    assert!(quasi_steady_state(Region::MildOnly, &at(0.7)) < quasi_steady_state(Region::All, &at(0.7)));
    assert!(quasi_steady_state(Region::MildOnly, &at(0.8)) > quasi_steady_state(Region::All, &at(0.8)));
    let t = thresholds(&at(0.6)).unwrap();
    assert!(t.interesting < t.mild);
}

#[test]
fn qss_all_turns_in_skew_near_quoted_value() {
    let d = |delta: f64| {
        let h = 1e-6;
        quasi_steady_state(Region::All, &presets::skew_base(delta + h))
            - quasi_steady_state(Region::All, &presets::skew_base(delta - h))
    };
    let (mut lo, mut hi) = (0.6, 0.85);
    assert!(d(lo) < 0.0 && d(hi) > 0.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if d(mid) < 0.0 {
            lo = mid
        } else {
            hi = mid
        }
    }
    assert!((lo - 0.727).abs() < 2e-3, "{lo}");
    // Sharing-region steady state for every skew.
    for i in 1..100 {
        let q = presets::skew_base(0.5 + 0.005 * i as f64);
        let t = thresholds(&q).unwrap();
        assert!(quasi_steady_state(Region::All, &q) > t.upper());
    }
}

#[test]
fn theta_turning_points_near_quoted_values() {
    for (region, set, quoted) in presets::THETA_TURNS {
        let s = theta_shape(region, &presets::params(set), 60).unwrap();
        let tp = s.turning_point.expect("turning point");
        assert!((tp - quoted).abs() < 0.03, "{region:?}: {tp} vs {quoted}");
    }
}

#[test]
fn qss_interesting_in_reach_changes_direction_with_skew() {
    let at = |rho: f64, delta: f64| p((rho, 3.0, 0.9, 1.0, 1.0, delta, 0.55));
    // δ = 0.8: decreasing, leaves region I into N near ρ ≈ 24.5.
    let exit_n = |rho: f64| {
        let q = at(rho, 0.8);
        quasi_steady_state(Region::InterestingOnly, &q) - thresholds(&q).unwrap().interesting
    };
    assert!(exit_n(1e-3) > 0.0);
    let (mut lo, mut hi) = (1e-3, 100.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if exit_n(mid) > 0.0 {
            lo = mid
        } else {
            hi = mid
        }
    }
    assert!((lo - 24.5).abs() < 0.5, "{lo}");
    let qi = |rho: f64, delta: f64| quasi_steady_state(Region::InterestingOnly, &at(rho, delta));
    assert!(qi(5.0, 0.8) > qi(10.0, 0.8));
    // δ = 0.55: increasing, leaves region I into S near ρ ≈ 161.5.
    let exit_s = |rho: f64| {
        let q = at(rho, 0.55);
        thresholds(&q).unwrap().mild - quasi_steady_state(Region::InterestingOnly, &q)
    };
    assert!(exit_s(1e-3) > 0.0);
    let (mut lo, mut hi) = (1e-3, 1000.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if exit_s(mid) > 0.0 {
            lo = mid
        } else {
            hi = mid
        }
    }
    assert!((lo - 161.5).abs() < 1.5, "{lo}");
    assert!(qi(10.0, 0.55) > qi(5.0, 0.55));
}
