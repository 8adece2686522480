//! Named parameter sets used by the examples and the verification suite.
//!
//! Tuples are `(ρ, κ, θ, μ, β, δ, λ)`.

use crate::params::{ModelParams, ParamSet};

fn valid(p: ParamSet) -> ModelParams {
    ModelParams::new(p).expect("preset parameters are valid")
}

/// Interesting threshold below the mild one and straddled by `y*_I < ŷ_I <
/// y*_N`: the threshold is the unique limit, users mix between sharing
/// very interesting stories and sharing nothing.
pub const FLIP_NI: ParamSet = ParamSet::from_tuple(20.0, 8.0, 0.9, 1.0, 1.0, 0.65, 0.55);

/// Interesting threshold above the mild one with `y*_S < ŷ_I < y*_M`.
pub const FLIP_MS: ParamSet = ParamSet::from_tuple(1.0, 2.4, 0.9, 1.0, 1.0, 0.9, 0.65);

/// Baseline `μ = β = κ = ρ = 1`, `θ = λ = 0.75` at evocativeness skew `delta`.
pub fn skew_base(delta: f64) -> ModelParams {
    valid(ParamSet::from_tuple(1.0, 1.0, 0.75, 1.0, 1.0, delta, 0.75))
}

/// Base for the κ regimes (κ itself is varied).
pub fn kappa_base() -> ModelParams {
    skew_base(0.7)
}

/// Bases where `y*_S`, `y*_M` and `y*_I` first fall and then rise with θ,
/// with the approximate turning point (θ is varied; the stored θ is a
/// placeholder).
pub const THETA_TURNS: [(crate::params::Region, ParamSet, f64); 3] = [
    (crate::params::Region::All, ParamSet::from_tuple(0.3, 1.5, 0.5, 0.6, 0.3, 0.55, 0.95), 0.95),
    (crate::params::Region::MildOnly, ParamSet::from_tuple(1.0, 8.0, 0.5, 0.6, 0.3, 0.9, 0.95), 0.87),
    (crate::params::Region::InterestingOnly, ParamSet::from_tuple(0.45, 3.0, 0.5, 0.6, 0.3, 0.53, 0.9), 0.9),
];

/// Bistable platform: `y*_N` and `y*_S` stable, repelling mild threshold
/// between them.
pub const BISTABLE_MILD: ParamSet = ParamSet::from_tuple(25.0, 4.5, 0.4, 2.4, 1.7, 0.76, 0.84);

/// Bistable platform with a repelling interesting threshold.
pub const BISTABLE_INTERESTING: ParamSet = ParamSet::from_tuple(24.0, 1.9, 0.64, 1.8, 1.4, 0.57, 0.76);

/// Three stable limits, `y*_N`, `y*_I` and `y*_S`, separated by two
/// repelling thresholds.
pub const THREE_LIMITS: ParamSet = ParamSet::from_tuple(11.5, 3.25, 0.39, 3.6, 0.85, 0.52, 0.5);

/// Large inflow of false stories: only `y*_N` is stable.
pub const NO_SHARING: ParamSet = ParamSet::from_tuple(1.0, 20.0, 0.75, 1.0, 1.0, 0.7, 0.75);

pub fn params(p: ParamSet) -> ModelParams {
    valid(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limit::{analyze, Landmark};
    use crate::params::{Evocativeness, Region};

    #[test]
    fn presets_have_the_advertised_structure() {
        let ti = Landmark::Threshold(Evocativeness::Interesting);
        let tm = Landmark::Threshold(Evocativeness::Mild);
        let q = Landmark::Qss;
        let cases: [(ParamSet, Vec<Landmark>, Vec<Landmark>); 6] = [
            (FLIP_NI, vec![ti], vec![]),
            (FLIP_MS, vec![ti], vec![]),
            (BISTABLE_MILD, vec![q(Region::NoSharing), q(Region::All)], vec![tm]),
            (BISTABLE_INTERESTING, vec![q(Region::NoSharing), q(Region::All)], vec![ti]),
            (THREE_LIMITS, vec![q(Region::NoSharing), q(Region::InterestingOnly), q(Region::All)], vec![ti, tm]),
            (NO_SHARING, vec![q(Region::NoSharing)], vec![]),
        ];
        for (p, stable, unstable) in cases {
            let a = analyze(&params(p)).unwrap();
            assert_eq!(a.composition(), stable, "{p:?}");
            assert_eq!(a.unstable_set.iter().map(|u| u.landmark).collect::<Vec<_>>(), unstable, "{p:?}");
        }
        for (_, p, _) in THETA_TURNS {
            params(p);
        }
    }
}
