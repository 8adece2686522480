//! Model parameters, platform state and the small enums shared by every
//! other module.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for root residuals.
pub const ROOT_TOL: f64 = 1e-12;

/// Two landmarks closer than this are treated as coincident (knife-edge).
pub const KNIFE_EDGE_TOL: f64 = 1e-9;

/// Unvalidated parameter record, as read from JSON or the command line.
///
/// Field names are the lowercase Greek letter names used throughout the
/// crate: `rho` (copies added per share), `kappa` (false stories added per
/// period), `theta` (false-story credibility), `mu` (loss from sharing a
/// false story), `beta` (attention cost coefficient), `delta` (probability a
/// false story is very interesting) and `lambda` (weight on veracity).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamSet {
    pub rho: f64,
    pub kappa: f64,
    pub theta: f64,
    pub mu: f64,
    pub beta: f64,
    pub delta: f64,
    pub lambda: f64,
}

impl ParamSet {
    /// Builds a record from the tuple `(rho, kappa, theta, mu, beta, delta, lambda)`.
    pub const fn from_tuple(rho: f64, kappa: f64, theta: f64, mu: f64, beta: f64, delta: f64, lambda: f64) -> Self {
        Self { rho, kappa, theta, mu, beta, delta, lambda }
    }
}

/// A constraint a [`ParamSet`] can violate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    Finite,
    RhoPositive,
    KappaPositive,
    ThetaInUnitInterval,
    MuPositive,
    BetaPositive,
    DeltaInUpperHalf,
    LambdaInUnitInterval,
    /// `mu > (1 - lambda) / lambda`: a very interesting story known to be
    /// false is never worth sharing.
    FalsePenaltyDominates,
    /// `mu * theta < 2 * beta`: optimal attention is interior.
    InteriorAttention,
}

impl Constraint {
    pub fn describe(self) -> &'static str {
        match self {
            Constraint::Finite => "all parameters must be finite",
            Constraint::RhoPositive => "rho > 0",
            Constraint::KappaPositive => "kappa > 0",
            Constraint::ThetaInUnitInterval => "0 < theta < 1",
            Constraint::MuPositive => "mu > 0",
            Constraint::BetaPositive => "beta > 0",
            Constraint::DeltaInUpperHalf => "1/2 < delta < 1",
            Constraint::LambdaInUnitInterval => "0 < lambda < 1",
            Constraint::FalsePenaltyDominates => "mu > (1 - lambda) / lambda",
            Constraint::InteriorAttention => "mu * theta < 2 * beta",
        }
    }
}

/// One violated constraint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub constraint: Constraint,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.constraint, self.message)
    }
}

/// Checks every parameter constraint and returns one entry per violation.
/// An empty list means the parameters are admissible.
pub fn validate(p: &ParamSet) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |c: Constraint, detail: String| {
        out.push(Violation { constraint: c, message: format!("{} (got {detail})", c.describe()) });
    };
    let all = [p.rho, p.kappa, p.theta, p.mu, p.beta, p.delta, p.lambda];
    if all.iter().any(|v| !v.is_finite()) {
        push(Constraint::Finite, format!("{p:?}"));
        return out;
    }
    if p.rho <= 0.0 {
        push(Constraint::RhoPositive, format!("rho = {}", p.rho));
    }
    if p.kappa <= 0.0 {
        push(Constraint::KappaPositive, format!("kappa = {}", p.kappa));
    }
    if !(p.theta > 0.0 && p.theta < 1.0) {
        push(Constraint::ThetaInUnitInterval, format!("theta = {}", p.theta));
    }
    if p.mu <= 0.0 {
        push(Constraint::MuPositive, format!("mu = {}", p.mu));
    }
    if p.beta <= 0.0 {
        push(Constraint::BetaPositive, format!("beta = {}", p.beta));
    }
    if !(p.delta > 0.5 && p.delta < 1.0) {
        push(Constraint::DeltaInUpperHalf, format!("delta = {}", p.delta));
    }
    if !(p.lambda > 0.0 && p.lambda < 1.0) {
        push(Constraint::LambdaInUnitInterval, format!("lambda = {}", p.lambda));
    }
    if p.lambda > 0.0 && p.mu <= (1.0 - p.lambda) / p.lambda {
        push(
            Constraint::FalsePenaltyDominates,
            format!("mu = {}, (1 - lambda) / lambda = {}", p.mu, (1.0 - p.lambda) / p.lambda),
        );
    }
    if p.mu * p.theta >= 2.0 * p.beta {
        push(Constraint::InteriorAttention, format!("mu * theta = {}, 2 * beta = {}", p.mu * p.theta, 2.0 * p.beta));
    }
    out
}

/// Validated, immutable model parameters.
///
/// A `ModelParams` can only be obtained through [`ModelParams::new`] (or
/// deserialization, which goes through the same check), so every function
/// taking one may assume the constraints hold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ParamSet", into = "ParamSet")]
pub struct ModelParams(ParamSet);

impl ModelParams {
    pub fn new(raw: ParamSet) -> Result<Self> {
        let violations = validate(&raw);
        if violations.is_empty() {
            Ok(Self(raw))
        } else {
            Err(Error::InvalidParams(violations))
        }
    }

    /// `(rho, kappa, theta, mu, beta, delta, lambda)`.
    pub fn from_tuple(rho: f64, kappa: f64, theta: f64, mu: f64, beta: f64, delta: f64, lambda: f64) -> Result<Self> {
        Self::new(ParamSet::from_tuple(rho, kappa, theta, mu, beta, delta, lambda))
    }

    pub fn raw(&self) -> ParamSet {
        self.0
    }

    #[inline]
    pub fn rho(&self) -> f64 {
        self.0.rho
    }
    #[inline]
    pub fn kappa(&self) -> f64 {
        self.0.kappa
    }
    #[inline]
    pub fn theta(&self) -> f64 {
        self.0.theta
    }
    #[inline]
    pub fn mu(&self) -> f64 {
        self.0.mu
    }
    #[inline]
    pub fn beta(&self) -> f64 {
        self.0.beta
    }
    #[inline]
    pub fn delta(&self) -> f64 {
        self.0.delta
    }
    #[inline]
    pub fn lambda(&self) -> f64 {
        self.0.lambda
    }

    /// `lambda * mu - (1 - lambda)`: net loss from sharing a very interesting
    /// false story. Strictly positive for valid parameters.
    #[inline]
    pub fn net_interesting_penalty(&self) -> f64 {
        self.0.lambda * self.0.mu - (1.0 - self.0.lambda)
    }
}

impl TryFrom<ParamSet> for ModelParams {
    type Error = Error;

    fn try_from(raw: ParamSet) -> Result<Self> {
        Self::new(raw)
    }
}

impl From<ModelParams> for ParamSet {
    fn from(p: ModelParams) -> Self {
        p.0
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.0;
        write!(
            f,
            "(rho={}, kappa={}, theta={}, mu={}, beta={}, delta={}, lambda={})",
            p.rho, p.kappa, p.theta, p.mu, p.beta, p.delta, p.lambda
        )
    }
}

/// Numbers of true and false stories on the platform.
///
/// Counts are real-valued: reach and the exogenous false-story inflow need
/// not be integers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlatformState {
    pub t_count: f64,
    pub f_count: f64,
}

impl PlatformState {
    /// Rejects negative or non-finite counts and an empty platform.
    pub fn new(t_count: f64, f_count: f64) -> Result<Self> {
        if !(t_count.is_finite() && f_count.is_finite()) || t_count < 0.0 || f_count < 0.0 {
            return Err(Error::InvalidArgument(format!("story counts must be finite and nonnegative, got ({t_count}, {f_count})")));
        }
        if t_count + f_count <= 0.0 {
            return Err(Error::EmptyState);
        }
        Ok(Self { t_count, f_count })
    }

    /// A platform holding `total` stories of which a share `y` is true.
    pub fn from_share(y: f64, total: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&y) {
            return Err(Error::InvalidArgument(format!("share must lie in [0, 1], got {y}")));
        }
        Self::new(y * total, (1.0 - y) * total)
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.t_count + self.f_count
    }

    /// Share of true stories. Only meaningful for a nonempty state, which
    /// [`PlatformState::new`] guarantees.
    #[inline]
    pub fn share(&self) -> f64 {
        self.t_count / self.total()
    }
}

/// How interesting a drawn story is to the current user.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Evocativeness {
    #[serde(rename = "M")]
    Mild,
    #[serde(rename = "I")]
    Interesting,
}

impl Evocativeness {
    pub const ALL: [Evocativeness; 2] = [Evocativeness::Mild, Evocativeness::Interesting];

    pub fn code(self) -> char {
        match self {
            Evocativeness::Mild => 'M',
            Evocativeness::Interesting => 'I',
        }
    }
}

/// The sharing rule in force on an interval of the true-story share.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Region {
    /// Share nothing, pay no attention.
    #[serde(rename = "N")]
    NoSharing,
    /// Share very interesting stories that look true.
    #[serde(rename = "I")]
    InterestingOnly,
    /// Share mildly interesting stories that look true.
    #[serde(rename = "M")]
    MildOnly,
    /// Share every story that looks true.
    #[serde(rename = "S")]
    All,
}

impl Region {
    pub const ALL: [Region; 4] = [Region::NoSharing, Region::InterestingOnly, Region::MildOnly, Region::All];

    pub fn code(self) -> char {
        match self {
            Region::NoSharing => 'N',
            Region::InterestingOnly => 'I',
            Region::MildOnly => 'M',
            Region::All => 'S',
        }
    }

    pub fn from_code(c: char) -> Option<Region> {
        match c.to_ascii_uppercase() {
            'N' => Some(Region::NoSharing),
            'I' => Some(Region::InterestingOnly),
            'M' => Some(Region::MildOnly),
            'S' => Some(Region::All),
            _ => None,
        }
    }

    /// Plain-language description of user behavior under this rule.
    pub fn behavior(self) -> &'static str {
        match self {
            Region::NoSharing => "no sharing",
            Region::InterestingOnly => "share very interesting stories only",
            Region::MildOnly => "share mildly interesting stories only",
            Region::All => "share all stories that look true",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}
