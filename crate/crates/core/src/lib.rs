//! Attention, sharing and misinformation dynamics on a social platform
//! modeled as a generalized Pólya urn.

pub mod attention;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod limit;
pub mod montecarlo;
pub mod params;
pub mod phase;
pub mod presets;
pub mod report;
pub mod roots;
pub mod sampling;
pub mod statics;
pub mod verify;

pub use error::{Error, Result};
pub use params::{Evocativeness, ModelParams, ParamSet, PlatformState, Region};
