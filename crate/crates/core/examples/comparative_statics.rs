// Predicted and measured signs of the landmark derivatives, and the shape
// of the steady states in credibility θ.

use attention_urn::limit::Landmark;
use attention_urn::presets;
use attention_urn::statics::{sign_check, theta_shape, Param, SIGN_CELLS};
use attention_urn::Region;

fn main() -> attention_urn::Result<()> {
    let base = presets::skew_base(0.7);
    for (target, param) in SIGN_CELLS.iter().filter(|(l, _)| *l == Landmark::Qss(Region::All)) {
        let r = sign_check(*target, *param, &base, None)?;
        println!("d {target} / d {param}: predicted {} measured {:+.5} ({:?})", r.predicted.symbol(), r.derivative, r.verdict);
    }
    let d = sign_check(Landmark::Qss(Region::InterestingOnly), Param::Rho, &base, None)?;
    println!("d qss_I / d rho: conditional prediction {} measured {:+.5}", d.predicted.symbol(), d.derivative);
    for (region, set, _) in presets::THETA_TURNS {
        let s = theta_shape(region, &presets::params(set), 80)?;
        println!("qss_{} in theta: {:?}, turning point {:?}", region.code(), s.shape, s.turning_point);
    }
    Ok(())
}
