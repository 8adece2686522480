// Bounds κ₁ < κ₂ separating the three regimes of false-story inflow.

use attention_urn::limit::analyze;
use attention_urn::presets;
use attention_urn::statics::{kappa_bounds, Param};

fn main() -> attention_urn::Result<()> {
    let base = presets::kappa_base();
    let b = kappa_bounds(&base, 0.05, 30.0)?;
    println!("kappa1 = {:.6}, kappa2 = {:.6}", b.kappa1, b.kappa2);
    for k in [0.5 * b.kappa1, 0.5 * (b.kappa1 + b.kappa2), 2.0 * b.kappa2] {
        let a = analyze(&Param::Kappa.with(&base, k)?)?;
        let set: Vec<String> = a.composition().iter().map(|l| l.to_string()).collect();
        println!("kappa = {k:.4}: stable set {{{}}}", set.join(", "));
    }
    Ok(())
}
