// Sweep κ and report where the stable set changes.

use attention_urn::presets;
use attention_urn::statics::{grid, sweep, Param, Spacing};

fn main() -> attention_urn::Result<()> {
    let base = presets::params(presets::FLIP_NI);
    let s = sweep(Param::Kappa, &grid(0.2, 40.0, 200, Spacing::Log), &base)?;
    println!("{} points analyzed, {} skipped", s.points.len(), s.skipped.len());
    for t in &s.transitions {
        let names = |ls: &[attention_urn::limit::Landmark]| ls.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", ");
        println!("kappa in ({:.4}, {:.4}): {{{}}} -> {{{}}}", t.lo, t.hi, names(&t.before), names(&t.after));
    }
    let mut out = Vec::new();
    attention_urn::report::write_sweep_csv(&s, &mut out)?;
    println!("{} CSV rows", String::from_utf8_lossy(&out).lines().count() - 1);
    Ok(())
}
