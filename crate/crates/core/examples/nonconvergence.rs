// Runs started on a repelling threshold drift away from it.

use attention_urn::montecarlo::nonconvergence_check;
use attention_urn::presets;

fn main() -> attention_urn::Result<()> {
    let p = presets::params(presets::BISTABLE_MILD);
    for r in nonconvergence_check(&p, 100, 20_000, 5)? {
        println!(
            "{} at {:.4}: {} of {} runs end within {}",
            r.landmark, r.location, r.near, r.n_runs, r.radius
        );
    }
    Ok(())
}
