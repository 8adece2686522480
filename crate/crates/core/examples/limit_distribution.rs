// Path dependence: identical starts end at different limits.

use attention_urn::montecarlo::path_dependence_report;
use attention_urn::{presets, PlatformState};

fn main() -> attention_urn::Result<()> {
    let p = presets::params(presets::THREE_LIMITS);
    let r = path_dependence_report(&p, PlatformState::from_share(0.5, 10.0)?, 200, 20_000, 11)?;
    for c in &r.classes {
        println!("{:<12} y = {:.3}  {:>4} runs  {}", c.landmark.to_string(), c.location, c.runs, c.description);
    }
    println!("unassigned: {}", r.distribution.unassigned_count);
    Ok(())
}
